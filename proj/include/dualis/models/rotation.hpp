#pragma once
// The cyclic group C_r acting on the closed disk by rotations: a cone point
// with stabilizer C_r and a free boundary circle at infinity.

#include "dualis/models/model.hpp"

namespace dualis {

/// Coefficients of the r-th cyclotomic polynomial, constant term first.
inline std::vector<Scalar> cyclotomic_polynomial(std::size_t r) {
  if (r == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  std::vector<Scalar> p(r + 1, Scalar(0));
  p[0] = -1;
  p[r] = 1;
  for (std::size_t d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    auto q = cyclotomic_polynomial(d);
    // exact division by the monic q
    std::vector<Scalar> out(p.size() - q.size() + 1, Scalar(0));
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = p[i + q.size() - 1];
      for (std::size_t j = 0; j < q.size(); ++j) p[i + j] -= out[i] * q[j];
    }
    p = out;
  }
  return p;
}

/// Companion matrix of the r-th cyclotomic polynomial: an integral matrix of
/// exact order r.
inline Matrix rotation_generator(std::size_t r) {
  auto p = cyclotomic_polynomial(r);
  const std::size_t d = p.size() - 1;
  Matrix m(d, d);
  for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -p[i];
  return m;
}

inline std::vector<GroupElement> cyclic_group(std::size_t r) {
  GroupElement gen(rotation_generator(r), false, "rot");
  std::vector<GroupElement> out{GroupElement::identity(gen.size())};
  for (std::size_t k = 1; k < r; ++k) out.push_back(out.back() * gen);
  return out;
}

/// A representation of C_r by the image of the generator.
inline Representation cyclic_representation(std::size_t r, const Matrix& generator_image, std::string name) {
  if (!generator_image.is_square()) throw std::invalid_argument("cyclic rep: image must be square");
  if (matrix_power(generator_image, static_cast<long>(r)) != Matrix::identity(generator_image.rows()))
    throw std::invalid_argument("cyclic rep: image of the generator does not have order dividing r");
  auto elems = cyclic_group(r);
  std::vector<Matrix> images{Matrix::identity(generator_image.rows())};
  for (std::size_t k = 1; k < r; ++k) images.push_back(images.back() * generator_image);
  return {generator_image.rows(),
          [elems, images](const GroupElement& g) {
            for (std::size_t k = 0; k < elems.size(); ++k)
              if (elems[k] == g) return images[k];
            throw std::domain_error("element " + g.str() + " is not in the cyclic group");
          },
          std::move(name)};
}

/// Named coefficient systems: trivial, sign (r even), rotation (a faithful
/// 2-dimensional rational rep for r in {2,3,4,6}), regular.
inline Representation named_cyclic_representation(std::size_t r, const std::string& name) {
  if (name == "trivial") return cyclic_representation(r, Matrix::identity(1), name);
  if (name == "sign") {
    if (r % 2 != 0) throw std::invalid_argument("sign representation needs even order");
    return cyclic_representation(r, Matrix{{-1}}, name);
  }
  if (name == "rotation") {
    if (r == 2) return cyclic_representation(r, Matrix{{-1, 0}, {0, -1}}, name);
    if (r == 3 || r == 4 || r == 6) return cyclic_representation(r, rotation_generator(r), name);
    throw std::invalid_argument("rotation representation needs r in {2,3,4,6}");
  }
  if (name == "regular") {
    Matrix p(r, r);
    for (std::size_t i = 0; i < r; ++i) p((i + 1) % r, i) = 1;
    return cyclic_representation(r, p, name);
  }
  auto plus = name.find('+');
  if (plus != std::string::npos) {
    auto a = named_cyclic_representation(r, name.substr(0, plus));
    auto b = named_cyclic_representation(r, name.substr(plus + 1));
    auto sum = direct_sum_rep(a, b);
    sum.name = name;
    return sum;
  }
  throw std::invalid_argument("unknown cyclic representation '" + name + "'");
}

inline std::shared_ptr<const EquivariantPairComplex> rotation_disk_complex(std::size_t r) {
  if (r < 2 || r > 12) throw std::invalid_argument("rotation order must lie in 2..12");
  auto group = cyclic_group(r);
  const std::size_t gd = group.front().size();
  const GroupElement e = group.front(), gen = group[1];
  enum : std::size_t { O, P, Q, OP, OQ, PQ, QP, T1, T2 };
  auto cell = [&](std::size_t id, int dim, std::vector<long> levels, std::vector<Face> faces, bool inf, int orient,
                  std::string label) {
    OrbitCell c;
    c.id = id;
    c.dim = dim;
    c.levels = std::move(levels);
    c.stabilizer = {e};
    c.faces = std::move(faces);
    c.at_infinity = inf;
    c.orientation = orient;
    c.label = std::move(label);
    return c;
  };
  std::vector<OrbitCell> cells;
  cells.push_back(cell(O, 0, {0}, {}, false, 0, "center"));
  cells.back().stabilizer = group;
  cells.push_back(cell(P, 0, {1}, {}, true, 0, "P"));
  cells.push_back(cell(Q, 0, {2}, {}, true, 0, "Q"));
  cells.push_back(cell(OP, 1, {0, 1}, {{e, P}, {e, O}}, false, 0, "OP"));
  cells.push_back(cell(OQ, 1, {0, 2}, {{e, Q}, {e, O}}, false, 0, "OQ"));
  cells.push_back(cell(PQ, 1, {1, 2}, {{e, Q}, {e, P}}, true, 0, "P0Q0"));
  cells.push_back(cell(QP, 1, {1, 2}, {{e, Q}, {gen, P}}, true, 0, "P1Q0"));
  cells.push_back(cell(T1, 2, {0, 1, 2}, {{e, PQ}, {e, OQ}, {e, OP}}, false, 1, "O P0 Q0"));
  cells.push_back(cell(T2, 2, {0, 1, 2}, {{e, QP}, {e, OQ}, {gen, OP}}, false, -1, "O P1 Q0"));
  auto members = group;
  GroupContext ctx{"C_" + std::to_string(r), false, gd, [members](const GroupElement& g) {
                     return std::find(members.begin(), members.end(), g) != members.end();
                   }};
  return std::make_shared<const EquivariantPairComplex>(2, std::move(cells), std::move(ctx));
}

inline Model build_finite_rotation(std::size_t r, const Representation& rep) {
  Model m;
  m.family = "finite_rotation";
  m.id = "finite_rotation(r=" + std::to_string(r) + ", " + rep.name + ")";
  m.complex = rotation_disk_complex(r);
  m.rep = rep;
  auto group = cyclic_group(r);
  m.sample = [group](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> d(0, group.size() - 1);
    return group[d(rng)];
  };
  return m;
}

/// Oracle: H^m_c(R^2; E)^{C_r}.  The plane is contractible, so H_c is E in
/// degree 2 with rotations acting trivially on the orientation class.
inline std::vector<std::size_t> finite_quotient_oracle(std::size_t r, const Representation& rep) {
  return {0, 0, invariants_subspace(rep, cyclic_group(r)).dim()};
}

}  // namespace dualis
