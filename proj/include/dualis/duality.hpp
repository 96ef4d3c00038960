#pragma once
// Alexander-Whitney cup product, evaluation on the fundamental class and the
// duality pairing B between H_c(E) and H(E*), and between interior classes.

#include "dualis/complex.hpp"

#include <random>

namespace dualis {

/// front_p(sigma): the face spanned by the first p+1 vertices, as attach.cell.
inline std::pair<GroupElement, std::size_t> front_face(const EquivariantPairComplex& k, std::size_t cell, int p) {
  GroupElement a = k.identity();
  std::size_t c = cell;
  while (k.cell(c).dim > p) {
    const auto& f = k.cell(c).faces.back();
    a = a * f.attach;
    c = f.target;
  }
  return {a, c};
}

/// back_q(sigma): the face spanned by the last q+1 vertices.
inline std::pair<GroupElement, std::size_t> back_face(const EquivariantPairComplex& k, std::size_t cell, int q) {
  GroupElement a = k.identity();
  std::size_t c = cell;
  while (k.cell(c).dim > q) {
    const auto& f = k.cell(c).faces.front();
    a = a * f.attach;
    c = f.target;
  }
  return {a, c};
}

/// f in C^p(E) (relative or absolute), h in C^q(E*) absolute; the result is a
/// (p+q)-cochain with trivial coefficients, relative iff f is.
inline Vector cup_product(const EquivariantPairComplex& k, const Representation& rep_e, const Representation& rep_dual,
                          const CochainSpace& f_space, const Vector& f, const CochainSpace& h_space, const Vector& h) {
  if (h_space.relative) throw std::invalid_argument("cup_product: second factor must be an absolute cochain");
  if (f.size() != f_space.dim || h.size() != h_space.dim) throw std::invalid_argument("cup_product: coordinate size");
  if (rep_e.dim != rep_dual.dim) throw std::invalid_argument("cup_product: representation dimensions differ");
  const int p = f_space.degree, q = h_space.degree;
  if (p + q > k.dimension()) throw std::invalid_argument("cup_product: degree exceeds the dimension");
  CochainSpace out = cochain_space(k, trivial_rep(), p + q, f_space.relative);
  Vector result = zero_vector(out.dim);
  for (std::size_t pos = 0; pos < out.cells.size(); ++pos) {
    std::size_t c = out.cells[pos];
    auto [af, cf] = front_face(k, c, p);
    auto [ab, cb] = back_face(k, c, q);
    if (!f_space.has(cf) || !h_space.has(cb)) continue;
    Vector x = rep_evaluate(rep_e, af) * f_space.value(f, cf);
    Vector y = rep_evaluate(rep_dual, ab) * h_space.value(h, cb);
    Scalar v = dot(x, y);
    if (out.stalk_dim(pos) == 0) {
      if (v != 0) throw InvariantError("cup_product: nonzero value on a cell without invariants");
      continue;
    }
    result[out.offsets[pos]] = v;
  }
  return result;
}

/// Sum over top cells of orientation * value, for a relative top cochain with
/// trivial coefficients.
inline Scalar integrate(const EquivariantPairComplex& k, const Vector& top) {
  const auto& tops = k.cells_of_dim(k.dimension());
  if (top.size() != tops.size()) throw std::invalid_argument("integrate: expected one value per top cell");
  Scalar s = 0;
  for (std::size_t i = 0; i < tops.size(); ++i) {
    int o = k.cell(tops[i]).orientation;
    if (o != 1 && o != -1) throw std::invalid_argument("integrate: top cell without orientation");
    s += o * top[i];
  }
  return s;
}

enum class PairingVariant { compact_ordinary, interior };

struct PairingMatrix {
  int degree = 0;
  PairingVariant variant = PairingVariant::interior;
  Matrix matrix;
};

/// B(u, v) = integral of u cup v for u relative of degree m (E) and v
/// absolute of degree n - m (E*).
inline Scalar pair_cochains(const Cohomology& e, const Cohomology& dual, int m, const Vector& u, const Vector& v) {
  const auto& k = e.complex();
  Vector cup = cup_product(k, e.rep(), dual.rep(), e.space(m, true), u, dual.space(k.dimension() - m, false), v);
  return integrate(k, cup);
}

/// The pairing matrix on chosen bases.  Each entry is recomputed with the
/// representatives moved by random coboundaries; any difference throws.
inline PairingMatrix pairing_matrix(const Cohomology& e, const Cohomology& dual, int m, PairingVariant variant,
                                    std::uint64_t seed = 0) {
  const int n = e.dimension();
  if (m < 0 || m > n) throw std::out_of_range("pairing_matrix: degree out of range");
  Variant first = variant == PairingVariant::interior ? Variant::interior : Variant::compact;
  Variant second = variant == PairingVariant::interior ? Variant::interior : Variant::ordinary;
  const auto& bu = e.basis(m, first);
  const auto& bv = dual.basis(n - m, second);
  PairingMatrix out{m, variant, Matrix(bu.dim(), bv.dim())};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto random_vec = [&](std::size_t d) {
    Vector w(d);
    for (auto& x : w) x = coef(rng);
    return w;
  };
  for (std::size_t i = 0; i < bu.dim(); ++i) {
    const Vector& u = bu.representatives[i];
    Vector u2 = u;
    if (m > 0) {
      Vector du = e.coboundary(m - 1, true) * random_vec(e.space(m - 1, true).dim);
      for (std::size_t t = 0; t < u2.size(); ++t) u2[t] += du[t];
    }
    for (std::size_t j = 0; j < bv.dim(); ++j) {
      Vector v = dual.absolute_representative(n - m, second, j);
      Vector v2 = v;
      if (n - m > 0) {
        Vector dv = dual.coboundary(n - m - 1, false) * random_vec(dual.space(n - m - 1, false).dim);
        for (std::size_t t = 0; t < v2.size(); ++t) v2[t] += dv[t];
      }
      Scalar b = pair_cochains(e, dual, m, u, v);
      Scalar b2 = pair_cochains(e, dual, m, u2, v2);
      if (b != b2)
        throw InvariantError("pairing depends on the representative: B(" + std::to_string(i) + "," + std::to_string(j) +
                             ") = " + to_string(b) + " vs " + to_string(b2));
      out.matrix(i, j) = b;
    }
  }
  return out;
}

/// dim H^m_!(E) = dim H^{n-m}_!(E*) with a non-singular pairing in every
/// degree; the compact x ordinary pairing is checked the same way.
inline CheckResult verify_duality(const Cohomology& e, const Cohomology& dual, std::uint64_t seed = 0) {
  CheckResult res{"duality", true, {}};
  const int n = e.dimension();
  for (int m = 0; m <= n; ++m) {
    for (auto variant : {PairingVariant::interior, PairingVariant::compact_ordinary}) {
      const char* tag = variant == PairingVariant::interior ? "interior" : "compact x ordinary";
      try {
        auto b = pairing_matrix(e, dual, m, variant, seed + static_cast<std::uint64_t>(m));
        std::size_t r = rank(b.matrix);
        std::string line = std::string(tag) + " m=" + std::to_string(m) + ": dims " + std::to_string(b.matrix.rows()) +
                           " x " + std::to_string(b.matrix.cols()) + ", rank " + std::to_string(r);
        if (b.matrix.rows() != b.matrix.cols() || r != b.matrix.rows())
          res.fail(line);
        else
          res.note(line);
      } catch (const InvariantError& ex) {
        res.fail(std::string(tag) + " m=" + std::to_string(m) + ": " + ex.what());
      }
    }
  }
  return res;
}

}  // namespace dualis
