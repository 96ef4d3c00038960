#pragma once
// Group elements as exact matrices, representations, finite-index subgroup
// data and stabilizer invariants.

#include "dualis/linalg.hpp"
#include "dualis/report.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dualis {

/// An element of the ambient group, realized by its action on the geometric
/// model.  Projective elements are compared up to a nonzero scalar and are
/// stored as primitive integer matrices whose first nonzero entry is positive.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(Matrix geom, bool projective = false, std::string label = {})
      : geom_(std::move(geom)), projective_(projective), label_(std::move(label)) {
    if (!geom_.is_square() || geom_.rows() == 0) throw std::invalid_argument("GroupElement: geometry must be square");
    if (projective_) normalize();
  }

  static GroupElement identity(std::size_t n, bool projective = false) {
    return GroupElement(Matrix::identity(n), projective, "e");
  }

  const Matrix& geom() const { return geom_; }
  bool projective() const { return projective_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return geom_.rows(); }

  GroupElement operator*(const GroupElement& o) const {
    return GroupElement(geom_ * o.geom_, projective_ || o.projective_);
  }
  GroupElement inverse() const { return GroupElement(dualis::inverse(geom_), projective_); }
  bool is_identity() const {
    return geom_ == (projective_ ? GroupElement::identity(size(), true).geom_ : Matrix::identity(size()));
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.geom_ == b.geom_; }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.geom_ < b.geom_; }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < geom_.rows(); ++i) {
      os << (i ? ";" : "");
      for (std::size_t j = 0; j < geom_.cols(); ++j) os << (j ? " " : "") << geom_(i, j).str();
    }
    os << ']';
    return os.str();
  }

 private:
  void normalize() {
    Integer lcm_den = 1, gcd_num = 0;
    for (const auto& x : geom_.data()) {
      lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x));
      gcd_num = boost::multiprecision::gcd(gcd_num, boost::multiprecision::numerator(x));
    }
    if (gcd_num == 0) throw std::invalid_argument("GroupElement: zero matrix");
    Scalar scale(lcm_den, gcd_num);
    for (const auto& x : geom_.data()) {
      if (x != 0) {
        if (x < 0) scale = -scale;
        break;
      }
    }
    geom_ *= scale;
  }

  Matrix geom_;
  bool projective_ = false;
  std::string label_;
};

/// A finite-dimensional linear representation of (a subgroup of) the ambient
/// group.  The evaluator must be a homomorphism on its domain and throws
/// std::domain_error for elements outside it.
struct Representation {
  std::size_t dim = 1;
  std::function<Matrix(const GroupElement&)> evaluator;
  std::string name;
};

inline Matrix rep_evaluate(const Representation& rep, const GroupElement& g) {
  Matrix m = rep.evaluator(g);
  if (m.rows() != rep.dim || m.cols() != rep.dim)
    throw InvariantError("representation '" + rep.name + "' returned a matrix of the wrong size");
  return m;
}

inline Representation trivial_rep() {
  return {1, [](const GroupElement&) { return Matrix::identity(1); }, "trivial"};
}

/// E* = Hom(E, k):  g acts by the inverse transpose.
inline Representation dual_rep(const Representation& rep) {
  Representation d;
  d.dim = rep.dim;
  d.name = rep.name + "*";
  d.evaluator = [rep](const GroupElement& g) { return inverse(rep_evaluate(rep, g)).transpose(); };
  return d;
}

inline Representation direct_sum_rep(const Representation& a, const Representation& b) {
  return {a.dim + b.dim,
          [a, b](const GroupElement& g) { return direct_sum(rep_evaluate(a, g), rep_evaluate(b, g)); },
          a.name + "+" + b.name};
}

/// Matrix of Sym^n of a 2x2 matrix h acting on homogeneous polynomials in
/// X, Y by P(X, Y) -> P((X, Y) h), basis X^{n-i} Y^i.
inline Matrix symmetric_power_matrix(const Matrix& h, std::size_t n) {
  if (h.rows() != 2 || h.cols() != 2) throw std::invalid_argument("symmetric_power_matrix: need 2x2");
  // Substituting X -> aX + cY, Y -> bX + dY.
  const Scalar &a = h(0, 0), &b = h(0, 1), &c = h(1, 0), &d = h(1, 1);
  auto poly_mul = [](const Vector& p, const Vector& q) {
    Vector r(p.size() + q.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };
  Matrix m(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    // image of X^{n-i} Y^i, coefficients indexed by power of Y
    Vector p{Scalar(1)};
    for (std::size_t k = 0; k < n - i; ++k) p = poly_mul(p, Vector{a, c});
    for (std::size_t k = 0; k < i; ++k) p = poly_mul(p, Vector{b, d});
    for (std::size_t r = 0; r <= n; ++r) m(r, i) = p[r];
  }
  return m;
}

/// Sym^n of the standard representation of GL2(Q), twisted by det^{-n/2} so
/// that scalar matrices act trivially (n even).  This is a representation of
/// PGL2(Q) and hence of any projective 2x2 model.
inline Representation symmetric_power_rep(std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("symmetric_power_rep: odd power is not projective");
  return {n + 1,
          [n](const GroupElement& g) {
            const Matrix& h = g.geom();
            if (h.rows() != 2) throw std::domain_error("Sym^n expects 2x2 elements");
            Matrix s = symmetric_power_matrix(h, n);
            Scalar det = determinant(h);
            Scalar twist = 1;
            for (std::size_t k = 0; k < n / 2; ++k) twist /= det;
            return s * twist;
          },
          "Sym^" + std::to_string(n)};
}

/// Checks that `elements` is a finite subgroup: contains the identity and is
/// closed under products.
inline bool is_finite_subgroup(const std::vector<GroupElement>& elements) {
  if (elements.empty()) return false;
  auto has = [&](const GroupElement& x) {
    return std::find(elements.begin(), elements.end(), x) != elements.end();
  };
  if (!has(GroupElement::identity(elements.front().size(), elements.front().projective()))) return false;
  for (const auto& x : elements)
    for (const auto& y : elements)
      if (!has(x * y)) return false;
  return true;
}

/// E^H for a finite subgroup H, via the averaging projector.  Cross-checked
/// against the kernel of the stacked (rho(h) - 1).
inline Subspace invariants_subspace(const Representation& rep, const std::vector<GroupElement>& h) {
  if (!is_finite_subgroup(h)) throw std::invalid_argument("invariants_subspace: H is not a finite subgroup");
  const std::size_t n = rep.dim;
  if (h.size() == 1) return Subspace::whole(n);
  Matrix proj(n, n);
  std::vector<Matrix> images;
  for (const auto& x : h) {
    images.push_back(rep_evaluate(rep, x));
    proj += images.back();
  }
  proj *= Scalar(1, static_cast<long>(h.size()));
  Subspace by_projector = image_basis(proj);

  Matrix stacked(0, n);
  for (auto& m : images) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= 1;
    stacked = vstack(stacked, m);
  }
  Subspace by_kernel = kernel_basis(stacked);
  if (by_kernel.basis != by_projector.basis)
    throw InvariantError("invariants_subspace: projector and kernel methods disagree (" + rep.name + ")");
  return by_projector;
}

/// (dim of H-invariants of Hom(E,F), dim of Hom_{kH}(E,F)); the two must agree.
inline std::pair<std::size_t, std::size_t> hom_stalk_check(const Representation& e, const Representation& f,
                                                           const std::vector<GroupElement>& h) {
  // Hom(E,F) vectorized row-major: X -> F(g) X E(g)^{-1} is kron(F(g), E(g)^{-T}).
  Representation hom{e.dim * f.dim,
                     [e, f](const GroupElement& g) {
                       return kron(rep_evaluate(f, g), inverse(rep_evaluate(e, g)).transpose());
                     },
                     "Hom(" + e.name + "," + f.name + ")"};
  std::size_t dim1 = invariants_subspace(hom, h).dim();

  // Intertwiner constraints F(g) X - X E(g) = 0, solved directly.
  const std::size_t rows = f.dim, cols = e.dim;
  Matrix constraints(0, rows * cols);
  for (const auto& g : h) {
    Matrix fg = rep_evaluate(f, g), eg = rep_evaluate(e, g);
    Matrix block(rows * cols, rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::size_t eq = i * cols + j;
        for (std::size_t k = 0; k < rows; ++k) block(eq, k * cols + j) += fg(i, k);
        for (std::size_t k = 0; k < cols; ++k) block(eq, i * cols + k) -= eg(k, j);
      }
    constraints = vstack(constraints, block);
  }
  std::size_t dim2 = kernel_basis(constraints).dim();
  return {dim1, dim2};
}

/// A finite-index subgroup D of G given by a membership oracle and left coset
/// representatives: G is the disjoint union of gamma_i D, gamma_1 = e.
struct SubgroupDatum {
  std::function<bool(const GroupElement&)> contains;
  std::size_t index = 1;
  std::vector<GroupElement> cosets;
};

/// The i with gamma_i^{-1} x in D.
inline std::size_t left_coset_of(const SubgroupDatum& sub, const GroupElement& x) {
  for (std::size_t i = 0; i < sub.cosets.size(); ++i)
    if (sub.contains(sub.cosets[i].inverse() * x)) return i;
  throw InvariantError("element " + x.str() + " lies in no listed coset");
}

/// The j with x gamma_j in D, i.e. x in D gamma_j^{-1}.
inline std::size_t right_coset_of(const SubgroupDatum& sub, const GroupElement& x) {
  for (std::size_t j = 0; j < sub.cosets.size(); ++j)
    if (sub.contains(x * sub.cosets[j])) return j;
  throw InvariantError("element " + x.str() + " lies in no right coset D gamma_j^{-1}");
}

struct CommensuratorDatum {
  GroupElement g;
  SubgroupDatum delta1;  // g G g^{-1} ∩ G
  SubgroupDatum delta2;  // G ∩ g^{-1} G g
};

/// Greedy coset enumeration: walks `candidates` (elements of G) and keeps
/// those in new left cosets until `index` are found; the identity comes first.
inline std::vector<GroupElement> enumerate_cosets(const std::function<bool(const GroupElement&)>& contains,
                                                  std::size_t index, const GroupElement& identity,
                                                  const std::function<std::optional<GroupElement>()>& next_candidate) {
  std::vector<GroupElement> reps{identity};
  while (reps.size() < index) {
    auto cand = next_candidate();
    if (!cand) throw InvariantError("coset enumeration exhausted its candidates before reaching the index");
    bool fresh = true;
    for (const auto& r : reps)
      if (contains(r.inverse() * *cand)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(*cand);
  }
  return reps;
}

/// Every sample must lie in exactly one listed coset, and listed cosets must
/// be pairwise disjoint.
inline CheckResult verify_coset_decomposition(const SubgroupDatum& sub, const std::vector<GroupElement>& samples) {
  CheckResult res{"coset_decomposition", true, {}};
  if (sub.cosets.size() != sub.index) res.fail("coset count " + std::to_string(sub.cosets.size()) +
                                               " differs from index " + std::to_string(sub.index));
  if (!sub.cosets.empty() && !sub.cosets.front().is_identity()) res.fail("gamma_1 is not the identity");
  for (std::size_t i = 0; i < sub.cosets.size(); ++i)
    for (std::size_t j = i + 1; j < sub.cosets.size(); ++j)
      if (sub.contains(sub.cosets[i].inverse() * sub.cosets[j]))
        res.fail("cosets " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  for (const auto& x : samples) {
    std::size_t hits = 0;
    for (const auto& c : sub.cosets)
      if (sub.contains(c.inverse() * x)) ++hits;
    if (hits != 1) res.fail("sample " + x.str() + " lies in " + std::to_string(hits) + " cosets");
  }
  return res;
}

}  // namespace dualis
