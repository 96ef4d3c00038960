#pragma once
// Gamma_0(N)/{+-1} acting on the upper half-plane with horoball
// neighbourhoods of the cusps removed.  The cell structure is the barycentric
// subdivision of the Farey tessellation, truncated at the horocycles:
//
//   vertex types   rho (triangle centre) < i (edge midpoint) < HE < HT
//
// where HE is an edge meeting a horocycle and HT the segment from a triangle
// centre to a cusp meeting it.  Each barycentric piece (triangle, edge, cusp)
// is a quadrilateral rho, i, HE, HT split into [rho, i, HE] and
// [rho, HE, HT].  Cells at infinity lie on the horocycles.

#include "dualis/models/model.hpp"
#include "dualis/models/oracles.hpp"

#include <cmath>
#include <complex>
#include <deque>
#include <numeric>

namespace dualis {

namespace modular_detail {

inline long mod(long a, long n) { return ((a % n) + n) % n; }

/// (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
template <class T>
std::tuple<T, T, T> ext_gcd(T a, T b) {
  T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    T q = old_r / r;
    T tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {T(-old_r), T(-old_s), T(-old_t)};
  return {old_r, old_s, old_t};
}

inline Integer to_integer(const Scalar& q) {
  if (!is_integer(q)) throw std::domain_error("expected an integral matrix entry, got " + to_string(q));
  return boost::multiprecision::numerator(q);
}

/// Residue of an arbitrary-size integer modulo a small positive n.
inline long residue(const Integer& a, long n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return static_cast<long>(r);
}

inline GroupElement mat(long a, long b, long c, long d) { return GroupElement(Matrix{{a, b}, {c, d}}, true); }

inline GroupElement mat(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return GroupElement(Matrix{{Scalar(a), Scalar(b)}, {Scalar(c), Scalar(d)}}, true);
}

inline std::array<Integer, 4> entries(const GroupElement& g) {
  const Matrix& m = g.geom();
  return {to_integer(m(0, 0)), to_integer(m(0, 1)), to_integer(m(1, 0)), to_integer(m(1, 1))};
}

inline bool is_integral(const GroupElement& g) {
  for (const auto& x : g.geom().data())
    if (!is_integer(x)) return false;
  return true;
}

inline Integer floor_of(const Scalar& q) {
  Integer num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  Integer f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

}  // namespace modular_detail

inline const GroupElement& sl2_S() {
  static const GroupElement s = modular_detail::mat(0, -1, 1, 0);
  return s;
}
inline const GroupElement& sl2_U() {
  static const GroupElement u = modular_detail::mat(1, -1, 1, 0);
  return u;
}
inline GroupElement sl2_T(long k = 1) { return modular_detail::mat(1, k, 0, 1); }

/// P^1(Z/N): pairs (c : d) with gcd(c, d, N) = 1 modulo units, with the
/// right action of PSL2(Z) on row vectors.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(long n) : n_(n) {
    if (n < 1) throw std::invalid_argument("level must be positive");
    for (long u = 1; u <= std::max(1L, n); ++u)
      if (std::gcd(u, n) == 1 || n == 1) units_.push_back(u % std::max(n, 1L));
    for (long c = 0; c < n; ++c)
      for (long d = 0; d < n; ++d) {
        if (n > 1 && std::gcd(std::gcd(c, d), n) != 1) continue;
        auto key = normalize(c, d);
        if (!index_.count(key)) {
          index_[key] = points_.size();
          points_.push_back(key);
        }
      }
    if (n == 1) {
      points_ = {{0, 0}};
      index_ = {{{0, 0}, 0}};
    }
  }

  long level() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::pair<long, long>& point(std::size_t i) const { return points_.at(i); }

  std::pair<long, long> normalize(long c, long d) const {
    using modular_detail::mod;
    if (n_ == 1) return {0, 0};
    std::pair<long, long> best{n_, n_};
    for (long u : units_) {
      std::pair<long, long> cand{mod(u * c, n_), mod(u * d, n_)};
      if (cand < best) best = cand;
    }
    return best;
  }

  std::size_t index_of(long c, long d) const { return index_.at(normalize(c, d)); }

  /// Class of the bottom row of an SL2(Z) element.
  std::size_t of_bottom_row(const GroupElement& a) const {
    auto e = modular_detail::entries(a);
    return index_of(modular_detail::residue(e[2], n_), modular_detail::residue(e[3], n_));
  }

  std::size_t act(std::size_t x, const GroupElement& s) const {
    auto [c, d] = points_.at(x);
    auto e = modular_detail::entries(s);
    return index_of(modular_detail::residue(c * e[0] + d * e[2], n_), modular_detail::residue(c * e[1] + d * e[3], n_));
  }

  /// An SL2(Z) matrix whose bottom row represents x.
  GroupElement lift(std::size_t x) const {
    if (n_ == 1) return GroupElement::identity(2, true);
    auto [c, d] = points_.at(x);
    for (long k = 0; k < 10 * n_ + 10; ++k)
      for (long sgn : {1L, -1L}) {
        long dd = d + sgn * k * n_;
        long cc = c == 0 ? 0 : c;
        if (cc == 0 && std::abs(dd) != 1) continue;
        auto [g, x1, y1] = modular_detail::ext_gcd<long>(dd, cc);
        if (g != 1) continue;
        // a dd - b cc = 1 with a = x1, b = -y1
        return modular_detail::mat(x1, -y1, cc, dd);
      }
    throw InvariantError("no lift found for a point of P^1(Z/N)");
  }

 private:
  long n_;
  std::vector<long> units_;
  std::vector<std::pair<long, long>> points_;
  std::map<std::pair<long, long>, std::size_t> index_;
};

/// [PSL2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p).
inline long gamma0_index(long n) {
  long index = n;
  for (long p : oracle_detail::prime_factors(n)) index = index / p * (p + 1);
  return index;
}

inline bool in_gamma0(const GroupElement& g, long n) {
  if (g.size() != 2 || !modular_detail::is_integral(g)) return false;
  if (determinant(g.geom()) != 1) return false;
  return modular_detail::residue(modular_detail::entries(g)[2], n) == 0;
}

/// Cell identifiers of the PSL2(Z) complex.
enum ModularBaseCell : std::size_t {
  kRho, kI, kHE, kHT,
  kEdgeA, kEdgeB, kEdgeC1, kEdgeC2, kEdgeD, kEdgeF1, kEdgeF2,
  kTri1, kTri2, kTri3, kTri4
};

/// The PSL2(Z)-complex: 4 vertex, 7 edge and 4 triangle orbits.
inline std::shared_ptr<const EquivariantPairComplex> modular_base_complex() {
  const GroupElement e = GroupElement::identity(2, true);
  const GroupElement& s = sl2_S();
  const GroupElement& u = sl2_U();
  const GroupElement u2 = u * u;
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
  cells.push_back(cell(kRho, 0, {0}, {}, false, 0, "rho"));
  cells.back().stabilizer = {e, u, u2};
  cells.push_back(cell(kI, 0, {1}, {}, false, 0, "i"));
  cells.back().stabilizer = {e, s};
  cells.push_back(cell(kHE, 0, {2}, {}, true, 0, "HE"));
  cells.push_back(cell(kHT, 0, {3}, {}, true, 0, "HT"));
  cells.push_back(cell(kEdgeA, 1, {0, 1}, {{e, kI}, {e, kRho}}, false, 0, "rho-i"));
  cells.push_back(cell(kEdgeB, 1, {1, 2}, {{e, kHE}, {e, kI}}, false, 0, "i-HE"));
  cells.push_back(cell(kEdgeC1, 1, {0, 2}, {{e, kHE}, {e, kRho}}, false, 0, "rho-HE"));
  cells.push_back(cell(kEdgeC2, 1, {0, 2}, {{s, kHE}, {e, kRho}}, false, 0, "rho-S.HE"));
  cells.push_back(cell(kEdgeD, 1, {0, 3}, {{e, kHT}, {e, kRho}}, false, 0, "rho-HT"));
  cells.push_back(cell(kEdgeF1, 1, {2, 3}, {{e, kHT}, {e, kHE}}, true, 0, "HE-HT"));
  cells.push_back(cell(kEdgeF2, 1, {2, 3}, {{u2, kHT}, {s, kHE}}, true, 0, "S.HE-U2.HT"));
  cells.push_back(cell(kTri1, 2, {0, 1, 2}, {{e, kEdgeB}, {e, kEdgeC1}, {e, kEdgeA}}, false, -1, "rho i HE"));
  cells.push_back(cell(kTri2, 2, {0, 2, 3}, {{e, kEdgeF1}, {e, kEdgeD}, {e, kEdgeC1}}, false, -1, "rho HE HT"));
  cells.push_back(cell(kTri3, 2, {0, 1, 2}, {{s, kEdgeB}, {e, kEdgeC2}, {e, kEdgeA}}, false, 1, "rho i S.HE"));
  cells.push_back(cell(kTri4, 2, {0, 2, 3}, {{e, kEdgeF2}, {u2, kEdgeD}, {e, kEdgeC2}}, false, 1, "rho S.HE U2.HT"));
  GroupContext ctx{"PSL2(Z)", true, 2, [](const GroupElement& g) { return in_gamma0(g, 1); }};
  return std::make_shared<const EquivariantPairComplex>(2, std::move(cells), std::move(ctx));
}

/// Gamma_0(N)-orbit cells as pairs (PSL2(Z)-cell beta, orbit of P^1(Z/N)
/// under the stabilizer of beta); the representative is M_x . beta.
class Gamma0Complex {
 public:
  explicit Gamma0Complex(long n) : n_(n), line_(n), base_(modular_base_complex()) {
    if (n < 1 || n > 30) throw std::invalid_argument("level N must lie in 1..30");
    for (std::size_t x = 0; x < line_.size(); ++x) lifts_.push_back(line_.lift(x));
    over_.assign(base_->size(), {});
    std::vector<OrbitCell> cells;
    for (const auto& beta : base_->cells()) {
      std::vector<bool> seen(line_.size(), false);
      for (std::size_t x = 0; x < line_.size(); ++x) {
        if (seen[x]) continue;
        std::vector<GroupElement> stab;
        for (const auto& s : beta.stabilizer) {
          std::size_t y = line_.act(x, s);
          seen[y] = true;
          if (y == x) stab.push_back(lifts_[x] * s * lifts_[x].inverse());
        }
        OrbitCell c;
        c.id = cells.size();
        c.dim = beta.dim;
        c.levels = beta.levels;
        c.stabilizer = std::move(stab);
        c.at_infinity = beta.at_infinity;
        c.orientation = beta.orientation;
        auto [pc, pd] = line_.point(x);
        c.label = beta.label + "@(" + std::to_string(pc) + ":" + std::to_string(pd) + ")";
        over_[beta.id].push_back(c.id);
        origin_.push_back({beta.id, x});
        cells.push_back(std::move(c));
      }
    }
    for (auto& c : cells) {
      auto [beta, x] = origin_[c.id];
      for (const auto& f : base_->cell(beta).faces) {
        auto [h, t] = locate(lifts_[x] * f.attach, f.target);
        c.faces.push_back({h, t});
      }
    }
    GroupContext ctx{"Gamma_0(" + std::to_string(n) + ")", true, 2, [n](const GroupElement& g) { return in_gamma0(g, n); }};
    complex_ = std::make_shared<const EquivariantPairComplex>(2, std::move(cells), std::move(ctx));
  }

  long level() const { return n_; }
  const ProjectiveLine& line() const { return line_; }
  std::shared_ptr<const EquivariantPairComplex> base() const { return base_; }
  std::shared_ptr<const EquivariantPairComplex> complex() const { return complex_; }
  const std::pair<std::size_t, std::size_t>& origin(std::size_t cell) const { return origin_.at(cell); }
  const GroupElement& lift(std::size_t x) const { return lifts_.at(x); }

  /// The PSL2(Z)-cell A . beta written as h . c with h in Gamma_0(N).
  std::pair<GroupElement, std::size_t> locate(const GroupElement& a, std::size_t beta) const {
    std::size_t y = line_.of_bottom_row(a);
    for (const auto& s : base_->cell(beta).stabilizer) {
      GroupElement s_inv = s.inverse();
      std::size_t x = line_.act(y, s_inv);
      for (std::size_t c : over_[beta])
        if (origin_[c].second == x) {
          GroupElement h = a * s_inv * lifts_[x].inverse();
          if (!in_gamma0(h, n_)) throw InvariantError("locate produced an element outside Gamma_0(N)");
          return {h, c};
        }
    }
    throw InvariantError("cannot locate " + a.str() + " on the Gamma_0(N) complex");
  }

  /// Number of connected components of the subcomplex at infinity.
  std::size_t boundary_components() const {
    const auto& k = *complex_;
    std::vector<std::size_t> parent(k.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (std::size_t e : k.cells_of_dim(1)) {
      const auto& c = k.cell(e);
      if (!c.at_infinity) continue;
      parent[find(c.faces[0].target)] = find(c.faces[1].target);
    }
    std::set<std::size_t> roots;
    for (std::size_t v : k.cells_of_dim(0))
      if (k.cell(v).at_infinity) roots.insert(find(v));
    return roots.size();
  }

 private:
  long n_;
  ProjectiveLine line_;
  std::shared_ptr<const EquivariantPairComplex> base_;
  std::shared_ptr<const EquivariantPairComplex> complex_;
  std::vector<GroupElement> lifts_;
  std::vector<std::vector<std::size_t>> over_;
  std::vector<std::pair<std::size_t, std::size_t>> origin_;
};

/// Weight-k coefficients: Sym^{k-2} of the standard representation, twisted
/// to be trivial on scalars.
inline Representation weight_representation(long k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and at least 2");
  auto rep = symmetric_power_rep(static_cast<std::size_t>(k - 2));
  rep.name = "Sym^" + std::to_string(k - 2);
  return rep;
}

/// Equivariant rewriting of translates X . beta (X integral of determinant p)
/// as chains in the PSL2(Z)-complex, for cells of dimension <= 1.
/// R(gamma X, beta) = gamma R(X, beta) for gamma in PSL2(Z) and
/// R(X s, beta) = R(X, beta) for s fixing beta.
class ModularRewriter {
 public:
  ModularRewriter(std::shared_ptr<const EquivariantPairComplex> base, long p) : base_(std::move(base)), p_(p) {
    if (p < 1) throw std::invalid_argument("determinant must be positive");
    for (long a = 1; a <= p; ++a) {
      if (p % a != 0) continue;
      long d = p / a;
      for (long b = 0; b < d; ++b) forms_.push_back({a, b, d});
    }
    // star of each base vertex: (edge, face index, attach) with face_i(edge) = attach . vertex
    star_.assign(base_->size(), {});
    for (std::size_t e : base_->cells_of_dim(1))
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& f = base_->cell(e).faces[i];
        star_[f.target].push_back({e, i, f.attach});
      }
  }

  long determinant_value() const { return p_; }

  /// X = A . alpha_j with A in PSL2(Z) and alpha_j in Hermite normal form.
  std::pair<GroupElement, std::size_t> decompose(const GroupElement& x) const {
    using namespace modular_detail;
    auto [x11, x12, x21, x22] = entries(x);
    Integer det = x11 * x22 - x12 * x21;
    if (det != p_) throw InvariantError("element does not have determinant p: " + x.str());
    auto [g, u, v] = ext_gcd<Integer>(x11, x21);
    // rows [u v; -x21/g x11/g] have determinant 1 and clear the lower-left entry
    Integer m11 = u, m12 = v, m21 = -x21 / g, m22 = x11 / g;
    Integer h12 = m11 * x12 + m12 * x22;
    Integer h22 = m21 * x12 + m22 * x22;
    Integer kk = modular_detail::floor_of(Scalar(h12, h22));
    h12 -= kk * h22;
    m11 -= kk * m21;
    m12 -= kk * m22;
    std::size_t j = form_index(static_cast<long>(g), static_cast<long>(h12), static_cast<long>(h22));
    GroupElement m = mat(m11, m12, m21, m22);
    return {m.inverse(), j};
  }

  GroupElement form(std::size_t j) const {
    auto [a, b, d] = forms_.at(j);
    return GroupElement(Matrix{{a, b}, {0, d}}, true);
  }
  std::size_t form_count() const { return forms_.size(); }

  /// The rewritten chain of X . beta (dim beta <= 1).
  Chain rewrite(const GroupElement& x, std::size_t beta) const {
    auto [a, j] = decompose(x);
    const auto& cell = base_->cell(beta);
    if (cell.dim == 0) {
      // move j to its orbit representative under the stabilizer of beta
      for (const auto& s : cell.stabilizer) {
        auto [b, j2] = decompose(form(j) * s);
        // alpha_j s = b alpha_{j2}; R(alpha_j) = R(b alpha_{j2} s^{-1}) = b R(alpha_{j2})
        if (is_orbit_rep(j2, beta)) return translate(a * b, vertex_chain(j2, beta));
      }
      throw InvariantError("orbit representative not found");
    }
    if (cell.dim == 1) return translate(a, edge_chain(j, beta));
    throw std::invalid_argument("rewriting is only available in dimensions 0 and 1");
  }

 private:
  using Key = std::pair<std::size_t, GroupElement>;

  std::size_t form_index(long a, long b, long d) const {
    for (std::size_t j = 0; j < forms_.size(); ++j)
      if (forms_[j] == std::array<long, 3>{a, b, d}) return j;
    throw InvariantError("Hermite form not found");
  }

  bool is_orbit_rep(std::size_t j, std::size_t beta) const {
    for (const auto& s : base_->cell(beta).stabilizer)
      if (decompose(form(j) * s).second < j) return false;
    return true;
  }

  /// Choice of a vertex near alpha_j . beta (as a single term), before
  /// averaging over the stabilizer of j.
  ChainTerm nearby_vertex(std::size_t j, std::size_t beta) const {
    using modular_detail::floor_of;
    auto [a, b, d] = forms_[j];
    auto boundary = [&](const Scalar& x) -> ChainTerm {
      Integer k = floor_of(2 * x);
      long kk = static_cast<long>(k);
      if (kk % 2 == 0) return {Scalar(1), sl2_T(kk / 2), kHE};
      return {Scalar(1), sl2_T((kk - 1) / 2), kHT};
    };
    switch (beta) {
      case kRho: return {Scalar(1), sl2_T(static_cast<long>(floor_of((Scalar(a, 2) + b) / d))), kRho};
      case kI: return {Scalar(1), sl2_T(static_cast<long>(floor_of(Scalar(b, d) + Scalar(1, 2)))), kI};
      case kHE: return boundary(Scalar(b, d));
      case kHT: return boundary((Scalar(a, 2) + b) / d);
      default: throw std::invalid_argument("not a vertex");
    }
  }

  Chain vertex_chain(std::size_t j, std::size_t beta) const {
    auto key = std::make_pair(j, beta);
    auto it = vertex_cache_.find(key);
    if (it != vertex_cache_.end()) return it->second;
    ChainTerm v = nearby_vertex(j, beta);
    std::vector<GroupElement> group;
    for (const auto& s : base_->cell(beta).stabilizer) {
      auto [b, j2] = decompose(form(j) * s);
      if (j2 == j) group.push_back(b);
    }
    Chain out;
    for (const auto& b : group) out.push_back({Scalar(1, static_cast<long>(group.size())), b * v.attach, v.cell});
    auto canon = canonical_chain(*base_, out);
    Chain result;
    for (const auto& [k, c] : canon) result.push_back({c, k.second, k.first});
    vertex_cache_[key] = result;
    return result;
  }

  Chain edge_chain(std::size_t j, std::size_t beta) const {
    auto key = std::make_pair(j, beta);
    auto it = edge_cache_.find(key);
    if (it != edge_cache_.end()) return it->second;
    const auto& cell = base_->cell(beta);
    Chain z;
    for (std::size_t i = 0; i < 2; ++i)
      for (auto t : rewrite(form(j) * cell.faces[i].attach, cell.faces[i].target)) {
        if (i == 1) t.coeff = -t.coeff;
        z.push_back(std::move(t));
      }
    Chain d = fill(z, cell.at_infinity);
    edge_cache_[key] = d;
    return d;
  }

  static std::complex<double> position(const GroupElement& a, std::size_t v) {
    static const std::complex<double> base[] = {{0.5, std::sqrt(3.0) / 2}, {0, 1}, {0, 2}, {0.5, 2}};
    auto m = a.geom();
    double a11 = m(0, 0).convert_to<double>(), a12 = m(0, 1).convert_to<double>();
    double a21 = m(1, 0).convert_to<double>(), a22 = m(1, 1).convert_to<double>();
    std::complex<double> z = base[v];
    return (a11 * z + a12) / (a21 * z + a22);
  }

  static double distance(std::complex<double> z, std::complex<double> w) {
    double arg = 1 + std::norm(z - w) / (2 * z.imag() * w.imag());
    return std::acosh(std::max(1.0, arg));
  }

  /// A 1-chain D with boundary z (augmentation zero), built from paths in
  /// the 1-skeleton; boundary chains use only edges at infinity.
  Chain fill(const Chain& z, bool boundary_only) const {
    auto canon = canonical_chain(*base_, z);
    if (canon.empty()) return {};
    Scalar total = 0;
    for (const auto& [k, c] : canon) total += c;
    if (total != 0) throw InvariantError("cannot fill a 0-chain of nonzero augmentation");
    const Key source = canon.begin()->first;
    Chain out;
    for (const auto& [k, c] : canon) {
      if (k == source) continue;
      for (auto t : path(source, k, boundary_only)) {
        t.coeff *= c;
        out.push_back(std::move(t));
      }
    }
    auto result = canonical_chain(*base_, out);
    Chain simplified;
    for (const auto& [k, c] : result) simplified.push_back({c, k.second, k.first});
    if (canonical_chain(*base_, boundary(*base_, simplified)) != canon)
      throw InvariantError("edge filling failed its boundary check");
    return simplified;
  }

  Chain path(const Key& from, const Key& to, bool boundary_only) const {
    const auto p = position(from.second, from.first), q = position(to.second, to.first);
    const double direct = distance(p, q);
    for (double slack = 3.0; slack <= 96.0; slack *= 2) {
      std::map<Key, std::pair<Key, ChainTerm>> parent;
      std::deque<Key> queue{from};
      parent.emplace(from, std::make_pair(from, ChainTerm{Scalar(0), from.second, from.first}));
      std::size_t visited = 0;
      bool found = false;
      while (!queue.empty() && !found && visited < 200000) {
        Key cur = queue.front();
        queue.pop_front();
        ++visited;
        const auto& vcell = base_->cell(cur.first);
        for (const auto& s : vcell.stabilizer)
          for (const auto& [edge, i, attach] : star_[cur.first]) {
            const auto& ecell = base_->cell(edge);
            if (boundary_only && !ecell.at_infinity) continue;
            GroupElement e_at = cur.second * s * attach.inverse();
            const auto& other = ecell.faces[1 - i];
            Key next{other.target, base_->canonical_attach(e_at * other.attach, other.target)};
            if (parent.count(next)) continue;
            if (!boundary_only) {
              auto z = position(next.second, next.first);
              if (distance(p, z) + distance(z, q) > direct + slack) continue;
            }
            // traversing face_1 -> face_0 is +edge
            ChainTerm step{Scalar(i == 1 ? 1 : -1), e_at, edge};
            parent.emplace(next, std::make_pair(cur, step));
            if (next == to) {
              found = true;
              break;
            }
            queue.push_back(next);
          }
      }
      if (!found) continue;
      Chain out;
      for (Key cur = to; cur != from;) {
        const auto& [prev, step] = parent.at(cur);
        out.push_back(step);
        cur = prev;
      }
      return out;
    }
    throw InvariantError("no path found between vertices in the modular complex");
  }

  struct StarEntry {
    std::size_t edge;
    std::size_t face;
    GroupElement attach;
  };

  std::shared_ptr<const EquivariantPairComplex> base_;
  long p_;
  std::vector<std::array<long, 3>> forms_;
  std::vector<std::vector<StarEntry>> star_;
  mutable std::map<std::pair<std::size_t, std::size_t>, Chain> vertex_cache_, edge_cache_;
};

/// Hecke data for an integral g of prime determinant p in
/// (Gamma_0(N) diag(1,p) Gamma_0(N))^{+-1}.
class ModularHecke {
 public:
  ModularHecke(std::shared_ptr<const Gamma0Complex> gc, const GroupElement& g) : gc_(std::move(gc)), g_(g) {
    using namespace modular_detail;
    if (g.size() != 2 || !is_integral(g)) throw std::invalid_argument("modular Hecke element must be integral 2x2");
    auto [a, b, c, d] = entries(g);
    Integer det = a * d - b * c;
    if (det <= 0 || det > 1000) throw std::invalid_argument("modular Hecke element must have determinant in 1..1000");
    const long p = static_cast<long>(det);
    if (p <= 0) throw std::invalid_argument("modular Hecke element must have positive determinant");
    if (oracle_detail::prime_factors(p) != std::vector<long>{p})
      throw std::invalid_argument("modular Hecke element must have prime determinant");
    adj_ = mat(d, -b, -c, a);
    rewriter_ = std::make_shared<ModularRewriter>(gc_->base(), p);
    const long n = gc_->level();
    const long index = gamma0_index(n * p) / gamma0_index(n);
    GroupElement gi = g.inverse();
    delta1_.contains = [n, g, gi](const GroupElement& x) { return in_gamma0(x, n) && in_gamma0(gi * x * g, n); };
    delta2_.contains = [n, g, gi](const GroupElement& x) { return in_gamma0(x, n) && in_gamma0(g * x * gi, n); };
    delta1_.index = delta2_.index = static_cast<std::size_t>(index);
    delta1_.cosets = enumerate(delta1_.contains, delta1_.index);
    delta2_.cosets = enumerate(delta2_.contains, delta2_.index);
  }

  HeckeDatum datum() const {
    HeckeDatum hd;
    hd.comm = {g_, delta1_, delta2_};
    hd.chi.max_degree = 1;
    auto gc = gc_;
    auto rw = rewriter_;
    auto adj = adj_;
    auto cache = std::make_shared<std::map<std::pair<GroupElement, std::size_t>, Chain>>();
    hd.chi.image = [gc, rw, adj, cache](const GroupElement& h, std::size_t cell) {
      auto key = std::make_pair(h, cell);
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
      auto [beta, x] = gc->origin(cell);
      Chain base = rw->rewrite(adj * h * gc->lift(x), beta);
      Chain out;
      for (const auto& t : base) {
        auto [h2, c2] = gc->locate(t.attach, t.cell);
        out.push_back({t.coeff, h2, c2});
      }
      cache->emplace(key, out);
      return out;
    };
    return hd;
  }

  /// Candidate elements of Gamma_0(N) in increasing size.
  static std::vector<GroupElement> candidates(long n, long bound) {
    std::vector<GroupElement> out;
    for (long s = 0; s <= bound; ++s)
      for (long t = -s; t <= s; ++t) {
        long a_abs = s - std::abs(t);
        for (long a : {a_abs, -a_abs}) {
          if (a == 0 && a_abs != 0) continue;
          long c = n * t;
          auto [g, x, y] = modular_detail::ext_gcd<long>(a, c);
          if (g != 1) continue;
          // a d - b c = 1 with d = x, b = -y
          GroupElement base = modular_detail::mat(a, -y, c, x);
          for (long k = 0; k <= 7; ++k) {
            out.push_back(base * sl2_T(k));
            if (k) out.push_back(sl2_T(k) * base);
          }
          if (a_abs == 0) break;
        }
      }
    return out;
  }

 private:
  std::vector<GroupElement> enumerate(const std::function<bool(const GroupElement&)>& contains, std::size_t index) const {
    auto cands = candidates(gc_->level(), 12);
    std::size_t next = 0;
    return enumerate_cosets(contains, index, GroupElement::identity(2, true), [&]() -> std::optional<GroupElement> {
      if (next >= cands.size()) return std::nullopt;
      return cands[next++];
    });
  }

  std::shared_ptr<const Gamma0Complex> gc_;
  GroupElement g_, adj_;
  std::shared_ptr<ModularRewriter> rewriter_;
  SubgroupDatum delta1_, delta2_;
};

inline Model build_modular(long n, long weight, std::vector<GroupElement> hecke_elements = {}) {
  if (weight < 2 || weight > 6 || weight % 2 != 0) throw std::invalid_argument("weight must be 2, 4 or 6");
  auto gc = std::make_shared<const Gamma0Complex>(n);
  Model m;
  m.family = "modular";
  m.id = "modular(N=" + std::to_string(n) + ", k=" + std::to_string(weight) + ")";
  m.complex = gc->complex();
  m.rep = weight_representation(weight);
  auto cands = std::make_shared<std::vector<GroupElement>>(ModularHecke::candidates(n, 6));
  m.sample = [n, cands](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, cands->size() - 1);
    std::uniform_int_distribution<long> step(-2, 2);
    std::uniform_int_distribution<int> len(0, 2);
    GroupElement x = (*cands)[pick(rng)];
    for (int i = len(rng); i > 0; --i) {
      long k = step(rng);
      x = x * (i % 2 ? sl2_T(k) : modular_detail::mat(1, 0, n * k, 1));
    }
    return x;
  };
  m.hecke = [gc](const GroupElement& g) { return ModularHecke(gc, g).datum(); };
  m.hecke_elements = std::move(hecke_elements);
  return m;
}

}  // namespace dualis
