#pragma once
// Z^n acting on R^n by translations, with the Kuhn triangulation of the unit
// cube lattice.  Group elements are affine (n+1)x(n+1) matrices; Hecke data
// exist for affine maps with integral invertible linear part.

#include "dualis/models/model.hpp"

namespace dualis {

namespace torus_detail {

using Point = std::vector<long>;
using LatticeChain = std::map<std::pair<Point, std::size_t>, Scalar>;

inline Integer floor_of(const Scalar& q) {
  Integer num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  Integer f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

inline long to_long(const Scalar& q) {
  if (!is_integer(q)) throw std::domain_error("expected an integer, got " + to_string(q));
  return static_cast<long>(boost::multiprecision::numerator(q));
}

}  // namespace torus_detail

/// The flag S_1 < ... < S_k of nonempty coordinate subsets (bitmasks) that
/// describes the cell with vertices 0, e_{S_1}, ..., e_{S_k}.
using Flag = std::vector<unsigned>;

class TorusComplex {
 public:
  explicit TorusComplex(std::size_t n) : n_(n) {
    if (n == 0 || n > 3) throw std::invalid_argument("torus dimension must be 1, 2 or 3");
    std::vector<Flag> flags;
    Flag cur;
    const unsigned full = (1u << n) - 1;
    std::function<void(unsigned)> grow = [&](unsigned last) {
      flags.push_back(cur);
      for (unsigned s = 1; s <= full; ++s)
        if ((s & last) == last && s != last) {
          cur.push_back(s);
          grow(s);
          cur.pop_back();
        }
    };
    grow(0);
    std::stable_sort(flags.begin(), flags.end(), [](const Flag& a, const Flag& b) { return a.size() < b.size(); });
    flags_ = flags;
    for (std::size_t i = 0; i < flags_.size(); ++i) index_[flags_[i]] = i;

    std::vector<OrbitCell> cells;
    for (std::size_t i = 0; i < flags_.size(); ++i) {
      const Flag& f = flags_[i];
      OrbitCell c;
      c.id = i;
      c.dim = static_cast<int>(f.size());
      c.levels.push_back(0);
      for (unsigned s : f) c.levels.push_back(std::popcount(s));
      c.stabilizer = {GroupElement::identity(n + 1)};
      c.label = label(f);
      if (!f.empty()) {
        Flag rest;
        for (std::size_t j = 1; j < f.size(); ++j) rest.push_back(f[j] & ~f[0]);
        c.faces.push_back({translation(indicator(f[0])), index_.at(rest)});
        for (std::size_t j = 0; j < f.size(); ++j) {
          Flag drop = f;
          drop.erase(drop.begin() + static_cast<std::ptrdiff_t>(j));
          c.faces.push_back({GroupElement::identity(n + 1), index_.at(drop)});
        }
      }
      if (c.dim == static_cast<int>(n)) c.orientation = permutation_sign(f);
      cells.push_back(std::move(c));
    }
    GroupContext ctx{"Z^" + std::to_string(n), false, n + 1, [n](const GroupElement& g) { return is_lattice_translation(g, n); }};
    complex_ = std::make_shared<const EquivariantPairComplex>(static_cast<int>(n), std::move(cells), std::move(ctx));
  }

  std::size_t n() const { return n_; }
  std::shared_ptr<const EquivariantPairComplex> complex() const { return complex_; }
  const Flag& flag(std::size_t cell) const { return flags_.at(cell); }
  std::size_t cell_of(const Flag& f) const { return index_.at(f); }

  torus_detail::Point indicator(unsigned s) const {
    torus_detail::Point p(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      if (s & (1u << i)) p[i] = 1;
    return p;
  }

  GroupElement translation(const torus_detail::Point& w) const {
    Matrix m = Matrix::identity(n_ + 1);
    for (std::size_t i = 0; i < n_; ++i) m(i, n_) = w[i];
    return GroupElement(std::move(m));
  }

  static bool is_lattice_translation(const GroupElement& g, std::size_t n) {
    const Matrix& m = g.geom();
    if (m.rows() != n + 1) return false;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) != (i == j ? 1 : 0)) return false;
    if (m(n, n) != 1) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (!is_integer(m(i, n))) return false;
    return true;
  }

  torus_detail::Point translation_part(const GroupElement& g) const {
    if (!is_lattice_translation(g, n_)) throw std::domain_error("not a lattice translation: " + g.str());
    torus_detail::Point w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = torus_detail::to_long(g.geom()(i, n_));
    return w;
  }

 private:
  std::string label(const Flag& f) const {
    std::string s = "0";
    for (unsigned mask : f) {
      s += "<";
      for (std::size_t i = 0; i < n_; ++i)
        if (mask & (1u << i)) s += std::to_string(i + 1);
    }
    return s;
  }

  int permutation_sign(const Flag& f) const {
    // The top simplex adds coordinates in the order pi(1), ..., pi(n); its
    // edge matrix has determinant sign(pi).
    std::vector<int> perm;
    unsigned prev = 0;
    for (unsigned s : f) {
      unsigned added = s & ~prev;
      perm.push_back(std::countr_zero(added));
      prev = s;
    }
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sign = -sign;
    return sign;
  }

  std::size_t n_;
  std::vector<Flag> flags_;
  std::map<Flag, std::size_t> index_;
  std::shared_ptr<const EquivariantPairComplex> complex_;
};

/// Coefficients for Z^n (and optionally Z^n x| <A_k>): commuting matrices for
/// the unit translations and, per linear map A_k, a matrix for A_k.
struct TorusRepData {
  std::vector<Matrix> translations;
  std::vector<std::pair<Matrix, Matrix>> linear;  // (A, rho(A))
  std::string name = "rho";
};

inline Representation torus_representation(std::size_t n, const TorusRepData& data) {
  if (data.translations.size() != n) throw std::invalid_argument("torus rep: need one matrix per coordinate");
  const std::size_t d = data.translations.front().rows();
  for (const auto& t : data.translations) {
    if (t.rows() != d || t.cols() != d) throw std::invalid_argument("torus rep: matrix sizes differ");
    if (determinant(t) == 0) throw std::invalid_argument("torus rep: singular translation matrix");
  }
  for (const auto& a : data.translations)
    for (const auto& b : data.translations)
      if (a * b != b * a) throw std::invalid_argument("torus rep: translation matrices do not commute");
  auto power_of = [](const Matrix& t, const Scalar& e, std::size_t coord) -> Matrix {
    if (is_integer(e)) return matrix_power(t, torus_detail::to_long(e));
    if (t == Matrix::identity(t.rows())) return t;
    throw std::domain_error("translation by a non-integral amount in coordinate " + std::to_string(coord + 1) +
                            " where the representation is nontrivial");
  };
  auto translate_rep = [data, d, power_of](const std::vector<Scalar>& w) {
    Matrix m = Matrix::identity(d);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0) m = m * power_of(data.translations[j], w[j], j);
    return m;
  };
  for (const auto& [a, la] : data.linear) {
    if (a.rows() != n || !a.is_square() || determinant(a) == 0) throw std::invalid_argument("torus rep: bad linear map");
    if (la.rows() != d || determinant(la) == 0) throw std::invalid_argument("torus rep: bad image of a linear map");
    Matrix la_inv = inverse(la);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
      bool integral = std::all_of(col.begin(), col.end(), [](const Scalar& x) { return is_integer(x); });
      if (!integral) continue;
      if (la * data.translations[j] * la_inv != translate_rep(col))
        throw std::invalid_argument("torus rep: rho(A) does not conjugate rho(t_j) to rho(t_{A e_j})");
    }
  }
  const bool trivial_translations = std::all_of(data.translations.begin(), data.translations.end(),
                                                [d](const Matrix& t) { return t == Matrix::identity(d); });
  Representation rep;
  rep.dim = d;
  rep.name = data.name;
  rep.evaluator = [n, data, d, translate_rep, trivial_translations](const GroupElement& g) {
    const Matrix& m = g.geom();
    if (m.rows() != n + 1) throw std::domain_error("torus rep: element of the wrong size");
    Matrix lin(n, n);
    std::vector<Scalar> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) lin(i, j) = m(i, j);
      w[i] = m(i, n);
    }
    Matrix lin_rep = Matrix::identity(d);
    if (lin != Matrix::identity(n)) {
      bool found = false;
      for (const auto& [a, la] : data.linear) {
        Matrix p = a, q = la, pi = inverse(a), qi = inverse(la);
        Matrix pp = Matrix::identity(n), qp = Matrix::identity(d), pn = Matrix::identity(n), qn = Matrix::identity(d);
        for (int e = 1; e <= 6 && !found; ++e) {
          pp = pp * p;
          qp = qp * q;
          pn = pn * pi;
          qn = qn * qi;
          if (pp == lin) {
            lin_rep = qp;
            found = true;
          } else if (pn == lin) {
            lin_rep = qn;
            found = true;
          }
        }
        if (found) break;
      }
      // With trivial translations an undeclared linear part acts trivially.
      if (!found && !trivial_translations)
        throw std::domain_error("torus rep: linear part is not a declared power");
    }
    return translate_rep(w) * lin_rep;
  };
  return rep;
}

/// Comparison maps and Hecke data for affine g = (L, v) on the torus complex.
class TorusHecke {
 public:
  TorusHecke(std::shared_ptr<const TorusComplex> tc, const GroupElement& g) : tcp_(std::move(tc)), tc_(*tcp_), g_(g) {
    const std::size_t n = tc_.n();
    const Matrix& m = g.geom();
    if (m.rows() != n + 1) throw std::invalid_argument("torus Hecke element has the wrong size");
    Matrix lin(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) lin(i, j) = m(i, j);
      shift_.push_back(m(i, n));
    }
    for (std::size_t j = 0; j < n; ++j)
      if (m(n, j) != 0) throw std::invalid_argument("torus Hecke element is not affine");
    if (determinant(lin) == 0) throw std::invalid_argument("torus Hecke element is singular");
    lin_ = lin;
    k_ = inverse(lin);
    delta1_ = make_subgroup(k_);
    delta2_ = make_subgroup(lin_);
    build_chi();
  }

  HeckeDatum datum() const {
    HeckeDatum hd;
    hd.comm = {g_, delta1_, delta2_};
    hd.chi.max_degree = static_cast<int>(tc_.n());
    auto self = std::make_shared<TorusHecke>(*this);
    hd.chi.image = [self](const GroupElement& h, std::size_t cell) { return self->image(h, cell); };
    return hd;
  }

  Chain image(const GroupElement& h, std::size_t cell) const {
    using namespace torus_detail;
    Point w = tc_.translation_part(h);
    auto [j, ku] = split(w);
    Chain out;
    for (const auto& [key, coeff] : r_.at(j).at(cell)) {
      Point p = key.first;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += ku[i];
      out.push_back({coeff, tc_.translation(p), key.second});
    }
    return out;
  }

  const SubgroupDatum& delta1() const { return delta1_; }
  const SubgroupDatum& delta2() const { return delta2_; }

 private:
  using Point = torus_detail::Point;
  using LatticeChain = torus_detail::LatticeChain;

  /// {t_u : u in Z^n, M u in Z^n} with left coset representatives.
  SubgroupDatum make_subgroup(const Matrix& mm) const {
    const std::size_t n = tc_.n();
    Integer q = 1;
    for (const auto& x : mm.data()) q = boost::multiprecision::lcm(q, boost::multiprecision::denominator(x));
    const long ql = static_cast<long>(q);
    auto in_lattice = [mm, n](const Point& u) {
      for (std::size_t i = 0; i < n; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < n; ++j) s += mm(i, j) * u[j];
        if (!is_integer(s)) return false;
      }
      return true;
    };
    // [Z^n : L] = q^n / #(L mod q).
    std::size_t count = 0, total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(ql);
    std::vector<Point> residues;
    for (std::size_t code = 0; code < total; ++code) {
      Point u(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = static_cast<long>(c % static_cast<std::size_t>(ql));
        c /= static_cast<std::size_t>(ql);
      }
      residues.push_back(u);
      if (in_lattice(u)) ++count;
    }
    SubgroupDatum sub;
    const TorusComplex& tc = tc_;
    auto tcp = tcp_;
    sub.contains = [tcp, in_lattice, n](const GroupElement& x) {
      return TorusComplex::is_lattice_translation(x, n) && in_lattice(tcp->translation_part(x));
    };
    sub.index = total / count;
    std::size_t next = 1;
    sub.cosets = enumerate_cosets(sub.contains, sub.index, GroupElement::identity(n + 1),
                                  [&]() -> std::optional<GroupElement> {
                                    if (next >= residues.size()) return std::nullopt;
                                    return tc.translation(residues[next++]);
                                  });
    return sub;
  }

  /// w = r_j + u with u in Delta'; returns (j, K u).
  std::pair<std::size_t, Point> split(const Point& w) const {
    const std::size_t n = tc_.n();
    for (std::size_t j = 0; j < reps_.size(); ++j) {
      Point u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = w[i] - reps_[j][i];
      Point ku(n);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        Scalar s = 0;
        for (std::size_t t = 0; t < n; ++t) s += k_(i, t) * u[t];
        if (!is_integer(s)) ok = false;
        else ku[i] = torus_detail::to_long(s);
      }
      if (ok) return {j, ku};
    }
    throw InvariantError("translation lies in no coset of Delta'");
  }

  LatticeChain translate_chain(const LatticeChain& c, const Point& by) const {
    LatticeChain out;
    for (const auto& [key, coeff] : c) {
      Point p = key.first;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += by[i];
      out[{p, key.second}] += coeff;
    }
    return out;
  }

  LatticeChain image_chain(const Point& w, std::size_t cell) const {
    auto [j, ku] = split(w);
    return translate_chain(r_.at(j).at(cell), ku);
  }

  LatticeChain boundary_chain(const LatticeChain& c) const {
    const auto& k = *tc_.complex();
    LatticeChain out;
    for (const auto& [key, coeff] : c) {
      const auto& cell = k.cell(key.second);
      for (std::size_t i = 0; i < cell.faces.size(); ++i) {
        Point p = key.first;
        Point a = tc_.translation_part(cell.faces[i].attach);
        for (std::size_t t = 0; t < p.size(); ++t) p[t] += a[t];
        auto& slot = out[{p, cell.faces[i].target}];
        slot += i % 2 == 0 ? coeff : -coeff;
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  /// A d-chain D inside a lattice box with boundary z.
  LatticeChain fill(const LatticeChain& z, int d) const {
    const auto& k = *tc_.complex();
    const std::size_t n = tc_.n();
    if (z.empty()) return {};
    Point lo(n, std::numeric_limits<long>::max()), hi(n, std::numeric_limits<long>::min());
    for (const auto& [key, coeff] : z) {
      const Flag& f = tc_.flag(key.second);
      unsigned top = f.empty() ? 0 : f.back();
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::min(lo[i], key.first[i]);
        hi[i] = std::max(hi[i], key.first[i] + ((top >> i) & 1u));
      }
    }
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::vector<std::pair<Point, std::size_t>> cands;
      std::size_t count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
      for (std::size_t code = 0; code < count; ++code) {
        Point w(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
          long span = hi[i] - lo[i] + 1;
          w[i] = lo[i] + static_cast<long>(c % static_cast<std::size_t>(span));
          c /= static_cast<std::size_t>(span);
        }
        for (std::size_t cell : k.cells_of_dim(d)) {
          unsigned top = tc_.flag(cell).back();
          bool inside = true;
          for (std::size_t i = 0; i < n; ++i)
            if (w[i] + static_cast<long>((top >> i) & 1u) > hi[i]) inside = false;
          if (inside) cands.push_back({w, cell});
        }
      }
      std::map<std::pair<Point, std::size_t>, std::size_t> rows;
      std::vector<LatticeChain> bds;
      for (const auto& cand : cands) {
        LatticeChain single{{cand, Scalar(1)}};
        bds.push_back(boundary_chain(single));
        for (const auto& [key, coeff] : bds.back()) rows.emplace(key, rows.size());
      }
      bool covered = true;
      for (const auto& [key, coeff] : z)
        if (!rows.count(key)) covered = false;
      if (covered) {
        Matrix aug(rows.size(), cands.size() + 1);
        for (std::size_t c = 0; c < cands.size(); ++c)
          for (const auto& [key, coeff] : bds[c]) aug(rows.at(key), c) = coeff;
        for (const auto& [key, coeff] : z) aug(rows.at(key), cands.size()) = coeff;
        auto [r, piv] = rref_reduced(aug);
        if (piv.empty() || piv.back() != cands.size()) {
          LatticeChain sol;
          for (std::size_t i = 0; i < piv.size(); ++i)
            if (r(i, cands.size()) != 0) sol[cands[piv[i]]] = r(i, cands.size());
          if (boundary_chain(sol) != z) throw InvariantError("torus filling failed its own check");
          return sol;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        --lo[i];
        ++hi[i];
      }
    }
    throw InvariantError("no filling found for a cycle in the torus lattice");
  }

  void build_chi() {
    using namespace torus_detail;
    const auto& k = *tc_.complex();
    const std::size_t n = tc_.n();
    for (const auto& c : delta1_.cosets) reps_.push_back(tc_.translation_part(c));
    r_.assign(reps_.size(), std::vector<LatticeChain>(k.size()));
    for (int d = 0; d <= static_cast<int>(n); ++d)
      for (std::size_t j = 0; j < reps_.size(); ++j)
        for (std::size_t cell : k.cells_of_dim(d)) {
          if (d == 0) {
            // nearest lattice point below g^{-1}(r_j)
            Point p(n);
            for (std::size_t i = 0; i < n; ++i) {
              Scalar s = 0;
              for (std::size_t t = 0; t < n; ++t) s += k_(i, t) * (Scalar(reps_[j][t]) - shift_[t]);
              p[i] = static_cast<long>(floor_of(s));
            }
            r_[j][cell] = LatticeChain{{{p, cell}, Scalar(1)}};
            continue;
          }
          LatticeChain z;
          const auto& sigma = k.cell(cell);
          for (std::size_t i = 0; i < sigma.faces.size(); ++i) {
            Point w = reps_[j];
            Point a = tc_.translation_part(sigma.faces[i].attach);
            for (std::size_t t = 0; t < n; ++t) w[t] += a[t];
            for (const auto& [key, coeff] : image_chain(w, sigma.faces[i].target))
              z[key] += i % 2 == 0 ? coeff : -coeff;
          }
          for (auto it = z.begin(); it != z.end();) it = it->second == 0 ? z.erase(it) : std::next(it);
          r_[j][cell] = fill(z, d);
        }
  }

  std::shared_ptr<const TorusComplex> tcp_;
  const TorusComplex& tc_;
  GroupElement g_;
  Matrix lin_, k_;
  std::vector<Scalar> shift_;
  SubgroupDatum delta1_, delta2_;
  std::vector<Point> reps_;
  std::vector<std::vector<LatticeChain>> r_;
};

inline Model build_torus(std::size_t n, const TorusRepData& data, std::vector<GroupElement> hecke_elements = {}) {
  auto tc = std::make_shared<const TorusComplex>(n);
  Model m;
  m.family = "torus";
  m.id = "torus(n=" + std::to_string(n) + ", " + data.name + ")";
  m.complex = tc->complex();
  m.rep = torus_representation(n, data);
  m.sample = [tc, n](std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-6, 6);
    torus_detail::Point w(n);
    for (auto& x : w) x = d(rng);
    return tc->translation(w);
  };
  m.hecke = [tc](const GroupElement& g) { return TorusHecke(tc, g).datum(); };
  m.hecke_elements = std::move(hecke_elements);
  return m;
}

/// Affine element x -> A x + v as an (n+1)x(n+1) matrix.
inline GroupElement affine_element(const Matrix& a, const std::vector<Scalar>& v = {}) {
  const std::size_t n = a.rows();
  Matrix m = Matrix::identity(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    if (!v.empty()) m(i, n) = v[i];
  }
  return GroupElement(std::move(m));
}

}  // namespace dualis
