#pragma once
// Transfer, pullback and Hecke operators on equivariant cochains, and the
// checks of their identities.

#include "dualis/duality.hpp"

namespace dualis {

/// Chain-level realization of x -> g^{-1} x: image(h, c) is chi(h . c) for
/// h in G and c an orbit cell of dimension <= max_degree.
struct ComparisonMap {
  int max_degree = 0;
  std::function<Chain(const GroupElement& h, std::size_t cell)> image;
};

struct HeckeDatum {
  CommensuratorDatum comm;
  ComparisonMap chi;
};

// ---------------------------------------------------------------------------
// The complex of Delta' \ X built over a G-complex.

class SubgroupComplex {
 public:
  struct Origin {
    std::size_t base = 0;   // G-orbit cell sigma
    std::size_t coset = 0;  // j0: the representative is gamma_{j0}^{-1} sigma
  };

  SubgroupComplex(std::shared_ptr<const EquivariantPairComplex> base, SubgroupDatum sub)
      : base_(std::move(base)), sub_(std::move(sub)) {
    const auto& k = *base_;
    const std::size_t m = sub_.cosets.size();
    if (m != sub_.index) throw InvariantError("subgroup datum: coset count differs from the index");
    std::vector<GroupElement> inv;
    for (const auto& c : sub_.cosets) inv.push_back(c.inverse());
    over_.assign(k.size(), {});
    std::vector<OrbitCell> cells;
    for (const auto& sigma : k.cells()) {
      std::vector<bool> seen(m, false);
      std::size_t covered = 0;
      for (std::size_t j0 = 0; j0 < m; ++j0) {
        if (seen[j0]) continue;
        // Orbit of j0 under j -> j.s (right multiplication by G_sigma on Delta' gamma_j^{-1}).
        std::vector<GroupElement> stab;
        std::size_t orbit = 0;
        for (const auto& s : sigma.stabilizer) {
          std::size_t j = right_coset_of(sub_, inv[j0] * s);
          if (!seen[j]) {
            seen[j] = true;
            ++orbit;
          }
          if (j == j0) stab.push_back(inv[j0] * s * sub_.cosets[j0]);
        }
        if (orbit * stab.size() != sigma.stabilizer.size())
          throw InvariantError("double coset bookkeeping is inconsistent over cell " + std::to_string(sigma.id));
        covered += orbit;
        OrbitCell c;
        c.id = cells.size();
        c.dim = sigma.dim;
        c.levels = sigma.levels;
        c.stabilizer = std::move(stab);
        c.at_infinity = sigma.at_infinity;
        c.orientation = sigma.orientation;
        c.label = sigma.label + "/" + std::to_string(j0);
        over_[sigma.id].push_back(c.id);
        origins_.push_back({sigma.id, j0});
        cells.push_back(std::move(c));
      }
      if (covered != m) throw InvariantError("double cosets do not cover G over cell " + std::to_string(sigma.id));
    }
    for (auto& c : cells) {
      const auto& o = origins_[c.id];
      const auto& sigma = k.cell(o.base);
      for (const auto& f : sigma.faces) {
        auto [d, t] = locate(inv[o.coset] * f.attach, f.target);
        c.faces.push_back({d, t});
      }
    }
    GroupContext ctx = k.group();
    ctx.name = k.group().name + " subgroup of index " + std::to_string(m);
    ctx.contains = sub_.contains;
    complex_ = std::make_shared<const EquivariantPairComplex>(k.dimension(), std::move(cells), std::move(ctx));
  }

  const EquivariantPairComplex& base() const { return *base_; }
  const EquivariantPairComplex& complex() const { return *complex_; }
  std::shared_ptr<const EquivariantPairComplex> complex_ptr() const { return complex_; }
  const SubgroupDatum& subgroup() const { return sub_; }
  const Origin& origin(std::size_t cell) const { return origins_.at(cell); }
  const std::vector<std::size_t>& over(std::size_t sigma) const { return over_.at(sigma); }

  /// Writes the G-cell h . sigma as delta . c' with delta in Delta'.
  std::pair<GroupElement, std::size_t> locate(const GroupElement& h, std::size_t sigma) const {
    for (const auto& s : base_->cell(sigma).stabilizer) {
      GroupElement hs = h * s.inverse();
      for (std::size_t c : over_.at(sigma)) {
        GroupElement d = hs * sub_.cosets[origins_[c].coset];
        if (sub_.contains(d)) return {d, c};
      }
    }
    throw InvariantError("cannot locate " + h.str() + " . cell " + std::to_string(sigma) + " in the subgroup complex");
  }

 private:
  std::shared_ptr<const EquivariantPairComplex> base_;
  SubgroupDatum sub_;
  std::shared_ptr<const EquivariantPairComplex> complex_;
  std::vector<Origin> origins_;
  std::vector<std::vector<std::size_t>> over_;
};

/// Restriction of G-equivariant cochains to Delta'-equivariant ones:
/// f'(gamma_{j0}^{-1} sigma) = rho(gamma_{j0}^{-1}) f(sigma).
inline Matrix pullback_cochain_map(const SubgroupComplex& sc, const Representation& rep, const CochainSpace& source,
                                   const CochainSpace& target) {
  CochainMapBuilder b(target, source);
  for (std::size_t c : target.cells) {
    const auto& o = sc.origin(c);
    b.add(c, rep_evaluate(rep, sc.subgroup().cosets[o.coset].inverse()), o.base, true);
  }
  return b.take();
}

/// (tau f')(sigma) = sum_i rho(gamma_i) f'(gamma_i^{-1} sigma).  `cosets`
/// may replace the datum's representatives by any other left transversal.
inline Matrix transfer_cochain_map(const SubgroupComplex& sc, const Representation& rep, const CochainSpace& source,
                                   const CochainSpace& target, const std::vector<GroupElement>* cosets = nullptr) {
  const auto& gammas = cosets ? *cosets : sc.subgroup().cosets;
  CochainMapBuilder b(target, source);
  for (std::size_t sigma : target.cells)
    for (const auto& gamma : gammas) {
      auto [d, c] = sc.locate(gamma.inverse(), sigma);
      b.add(sigma, rep_evaluate(rep, gamma * d), c, true);
    }
  return b.take();
}

/// Matrix on cohomology bases of a map given at cochain level in each
/// degree.  The cochain map must commute with delta (checked between m and
/// m + 1 when `map(m + 1, .)` is available) and must send cocycles to cocycles.
inline Matrix induced_map(const Cohomology& src, const Cohomology& dst,
                          const std::function<Matrix(int, bool)>& map, int m, Variant v, int max_degree) {
  const bool relative = v != Variant::ordinary;
  Matrix mm = map(m, relative);
  if (mm.rows() != dst.space(m, relative).dim || mm.cols() != src.space(m, relative).dim)
    throw InvariantError("induced_map: cochain map has the wrong shape");
  if (m + 1 <= max_degree && m + 1 <= src.dimension()) {
    Matrix next = map(m + 1, relative);
    if (dst.coboundary(m, relative) * mm != next * src.coboundary(m, relative))
      throw InvariantError("cochain map does not commute with the coboundary in degree " + std::to_string(m));
  }
  if (m >= 1 && m - 1 <= max_degree) {
    Matrix prev = map(m - 1, relative);
    if (dst.coboundary(m - 1, relative) * prev != mm * src.coboundary(m - 1, relative))
      throw InvariantError("cochain map does not commute with the coboundary in degree " + std::to_string(m - 1));
  }
  const auto& basis = src.basis(m, v);
  Matrix out(dst.basis(m, v).dim(), basis.dim());
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    Vector image = mm * basis.representatives[j];
    Vector coords = v == Variant::interior ? dst.classify(m, v, dst.extend_by_zero(m, image)) : dst.classify(m, v, image);
    for (std::size_t i = 0; i < coords.size(); ++i) out(i, j) = coords[i];
  }
  return out;
}

inline Matrix pullback(const Cohomology& base, const SubgroupComplex& sc, const Cohomology& sub, int m, Variant v) {
  auto map = [&](int d, bool rel) {
    return pullback_cochain_map(sc, base.rep(), base.space(d, rel), sub.space(d, rel));
  };
  return induced_map(base, sub, map, m, v, base.dimension());
}

inline Matrix transfer(const Cohomology& base, const SubgroupComplex& sc, const Cohomology& sub, int m, Variant v,
                       const std::vector<GroupElement>* cosets = nullptr) {
  auto map = [&](int d, bool rel) {
    return transfer_cochain_map(sc, base.rep(), sub.space(d, rel), base.space(d, rel), cosets);
  };
  return induced_map(sub, base, map, m, v, base.dimension());
}

/// (T f)(c) = sum_i rho(gamma_i g) f(chi(gamma_i^{-1} c)).  In the relative
/// case chi must carry cells at infinity into the subcomplex at infinity.
inline Matrix hecke_cochain_map(const Cohomology& coh, const HeckeDatum& hd, int m, bool relative,
                                const std::vector<GroupElement>* cosets = nullptr) {
  if (m > hd.chi.max_degree) throw std::invalid_argument("comparison map is not available in degree " + std::to_string(m));
  const auto& k = coh.complex();
  const auto& sp = coh.space(m, relative);
  const auto& gammas = cosets ? *cosets : hd.comm.delta1.cosets;
  CochainMapBuilder b(sp, sp);
  for (std::size_t c : k.cells_of_dim(m)) {
    const bool at_inf = k.cell(c).at_infinity;
    for (const auto& gamma : gammas) {
      Chain image = hd.chi.image(gamma.inverse(), c);
      if (at_inf) {
        for (const auto& t : image)
          if (!k.cell(t.cell).at_infinity)
            throw InvariantError("comparison map sends cell " + std::to_string(c) + " at infinity off the boundary");
        if (relative) continue;
      }
      Matrix outer = rep_evaluate(coh.rep(), gamma * hd.comm.g);
      for (const auto& t : image) {
        if (t.coeff == 0) continue;
        Matrix coeff = outer * rep_evaluate(coh.rep(), t.attach);
        coeff *= t.coeff;
        b.add(c, coeff, t.cell, true);
      }
    }
  }
  return b.take();
}

/// T(g) on the chosen basis of the variant.  Interior matrices are computed
/// from compact lifts; the square restriction . T_c = T . restriction is
/// verified whenever interior or compact operators are requested.
inline Matrix hecke_operator(const Cohomology& coh, const HeckeDatum& hd, int m, Variant v,
                             const std::vector<GroupElement>* cosets = nullptr) {
  if (m > hd.chi.max_degree) {
    // the operator on a zero space needs no comparison map
    if (m >= 0 && m <= coh.dimension() && coh.basis(m, v).dim() == 0) return Matrix(0, 0);
    throw std::invalid_argument("comparison map is not available in degree " + std::to_string(m));
  }
  auto map = [&](int d, bool rel) { return hecke_cochain_map(coh, hd, d, rel, cosets); };
  const int top = std::min(hd.chi.max_degree, coh.dimension());
  Matrix t = induced_map(coh, coh, map, m, v, top);
  if (v != Variant::ordinary) {
    Matrix tc = v == Variant::compact ? t : induced_map(coh, coh, map, m, Variant::compact, top);
    Matrix to = induced_map(coh, coh, map, m, Variant::ordinary, top);
    if (coh.restriction(m) * tc != to * coh.restriction(m))
      throw InvariantError("restriction does not intertwine the compact and ordinary Hecke operators");
  }
  return t;
}

/// E^G read off the degree-0 classes at the first vertex orbit (a connected
/// complex identifies H^0 with E^G).
inline Subspace invariants_from_h0(const Cohomology& coh) {
  const auto& verts = coh.complex().cells_of_dim(0);
  if (verts.empty()) throw std::invalid_argument("complex has no vertices");
  const auto& sp = coh.space(0, false);
  Matrix rows(0, coh.rep().dim);
  for (const auto& r : coh.basis(0, Variant::ordinary).representatives)
    rows = vstack(rows, Matrix::from_rows({sp.value(r, verts.front())}, coh.rep().dim));
  return Subspace::from_spanning_rows(rows, coh.rep().dim);
}

/// Closed form of T(g) on E^G: sum_i rho(gamma_i g), in the basis of
/// `invariants`.
inline Matrix hecke_on_H0(const Representation& rep, const HeckeDatum& hd, const Subspace& invariants) {
  Matrix sum(rep.dim, rep.dim);
  for (const auto& gamma : hd.comm.delta1.cosets) sum += rep_evaluate(rep, gamma * hd.comm.g);
  Matrix out(invariants.dim(), invariants.dim());
  for (std::size_t j = 0; j < invariants.dim(); ++j) {
    Vector y = sum * invariants.basis.row(j);
    if (!invariants.contains(y)) throw InvariantError("sum of rho(gamma_i g) does not preserve E^G");
    Vector c = invariants.coordinates(y);
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verifications.

/// Chain law, twisted equivariance, stabilizer compatibility, augmentation
/// and preservation of the boundary, on the given translates and samples.
inline CheckResult verify_comparison(const EquivariantPairComplex& k, const HeckeDatum& hd,
                                     const std::vector<GroupElement>& translates,
                                     const std::vector<GroupElement>& delta_samples) {
  CheckResult res{"comparison_map", true, {}};
  const auto& chi = hd.chi;
  const GroupElement g_inv = hd.comm.g.inverse();
  auto image_of_chain = [&](const Chain& c) {
    Chain out;
    for (const auto& t : c)
      for (auto term : chi.image(t.attach, t.cell)) {
        term.coeff *= t.coeff;
        out.push_back(std::move(term));
      }
    return out;
  };
  std::vector<GroupElement> hs{k.identity()};
  hs.insert(hs.end(), translates.begin(), translates.end());
  try {
    for (int d = 0; d <= std::min(chi.max_degree, k.dimension()); ++d)
      for (std::size_t c : k.cells_of_dim(d))
        for (const auto& h : hs) {
          Chain img = chi.image(h, c);
          auto canon = canonical_chain(k, img);
          const std::string where = "cell " + std::to_string(c) + " (" + k.cell(c).label + ") translated by " + h.str();
          for (const auto& t : img)
            if (k.cell(t.cell).dim != d) res.fail(where + ": image has a term of the wrong dimension");
          if (d == 0 && augmentation(img) != 1) res.fail(where + ": augmentation " + to_string(augmentation(img)));
          if (d > 0) {
            auto lhs = canonical_chain(k, boundary(k, img));
            auto rhs = canonical_chain(k, image_of_chain(boundary(k, {{Scalar(1), h, c}})));
            if (lhs != rhs) res.fail(where + ": boundary of image " + describe(k, lhs) + " != image of boundary " +
                                     describe(k, rhs));
          }
          if (k.cell(c).at_infinity)
            for (const auto& t : img)
              if (!k.cell(t.cell).at_infinity) res.fail(where + ": image leaves the boundary");
          for (const auto& s : k.cell(c).stabilizer)
            if (canonical_chain(k, chi.image(h * s, c)) != canon) res.fail(where + ": not constant on the stabilizer");
          for (const auto& dp : delta_samples) {
            auto lhs = canonical_chain(k, chi.image(dp * h, c));
            auto rhs = canonical_chain(k, translate(g_inv * dp * hd.comm.g, img));
            if (lhs != rhs) res.fail(where + ": twisted equivariance fails for " + dp.str());
          }
        }
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

/// tau . pi'^* = [G:Delta'] in every degree, tau = [G:Delta'] on H^0 with
/// trivial coefficients, integral . tau = integral on top compact classes,
/// and tau(b cup pi'^* c) = tau(b) cup c on basis pairs.
inline CheckResult verify_transfer_identities(const Cohomology& base, const SubgroupComplex& sc, const Cohomology& sub) {
  CheckResult res{"transfer", true, {}};
  const auto& k = base.complex();
  const auto& kp = sc.complex();
  const int n = k.dimension();
  const Scalar index = static_cast<long>(sc.subgroup().index);
  try {
    for (int m = 0; m <= n; ++m)
      for (Variant v : {Variant::ordinary, Variant::compact, Variant::interior}) {
        Matrix t = transfer(base, sc, sub, m, v);
        Matrix p = pullback(base, sc, sub, m, v);
        Matrix expect = Matrix::identity(base.basis(m, v).dim()) * index;
        if (t * p != expect)
          res.fail(std::string("tau . pi* != index on ") + variant_name(v) + " H^" + std::to_string(m));
        else
          res.note(std::string("tau . pi* = ") + to_string(index) + " on " + variant_name(v) + " H^" +
                   std::to_string(m) + " (dim " + std::to_string(expect.rows()) + ")");
      }

    // Trivial coefficients.
    const Representation triv = trivial_rep();
    Cohomology base_k(base.complex_ptr(), triv);
    Cohomology sub_k(sc.complex_ptr(), triv);
    {
      const auto& s0 = sub_k.space(0, false);
      Vector ones(s0.dim, Scalar(1));
      Vector image = transfer_cochain_map(sc, triv, s0, base_k.space(0, false)) * ones;
      if (image != Vector(base_k.space(0, false).dim, index))
        res.fail("tau on H^0 with trivial coefficients is not multiplication by the index");
      else
        res.note("tau(1) = " + to_string(index) + " on H^0");
    }
    {
      Matrix tn = transfer_cochain_map(sc, triv, sub_k.space(n, true), base_k.space(n, true));
      for (const auto& u : sub_k.basis(n, Variant::compact).representatives) {
        Scalar lhs = integrate(k, tn * u), rhs = integrate(kp, u);
        if (lhs != rhs) res.fail("integral of tau(u) = " + to_string(lhs) + " but integral of u = " + to_string(rhs));
        else res.note("integral preserved: " + to_string(lhs));
      }
    }

    // Projection formula, at cochain level, on basis pairs.
    const Representation dual = dual_rep(base.rep());
    Cohomology base_dual(base.complex_ptr(), dual);
    std::size_t pairs = 0;
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) {
        Matrix tau_pq = transfer_cochain_map(sc, triv, sub_k.space(p + q, true), base_k.space(p + q, true));
        Matrix tau_p = transfer_cochain_map(sc, base.rep(), sub.space(p, true), base.space(p, true));
        Matrix pi_q = pullback_cochain_map(sc, dual, base_dual.space(q, false), cochain_space(kp, dual, q, false));
        const auto sub_dual_q = cochain_space(kp, dual, q, false);
        for (const auto& b : sub.basis(p, Variant::compact).representatives)
          for (const auto& c : base_dual.basis(q, Variant::ordinary).representatives) {
            Vector lhs = tau_pq * cup_product(kp, base.rep(), dual, sub.space(p, true), b, sub_dual_q, pi_q * c);
            Vector rhs = cup_product(k, base.rep(), dual, base.space(p, true), tau_p * b, base_dual.space(q, false), c);
            ++pairs;
            if (lhs != rhs) res.fail("projection formula fails for (p, q) = (" + std::to_string(p) + ", " +
                                     std::to_string(q) + ")");
          }
      }
    res.note("projection formula checked on " + std::to_string(pairs) + " basis pairs");
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

/// Fact: on H^0 the operator is sum_i rho(gamma_i g).
inline CheckResult verify_hecke_h0(const Cohomology& coh, const HeckeDatum& hd) {
  CheckResult res{"hecke_h0", true, {}};
  try {
    Subspace inv = invariants_from_h0(coh);
    const auto& sp = coh.space(0, false);
    const auto& reps = coh.basis(0, Variant::ordinary).representatives;
    if (inv.dim() != reps.size()) {
      res.fail("H^0 classes are not determined by their value at one vertex");
      return res;
    }
    Matrix closed = hecke_on_H0(coh.rep(), hd, inv);
    // change of basis from invariants coordinates to H^0 representatives
    Matrix to_inv(reps.size(), reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) {
      Vector c = inv.coordinates(sp.value(reps[j], coh.complex().cells_of_dim(0).front()));
      for (std::size_t i = 0; i < c.size(); ++i) to_inv(i, j) = c[i];
    }
    Matrix closed_h0 = inverse(to_inv) * closed * to_inv;
    Matrix full = hecke_operator(coh, hd, 0, Variant::ordinary);
    if (closed_h0 != full)
      res.fail("closed form on H^0 differs from the composite operator");
    else
      res.note("T(g) on H^0 has dimension " + std::to_string(full.rows()) + (full.rows() == 1 ? " and value " + to_string(full(0, 0)) : ""));
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

/// B(T(g) u, v) = B(u, T(g^{-1}) v) on interior classes: T^t B = B T'.
inline CheckResult verify_adjointness(const Cohomology& e, const Cohomology& dual, const HeckeDatum& hd,
                                      const HeckeDatum& hd_inverse, int m) {
  CheckResult res{"adjointness", true, {}};
  const int n = e.dimension();
  try {
    Matrix b = pairing_matrix(e, dual, m, PairingVariant::interior).matrix;
    Matrix t = hecke_operator(e, hd, m, Variant::interior);
    Matrix tp = hecke_operator(dual, hd_inverse, n - m, Variant::interior);
    Matrix lhs = t.transpose() * b, rhs = b * tp;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j)
        if (lhs(i, j) != rhs(i, j))
          res.fail("m=" + std::to_string(m) + " (" + std::to_string(i) + "," + std::to_string(j) + "): B(Tu,v) = " +
                   to_string(lhs(i, j)) + ", B(u,T'v) = " + to_string(rhs(i, j)));
    if (res.pass) res.note("m=" + std::to_string(m) + ": identity holds on a " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()) + " pairing");
  } catch (const std::exception& ex) {
    res.fail(std::string("exception: ") + ex.what());
  }
  return res;
}

/// T(gamma g gamma') computed from independently rebuilt data equals T(g).
inline CheckResult verify_double_coset(const Cohomology& coh, const HeckeDatum& hd, const HeckeDatum& rebuilt,
                                       const std::vector<int>& degrees) {
  CheckResult res{"double_coset", true, {}};
  try {
    for (int m : degrees)
      for (Variant v : {Variant::ordinary, Variant::compact, Variant::interior}) {
        if (hecke_operator(coh, hd, m, v) != hecke_operator(coh, rebuilt, m, v))
          res.fail(std::string("T differs on ") + variant_name(v) + " H^" + std::to_string(m) + " for " +
                   rebuilt.comm.g.str());
      }
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

/// T(g) and tau are unchanged when gamma_i is replaced by gamma_i delta_i
/// with random delta_i in the respective subgroups.
inline CheckResult verify_coset_independence(const Cohomology& coh, const HeckeDatum& hd,
                                             const std::function<GroupElement()>& sample_hecke_delta,
                                             const SubgroupComplex& sc, const Cohomology& sub,
                                             const std::function<GroupElement()>& sample_sub_delta,
                                             const std::vector<int>& degrees, int trials) {
  CheckResult res{"coset_independence", true, {}};
  const Variant variants[] = {Variant::ordinary, Variant::compact, Variant::interior};
  try {
    std::vector<Matrix> ref_t, ref_tau;
    for (int m : degrees)
      for (Variant v : variants) {
        ref_t.push_back(hecke_operator(coh, hd, m, v));
        ref_tau.push_back(transfer(coh, sc, sub, m, v));
      }
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<GroupElement> moved_t, moved_tau;
      for (const auto& gamma : hd.comm.delta1.cosets) moved_t.push_back(gamma * sample_hecke_delta());
      for (const auto& gamma : sc.subgroup().cosets) moved_tau.push_back(gamma * sample_sub_delta());
      std::size_t at = 0;
      for (int m : degrees)
        for (Variant v : variants) {
          if (hecke_operator(coh, hd, m, v, &moved_t) != ref_t[at])
            res.fail("trial " + std::to_string(trial) + ": T changes on " + variant_name(v) + " H^" + std::to_string(m));
          if (transfer(coh, sc, sub, m, v, &moved_tau) != ref_tau[at])
            res.fail("trial " + std::to_string(trial) + ": tau changes on " + variant_name(v) + " H^" + std::to_string(m));
          ++at;
        }
    }
    if (res.pass) res.note(std::to_string(trials) + " trials, T and tau unchanged");
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

}  // namespace dualis
