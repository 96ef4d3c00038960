#include <catch_amalgamated.hpp>

#include "dualis/models/modular.hpp"
#include "dualis/models/rotation.hpp"
#include "dualis/models/torus.hpp"

using namespace dualis;

namespace {

Matrix rot90() { return Matrix{{0, -1}, {1, 0}}; }

}  // namespace

TEST_CASE("Koszul oracle on small cases") {
  // trivial Z: H^0 = H^1 = Q
  CHECK(koszul_cohomology({Matrix{{1}}}) == std::vector<std::size_t>{1, 1});
  // nontrivial character kills everything
  CHECK(koszul_cohomology({Matrix{{2}}}) == std::vector<std::size_t>{0, 0});
  // trivial Z^2: binomial coefficients
  CHECK(koszul_cohomology({Matrix{{1}}, Matrix{{1}}}) == std::vector<std::size_t>{1, 2, 1});
  // unipotent block: invariants and coinvariants both one-dimensional
  CHECK(koszul_cohomology({Matrix{{1, 1}, {0, 1}}}) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("torus cohomology agrees with the Koszul complex") {
  std::vector<TorusRepData> reps{
      {{Matrix{{1}}}, {}, "trivial circle"},
      {{Matrix{{-1}}}, {}, "sign circle"},
      {{Matrix{{1}}, Matrix{{1}}}, {}, "trivial"},
      {{Matrix{{1}}, Matrix{{3}}}, {}, "character (1, 3)"},
      {{Matrix{{-1}}, Matrix{{1}}}, {}, "character (-1, 1)"},
      {{Matrix{{1, 1}, {0, 1}}, Matrix::identity(2)}, {}, "unipotent"},
      {{rot90(), Matrix::identity(2)}, {}, "rotation in one direction"},
      {{Matrix{{1}}, Matrix{{1}}, Matrix{{1}}}, {}, "trivial 3-torus"},
      {{Matrix{{1}}, Matrix{{-1}}, Matrix{{1}}}, {}, "3-torus sign"},
  };
  for (const auto& d : reps) {
    auto m = build_torus(d.translations.size(), d);
    Cohomology c(m.complex, m.rep);
    INFO(d.name);
    CHECK(c.dims(Variant::ordinary) == koszul_cohomology(d.translations));
    // compact quotient: all three variants agree
    CHECK(c.dims(Variant::compact) == c.dims(Variant::ordinary));
    CHECK(c.dims(Variant::interior) == c.dims(Variant::ordinary));
  }
}

TEST_CASE("finite rotation disks agree with the invariants oracle") {
  const std::vector<std::pair<std::size_t, std::vector<std::string>>> cases{
      {2, {"trivial", "sign", "regular", "trivial+sign"}},
      {3, {"trivial", "rotation", "regular"}},
      {4, {"trivial", "rotation", "regular", "sign"}},
      {6, {"trivial", "rotation", "regular", "trivial+rotation"}},
  };
  for (const auto& [r, names] : cases)
    for (const auto& name : names) {
      auto rep = named_cyclic_representation(r, name);
      auto m = build_finite_rotation(r, rep);
      Cohomology c(m.complex, m.rep);
      INFO("r = " << r << ", " << name);
      CHECK(c.dims(Variant::compact) == finite_quotient_oracle(r, rep));
      CHECK(c.dims(Variant::interior) == std::vector<std::size_t>{0, 0, 0});
    }
}

TEST_CASE("genus oracle on classical levels") {
  auto g1 = genus_oracle(1);
  CHECK(g1.index == 1);
  CHECK(g1.cusps == 1);
  CHECK(g1.elliptic2 == 1);
  CHECK(g1.elliptic3 == 1);
  CHECK(g1.genus == 0);
  auto g11 = genus_oracle(11);
  CHECK(g11.index == 12);
  CHECK(g11.cusps == 2);
  CHECK(g11.elliptic2 == 0);
  CHECK(g11.elliptic3 == 0);
  CHECK(g11.genus == 1);
  CHECK(genus_oracle(22).index == 36);
  CHECK(genus_oracle(22).genus == 2);
  CHECK(genus_oracle(23).genus == 2);
  CHECK(genus_oracle(37).genus == 2);
  CHECK(genus_oracle(13).elliptic2 == 2);
  CHECK(genus_oracle(13).elliptic3 == 2);
  CHECK(cusp_form_dimension(1, 12) == 1);
  CHECK(cusp_form_dimension(1, 10) == 0);
  CHECK(cusp_form_dimension(11, 4) == 2);
  CHECK(cusp_form_dimension(5, 4) == 1);
}

TEST_CASE("point counts on the level 11 curve") {
  // y^2 + y = x^3 - x^2 - 10x - 20
  auto a = [](long p) { return p + 1 - count_points(0, -1, 1, -10, -20, p); };
  CHECK(count_points(0, -1, 1, -10, -20, 2) == 5);
  CHECK(a(2) == -2);
  CHECK(a(3) == -1);
  CHECK(a(5) == 1);
  CHECK(a(7) == -2);
}

TEST_CASE("P^1(Z/N) has the index of Gamma_0(N)") {
  for (long n = 1; n <= 30; ++n) {
    ProjectiveLine line(n);
    CHECK(static_cast<long>(line.size()) == genus_oracle(n).index);
    for (std::size_t x = 0; x < line.size(); ++x) {
      auto m = line.lift(x);
      CHECK(determinant(m.geom()) == 1);
      CHECK(line.of_bottom_row(m) == x);
    }
  }
}

TEST_CASE("Gamma_0(N) complexes match the classical counts") {
  for (long n : {1L, 2L, 3L, 4L, 6L, 9L, 11L, 13L, 14L, 15L, 22L, 30L}) {
    Gamma0Complex gc(n);
    auto k = gc.complex();
    auto oracle = genus_oracle(n);
    INFO("N = " << n);
    CHECK(validate_complex(*k, weight_representation(2)).pass);
    CHECK(static_cast<long>(k->cells_of_dim(2).size()) == 4 * oracle.index);
    CHECK(static_cast<long>(gc.boundary_components()) == oracle.cusps);
    long rho_fixed = 0, i_fixed = 0;
    for (const auto& c : k->cells()) {
      if (c.dim == 0 && c.levels[0] == 0 && c.stabilizer.size() == 3) ++rho_fixed;
      if (c.dim == 0 && c.levels[0] == 1 && c.stabilizer.size() == 2) ++i_fixed;
    }
    CHECK(rho_fixed == oracle.elliptic3);
    CHECK(i_fixed == oracle.elliptic2);
  }
}

TEST_CASE("interior cohomology matches cusp form dimensions") {
  for (long k : {2L, 4L})
    for (long n : {1L, 5L, 11L, 14L, 15L}) {
      auto m = build_modular(n, k);
      Cohomology c(m.complex, m.rep);
      INFO("N = " << n << ", k = " << k);
      auto dims = c.dims(Variant::interior);
      CHECK(dims[0] == 0);
      CHECK(static_cast<long>(dims[1]) == 2 * cusp_form_dimension(n, k));
      CHECK(dims[2] == 0);
    }
}

TEST_CASE("Gamma_0(11) Hecke eigenvalues match point counts") {
  auto m = build_modular(11, 2);
  Cohomology c(m.complex, m.rep);
  for (long p : {2L, 3L, 5L, 7L}) {
    long ap = p + 1 - count_points(0, -1, 1, -10, -20, p);
    auto hd = m.hecke(GroupElement(Matrix{{1, 0}, {0, p}}, true));
    CHECK(hd.comm.delta1.index == static_cast<std::size_t>(p + 1));
    Matrix t = hecke_operator(c, hd, 1, Variant::interior);
    // (x - a_p)^2
    CHECK(charpoly(t) == std::vector<Scalar>{1, -2 * ap, ap * ap});
  }
  // U_11 acts by the sign +1 on the newform of level 11
  auto u = m.hecke(GroupElement(Matrix{{1, 0}, {0, 11}}, true));
  CHECK(u.comm.delta1.index == 11);
  CHECK(charpoly(hecke_operator(c, u, 1, Variant::interior)) == std::vector<Scalar>{1, -2, 1});
}

TEST_CASE("modular comparison maps satisfy their axioms") {
  auto m = build_modular(11, 2);
  for (const auto& g : {GroupElement(Matrix{{1, 0}, {0, 2}}, true), GroupElement(Matrix{{2, 0}, {0, 1}}, true),
                        GroupElement(Matrix{{1, 1}, {0, 3}}, true)}) {
    auto hd = m.hecke(g);
    std::mt19937_64 rng(11);
    std::vector<GroupElement> hs{m.complex->identity()}, ds;
    for (int i = 0; i < 3; ++i) hs.push_back(m.sample(rng));
    for (int i = 0; i < 3; ++i) ds.push_back(sample_subgroup(m, hd.comm.delta1.contains, rng));
    auto r = verify_comparison(*m.complex, hd, hs, ds);
    for (const auto& w : r.witnesses) INFO(w);
    CHECK(r.pass);
    std::vector<GroupElement> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(m.sample(rng));
    CHECK(verify_coset_decomposition(hd.comm.delta1, xs).pass);
    CHECK(verify_coset_decomposition(hd.comm.delta2, xs).pass);
  }
}

TEST_CASE("Gamma_0(22) inside Gamma_0(11)") {
  auto m = build_modular(11, 2);
  auto hd = m.hecke(GroupElement(Matrix{{1, 0}, {0, 2}}, true));
  // Delta' for diag(1, 2) is Gamma_0(22); Delta'' is Gamma_0(11) with b even
  CHECK(hd.comm.delta1.index == 3);
  CHECK(hd.comm.delta1.contains(GroupElement(Matrix{{1, 0}, {22, 1}}, true)));
  CHECK(hd.comm.delta1.contains(sl2_T(1)));
  CHECK_FALSE(hd.comm.delta1.contains(GroupElement(Matrix{{1, 0}, {11, 1}}, true)));
  CHECK(hd.comm.delta2.contains(GroupElement(Matrix{{1, 0}, {11, 1}}, true)));
  CHECK_FALSE(hd.comm.delta2.contains(sl2_T(1)));
  SubgroupComplex sc(m.complex, hd.comm.delta1);
  CHECK(sc.complex().cells_of_dim(2).size() == 3 * m.complex->cells_of_dim(2).size());
  Cohomology base(m.complex, m.rep), sub(sc.complex_ptr(), m.rep);
  // the quotient is the modular curve of level 22 (genus 2, 4 cusps)
  CHECK(sub.dims(Variant::interior) == std::vector<std::size_t>{0, 4, 0});
  CHECK(pullback(base, sc, sub, 0, Variant::ordinary) == Matrix{{1}});
  auto r = verify_transfer_identities(base, sc, sub);
  for (const auto& w : r.witnesses) INFO(w);
  CHECK(r.pass);
}

TEST_CASE("modular Hecke data reject unsupported elements") {
  auto m = build_modular(11, 2);
  CHECK_THROWS(m.hecke(GroupElement(Matrix{{1, 0}, {0, 4}}, true)));
  CHECK_THROWS(m.hecke(GroupElement(Matrix{{1, Scalar(1, 2)}, {0, 3}}, true)));
  CHECK_THROWS(build_modular(0, 2));
  CHECK_THROWS(build_modular(11, 3));
}
