#include <catch_amalgamated.hpp>

#include "dualis/models/torus.hpp"

using namespace dualis;

namespace {

GroupElement scale1(Scalar a, Scalar shift = 0) { return affine_element(Matrix{{a}}, {shift}); }

Model circle_with(Scalar lambda) {
  // Z x| <2>, t -> 1, doubling -> lambda
  TorusRepData d{{Matrix{{1}}}, {{Matrix{{2}}, Matrix{{lambda}}}}, "lambda=" + to_string(lambda)};
  return build_torus(1, d, {scale1(2)});
}

std::vector<GroupElement> samples(const Model& m, const std::function<bool(const GroupElement&)>& in, int count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> out;
  for (int i = 0; i < count; ++i) out.push_back(sample_subgroup(m, in, rng));
  return out;
}

}  // namespace

TEST_CASE("subgroup complex of the identity subgroup reproduces the complex") {
  auto m = circle_with(1);
  SubgroupDatum whole{m.complex->group().contains, 1, {m.complex->identity()}};
  SubgroupComplex sc(m.complex, whole);
  CHECK(sc.complex().size() == m.complex->size());
  Cohomology base(m.complex, m.rep), sub(sc.complex_ptr(), m.rep);
  for (int k = 0; k <= 1; ++k)
    for (Variant v : {Variant::ordinary, Variant::compact, Variant::interior}) {
      CHECK(pullback(base, sc, sub, k, v) == Matrix::identity(base.basis(k, v).dim()));
      CHECK(transfer(base, sc, sub, k, v) == Matrix::identity(base.basis(k, v).dim()));
    }
}

TEST_CASE("circle double cover") {
  auto m = circle_with(1);
  auto hd = m.hecke(scale1(2));
  CHECK(hd.comm.delta1.index == 2);
  CHECK(hd.comm.delta1.cosets[1] == affine_element(Matrix{{1}}, {1}));
  SubgroupComplex sc(m.complex, hd.comm.delta1);
  CHECK(sc.complex().cells_of_dim(0).size() == 2);
  CHECK(sc.complex().cells_of_dim(1).size() == 2);
  CHECK(validate_complex(sc.complex(), m.rep).pass);
  Cohomology base(m.complex, m.rep), sub(sc.complex_ptr(), m.rep);
  CHECK(sub.dims(Variant::ordinary) == std::vector<std::size_t>{1, 1});

  // Pullback on H^1 sends the edge class to the sum of both edges: with the
  // chosen bases this is an invertible 1x1 matrix; tau . pi* = 2.
  for (int k = 0; k <= 1; ++k) {
    Matrix p = pullback(base, sc, sub, k, Variant::ordinary);
    Matrix t = transfer(base, sc, sub, k, Variant::ordinary);
    CHECK(t * p == Matrix{{2}});
  }
  // Degree 1 pullback of the edge indicator is the sum of the two lifts.
  Vector edge{1};
  Vector lifted = pullback_cochain_map(sc, m.rep, base.space(1, false), sub.space(1, false)) * edge;
  CHECK(lifted == Vector{1, 1});

  auto r = verify_transfer_identities(base, sc, sub);
  CHECK(r.pass);
  for (const auto& w : r.witnesses) INFO(w);
}

TEST_CASE("circle doubling Hecke operators") {
  auto m = circle_with(1);
  Cohomology c(m.complex, m.rep);
  auto hd = m.hecke(scale1(2));
  CHECK(hecke_operator(c, hd, 0, Variant::ordinary) == Matrix{{2}});
  CHECK(hecke_operator(c, hd, 1, Variant::ordinary) == Matrix{{1}});
  auto hd_inv = m.hecke(scale1(Scalar(1, 2)));
  CHECK(hd_inv.comm.delta1.index == 1);
  CHECK(hecke_operator(c, hd_inv, 0, Variant::ordinary) == Matrix{{1}});
  CHECK(hecke_operator(c, hd_inv, 1, Variant::ordinary) == Matrix{{2}});

  auto id = m.hecke(scale1(1));
  for (int k = 0; k <= 1; ++k)
    for (Variant v : {Variant::ordinary, Variant::compact, Variant::interior})
      CHECK(hecke_operator(c, id, k, v) == Matrix::identity(1));
}

TEST_CASE("closed form on H^0") {
  auto m = circle_with(3);
  Cohomology c(m.complex, m.rep);
  auto hd = m.hecke(scale1(2));
  CHECK(hecke_on_H0(m.rep, hd, invariants_from_h0(c)) == Matrix{{6}});
  CHECK(verify_hecke_h0(c, hd).pass);
  CHECK(hecke_operator(c, hd, 0, Variant::ordinary) == Matrix{{6}});
}

TEST_CASE("comparison maps satisfy their axioms") {
  std::vector<std::pair<Model, GroupElement>> cases;
  cases.push_back({circle_with(1), scale1(2)});
  cases.push_back({circle_with(1), scale1(Scalar(1, 2))});
  cases.push_back({circle_with(1), scale1(3, 1)});
  {
    TorusRepData d{{Matrix::identity(1), Matrix::identity(1)}, {}, "trivial"};
    auto m2 = build_torus(2, d);
    cases.push_back({m2, affine_element(Matrix{{1, 1}, {-1, 1}})});
    cases.push_back({m2, affine_element(Matrix{{2, 1}, {1, 3}}, {1, -2})});
    cases.push_back({m2, affine_element(Matrix{{2, 1}, {1, 3}}).inverse()});
  }
  {
    TorusRepData d{{Matrix::identity(1), Matrix::identity(1), Matrix::identity(1)}, {}, "trivial"};
    auto m3 = build_torus(3, d);
    cases.push_back({m3, affine_element(Matrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})});
  }
  for (auto& [m, g] : cases) {
    auto hd = m.hecke(g);
    std::mt19937_64 rng(5);
    std::vector<GroupElement> hs;
    for (int i = 0; i < 3; ++i) hs.push_back(m.sample(rng));
    auto ds = samples(m, hd.comm.delta1.contains, 3, 8);
    auto r = verify_comparison(*m.complex, hd, hs, ds);
    for (const auto& w : r.witnesses) INFO(w);
    CHECK(r.pass);
    CHECK(verify_coset_decomposition(hd.comm.delta1, samples(m, m.complex->group().contains, 50, 3)).pass);
    // Delta'' = g^{-1} Delta' g
    for (const auto& d : samples(m, hd.comm.delta2.contains, 10, 4))
      CHECK(hd.comm.delta1.contains(g * d * g.inverse()));
  }
}

TEST_CASE("Hecke operators on the 2-torus") {
  TorusRepData d{{Matrix::identity(1), Matrix::identity(1)}, {}, "trivial"};
  auto m = build_torus(2, d);
  Cohomology c(m.complex, m.rep), cd(m.complex, dual_rep(m.rep));
  GroupElement g = affine_element(Matrix{{2, 1}, {1, 3}});
  auto hd = m.hecke(g);
  CHECK(hd.comm.delta1.index == 5);
  // H^0: multiplication by the index; H^2: by 1 (degree of g^{-1} times index)
  CHECK(hecke_operator(c, hd, 0, Variant::ordinary) == Matrix{{5}});
  CHECK(hecke_operator(c, hd, 2, Variant::ordinary) == Matrix{{1}});
  // H^1 = Hom(Z^2, Q): trace of T is the trace of the integral matrix
  Matrix t1 = hecke_operator(c, hd, 1, Variant::ordinary);
  auto poly = charpoly(t1);
  CHECK(poly == std::vector<Scalar>{1, -5, 5});
  auto hd_inv = m.hecke(g.inverse());
  for (int k = 0; k <= 2; ++k) CHECK(verify_adjointness(c, cd, hd, hd_inv, k).pass);
}

TEST_CASE("adjointness, double cosets and coset independence on the circle") {
  auto m = circle_with(1);
  auto dual = dual_rep(m.rep);
  Cohomology c(m.complex, m.rep), cd(m.complex, dual);
  auto hd = m.hecke(scale1(2));
  auto hd_inv = m.hecke(scale1(Scalar(1, 2)));
  for (int k = 0; k <= 1; ++k) {
    auto r = verify_adjointness(c, cd, hd, hd_inv, k);
    for (const auto& w : r.witnesses) INFO(w);
    CHECK(r.pass);
  }
  auto t1 = affine_element(Matrix{{1}}, {1});
  auto rebuilt = m.hecke(t1 * scale1(2) * t1);
  CHECK(verify_double_coset(c, hd, rebuilt, {0, 1}).pass);

  std::mt19937_64 rng(1);
  SubgroupComplex sc(m.complex, hd.comm.delta1);
  Cohomology sub(sc.complex_ptr(), m.rep);
  auto draw = [&]() { return sample_subgroup(m, hd.comm.delta1.contains, rng); };
  auto r = verify_coset_independence(c, hd, draw, sc, sub, draw, {0, 1}, 10);
  CHECK(r.pass);
}

TEST_CASE("twisted coefficients on the circle") {
  auto m = circle_with(5);
  Cohomology c(m.complex, m.rep), cd(m.complex, dual_rep(m.rep));
  auto hd = m.hecke(scale1(2));
  auto hd_inv = m.hecke(scale1(Scalar(1, 2)));
  CHECK(hecke_operator(c, hd, 0, Variant::ordinary) == Matrix{{10}});
  CHECK(hecke_operator(c, hd, 1, Variant::ordinary) == Matrix{{5}});
  CHECK(verify_adjointness(c, cd, hd, hd_inv, 0).pass);
  CHECK(verify_adjointness(c, cd, hd, hd_inv, 1).pass);
}
