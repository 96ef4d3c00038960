#include <catch_amalgamated.hpp>

#include "dualis/io.hpp"

#include <cstdlib>

using namespace dualis;

TEST_CASE("rationals serialize as p/q strings") {
  CHECK(scalar_to_json(Scalar(3)) == "3/1");
  CHECK(scalar_to_json(Scalar(-2, 6)) == "-1/3");
  CHECK(scalar_from_json("-1/3") == Scalar(-1, 3));
  CHECK(scalar_from_json(json(7)) == 7);
  CHECK_THROWS_AS(scalar_from_json(json(0.5)), SpecError);
  CHECK_THROWS_AS(scalar_from_json("x/2"), SpecError);
  Matrix m{{1, Scalar(1, 2)}, {0, -4}};
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK(matrix_from_json(json::array(), 3).cols() == 3);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"J([["1","2"],["3"]])J")), SpecError);
}

TEST_CASE("complex documents round-trip exactly") {
  std::vector<Model> models{build_torus(2, {{Matrix{{1}}, Matrix{{1}}}, {}, "trivial"}),
                            build_finite_rotation(6, named_cyclic_representation(6, "regular")),
                            build_modular(11, 2)};
  for (const auto& m : models) {
    json doc = complex_to_json(*m.complex);
    auto back = complex_from_json(doc, m.complex->group());
    CHECK(complex_to_json(back).dump() == doc.dump());
    CHECK(back.size() == m.complex->size());
    CHECK(validate_complex(back, m.rep).pass);
    // reparse from text
    auto again = complex_from_json(json::parse(doc.dump()), m.complex->group());
    CHECK(complex_to_json(again) == doc);
  }
}

TEST_CASE("malformed complex documents are rejected") {
  auto m = build_torus(1, {{Matrix{{1}}}, {}, "trivial"});
  json doc = complex_to_json(*m.complex);
  doc["cells"][0]["id"] = 5;
  CHECK_THROWS_AS(complex_from_json(doc, m.complex->group()), SpecError);
  json missing = complex_to_json(*m.complex);
  missing["cells"][1].erase("faces");
  CHECK_THROWS_AS(complex_from_json(missing, m.complex->group()), SpecError);
}

TEST_CASE("model specs are validated") {
  auto spec = [](const char* text) { return parse_model_spec(json::parse(text)); };
  CHECK_THROWS_AS(spec(R"J({"n": 2})J"), SpecError);
  CHECK_THROWS_AS(spec(R"J({"family": "sphere"})J"), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "torus", "n": 4})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "torus", "n": 2, "translations": [[["1"]]]})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "finite_rotation", "order": 13})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "finite_rotation", "order": 3, "rep": "sign"})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "modular", "level": 11, "weight": 3})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "modular", "level": 0, "weight": 2})J")), SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "modular", "level": 11, "weight": 2,
                                       "hecke_elements": [[["1","0"],["0","4"]]]})J")),
                  SpecError);
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "modular", "level": 11, "weight": 2,
                                       "hecke_elements": [[["1","0"],["1","2"]]]})J")),
                  SpecError);
  // non-commuting translations
  CHECK_THROWS_AS(build_model(spec(R"J({"family": "torus", "n": 2,
                                       "translations": [[["1","1"],["0","1"]], [["1","0"],["1","1"]]]})J")),
                  SpecError);

  auto ok = build_model(spec(R"J({"family": "modular", "level": 11, "weight": 2, "id": "X0(11)",
                                 "hecke_elements": [[["1","0"],["0","2"]]]})J"));
  CHECK(ok.id == "X0(11)");
  CHECK(ok.hecke_elements.size() == 1);
  auto rot = build_model(spec(R"J({"family": "finite_rotation", "order": 3, "rep": {"generator": [["0","-1"],["1","-1"]]}})J"));
  CHECK(rot.rep.dim == 2);
}

TEST_CASE("the cell cap is read from the environment") {
  auto s = parse_model_spec(json::parse(R"J({"family": "modular", "level": 30, "weight": 2})J"));
  ::setenv("DUALIS_MAX_CELLS", "100", 1);
  CHECK_THROWS_AS(build_model(s), SpecError);
  ::setenv("DUALIS_MAX_CELLS", "zero", 1);
  CHECK_THROWS_AS(build_model(s), SpecError);
  ::unsetenv("DUALIS_MAX_CELLS");
  CHECK_NOTHROW(build_model(s));
}

TEST_CASE("run reports round-trip") {
  RunReport r;
  r.model = "m";
  r.family = "torus";
  r.seed = 42;
  r.dims["E"]["ordinary"] = {1, 2, 1};
  r.pairings.push_back({1, PairingVariant::interior, Matrix{{0, 1}, {Scalar(-1, 2), 0}}});
  r.pairings.push_back({0, PairingVariant::compact_ordinary, Matrix(0, 0)});
  r.hecke.push_back({Matrix{{1, 0}, {0, 2}}, 1, Variant::interior, Matrix{{-2, 0}, {0, -2}}, {1, 4, 4}});
  r.checks.push_back({"duality", false, {"rank 1 of 2"}});
  json j = report_to_json(r);
  RunReport back = report_from_json(json::parse(j.dump()));
  CHECK(report_to_json(back).dump() == j.dump());
  CHECK(back.pairings[0].matrix == r.pairings[0].matrix);
  CHECK(back.pairings[1].matrix.rows() == 0);
  CHECK(back.hecke[0].charpoly == std::vector<Scalar>{1, 4, 4});
  CHECK_FALSE(back.checks[0].pass);
}

TEST_CASE("complex family swaps in supplied cells") {
  auto base = R"J({"family": "torus", "n": 1, "translations": [[["1"]]]})J"_json;
  auto m = build_model(parse_model_spec(base));
  json spec{{"family", "complex"}, {"base", base}, {"complex", complex_to_json(*m.complex)}};
  auto c = build_model(parse_model_spec(spec));
  CHECK(c.family == "complex");
  CHECK(c.complex->size() == m.complex->size());
  CHECK(validate_complex(*c.complex, c.rep).pass);
  CHECK_THROWS_AS(c.hecke(m.complex->identity()), SpecError);
}
