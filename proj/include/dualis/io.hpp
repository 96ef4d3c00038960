#pragma once
// JSON documents: exact rationals as "p/q" strings, the complex format,
// model specifications and run reports.

#include "dualis/duality.hpp"
#include "dualis/models/modular.hpp"
#include "dualis/models/rotation.hpp"
#include "dualis/models/torus.hpp"

#include <json.hpp>

#include <cstdlib>

namespace dualis {

using json = nlohmann::json;

/// A model specification that cannot be accepted (exit code 2).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars and matrices

inline json scalar_to_json(const Scalar& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const std::exception&) {
      throw SpecError("not a rational: " + j.dump());
    }
  }
  throw SpecError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw SpecError("expected an array of rationals, got " + j.dump());
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

/// Rows of rationals; a matrix with zero rows is `[]` and takes `cols` from
/// the caller when known.
inline Matrix matrix_from_json(const json& j, std::size_t cols_if_empty = 0) {
  if (!j.is_array()) throw SpecError("expected a matrix (array of rows), got " + j.dump());
  if (j.empty()) return Matrix(0, cols_if_empty);
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw SpecError("ragged matrix: " + j.dump());
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Complexes

inline json complex_to_json(const EquivariantPairComplex& k) {
  json cells = json::array();
  for (const auto& c : k.cells()) {
    json stab = json::array();
    for (const auto& s : c.stabilizer) stab.push_back(matrix_to_json(s.geom()));
    json faces = json::array();
    for (const auto& f : c.faces) faces.push_back({{"attach", matrix_to_json(f.attach.geom())}, {"target", f.target}});
    cells.push_back({{"id", c.id},
                     {"dim", c.dim},
                     {"levels", c.levels},
                     {"stabilizer", stab},
                     {"faces", faces},
                     {"at_infinity", c.at_infinity},
                     {"orientation", c.orientation},
                     {"label", c.label}});
  }
  return {{"dimension", k.dimension()},
          {"group", {{"name", k.group().name}, {"projective", k.group().projective}, {"geom_dim", k.group().geom_dim}}},
          {"cells", cells}};
}

/// Membership cannot be serialized; it comes from the group context of the
/// model the complex belongs to.
inline EquivariantPairComplex complex_from_json(const json& j, const GroupContext& group) {
  try {
    const int n = j.at("dimension").get<int>();
    const bool projective = j.at("group").at("projective").get<bool>();
    std::vector<OrbitCell> cells;
    for (const auto& jc : j.at("cells")) {
      OrbitCell c;
      c.id = jc.at("id").get<std::size_t>();
      if (c.id != cells.size()) throw SpecError("cell ids must be 0, 1, 2, ... in order");
      c.dim = jc.at("dim").get<int>();
      c.levels = jc.at("levels").get<std::vector<long>>();
      for (const auto& s : jc.at("stabilizer")) c.stabilizer.emplace_back(matrix_from_json(s), projective);
      for (const auto& f : jc.at("faces"))
        c.faces.push_back({GroupElement(matrix_from_json(f.at("attach")), projective), f.at("target").get<std::size_t>()});
      c.at_infinity = jc.at("at_infinity").get<bool>();
      c.orientation = jc.at("orientation").get<int>();
      c.label = jc.value("label", std::string{});
      cells.push_back(std::move(c));
    }
    GroupContext ctx = group;
    ctx.name = j.at("group").value("name", group.name);
    return EquivariantPairComplex(n, std::move(cells), std::move(ctx));
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed complex document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("malformed complex document: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw SpecError(std::string("malformed complex document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Model specifications
//
//   {"family": "torus", "n": 2, "translations": [M1, M2],
//    "linear": [{"A": M, "rho": R}], "hecke_elements": [{"linear": M, "translation": v}]}
//   {"family": "finite_rotation", "order": 4, "rep": "regular" | {"generator": M}}
//   {"family": "modular", "level": 11, "weight": 2, "hecke_elements": [M]}
//   {"family": "complex", "base": <spec>, "complex": <complex document>}
//
// The last family replaces the cells of the base model by a supplied
// complex; it exists to feed hand-made or corrupted complexes to the checks.

struct ModelSpec {
  std::string family;
  std::string id;
  json parameters;
};

inline std::size_t max_cells_from_env() {
  const char* env = std::getenv("DUALIS_MAX_CELLS");
  if (!env || !*env) return 20000;
  try {
    long v = std::stol(env);
    if (v <= 0) throw std::invalid_argument("nonpositive");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw SpecError(std::string("DUALIS_MAX_CELLS is not a positive integer: ") + env);
  }
}

inline ModelSpec parse_model_spec(const json& j) {
  if (!j.is_object()) throw SpecError("model spec must be a JSON object");
  if (!j.contains("family") || !j.at("family").is_string()) throw SpecError("model spec needs a string 'family'");
  ModelSpec s;
  s.family = j.at("family").get<std::string>();
  static const std::set<std::string> families{"torus", "finite_rotation", "modular", "complex"};
  if (!families.count(s.family)) throw SpecError("unknown family '" + s.family + "'");
  s.id = j.value("id", std::string{});
  s.parameters = j;
  return s;
}

namespace io_detail {

template <class T>
T get_integer(const json& j, const char* key, T lo, T hi) {
  if (!j.contains(key)) throw SpecError(std::string("missing parameter '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SpecError(std::string("parameter '") + key + "' must be an integer");
  auto x = v.get<long long>();
  if (x < static_cast<long long>(lo) || x > static_cast<long long>(hi))
    throw SpecError(std::string("parameter '") + key + "' = " + std::to_string(x) + " outside " + std::to_string(lo) +
                    ".." + std::to_string(hi));
  return static_cast<T>(x);
}

inline Model build_torus_spec(const json& j) {
  const auto n = get_integer<std::size_t>(j, "n", 1, 3);
  TorusRepData d;
  d.name = j.value("rep_name", std::string("rho"));
  if (j.contains("translations")) {
    for (const auto& m : j.at("translations")) d.translations.push_back(matrix_from_json(m));
  } else {
    d.translations.assign(n, Matrix::identity(1));
    d.name = j.value("rep_name", std::string("trivial"));
  }
  if (d.translations.size() != n) throw SpecError("torus spec needs exactly n translation matrices");
  if (j.contains("linear"))
    for (const auto& l : j.at("linear")) d.linear.emplace_back(matrix_from_json(l.at("A")), matrix_from_json(l.at("rho")));
  std::vector<GroupElement> hecke;
  if (j.contains("hecke_elements"))
    for (const auto& h : j.at("hecke_elements")) {
      Matrix a = h.is_object() ? matrix_from_json(h.at("linear")) : matrix_from_json(h);
      Vector v = h.is_object() && h.contains("translation") ? vector_from_json(h.at("translation")) : Vector(n, Scalar(0));
      if (a.rows() != n || !a.is_square() || v.size() != n) throw SpecError("torus Hecke element has the wrong size");
      if (determinant(a) == 0) throw SpecError("torus Hecke element is singular");
      hecke.push_back(affine_element(a, v));
    }
  try {
    return build_torus(n, d, std::move(hecke));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

inline Model build_rotation_spec(const json& j) {
  const auto r = get_integer<std::size_t>(j, "order", 2, 12);
  Representation rep;
  try {
    const json& jr = j.contains("rep") ? j.at("rep") : json("trivial");
    if (jr.is_string())
      rep = named_cyclic_representation(r, jr.get<std::string>());
    else
      rep = cyclic_representation(r, matrix_from_json(jr.at("generator")), jr.value("name", std::string("custom")));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  } catch (const json::exception& e) {
    throw SpecError(e.what());
  }
  if (j.contains("hecke_elements") && !j.at("hecke_elements").empty())
    throw SpecError("finite rotation models carry no Hecke elements");
  return build_finite_rotation(r, rep);
}

inline Model build_modular_spec(const json& j) {
  const long n = get_integer<long>(j, "level", 1, 30);
  const long k = get_integer<long>(j, "weight", 2, 6);
  if (k % 2 != 0) throw SpecError("weight must be even");
  std::vector<GroupElement> hecke;
  if (j.contains("hecke_elements"))
    for (const auto& h : j.at("hecke_elements")) {
      Matrix m = matrix_from_json(h);
      if (m.rows() != 2 || m.cols() != 2) throw SpecError("modular Hecke element must be 2x2");
      for (const auto& x : m.data())
        if (!is_integer(x)) throw SpecError("modular Hecke element must be integral");
      Scalar det = determinant(m);
      if (det <= 0 || det > 1000 || oracle_detail::prime_factors(static_cast<long>(boost::multiprecision::numerator(det))) !=
                                          std::vector<long>{static_cast<long>(boost::multiprecision::numerator(det))})
        throw SpecError("modular Hecke element must have prime determinant");
      if (modular_detail::residue(boost::multiprecision::numerator(m(1, 0)), n) != 0)
        throw SpecError("modular Hecke element must have lower-left entry divisible by N");
      hecke.emplace_back(m, true);
    }
  return build_modular(n, k, std::move(hecke));
}

}  // namespace io_detail

inline Model build_model(const ModelSpec& spec) {
  Model m;
  const json& j = spec.parameters;
  if (spec.family == "torus") m = io_detail::build_torus_spec(j);
  else if (spec.family == "finite_rotation") m = io_detail::build_rotation_spec(j);
  else if (spec.family == "modular") m = io_detail::build_modular_spec(j);
  else if (spec.family == "complex") {
    if (!j.contains("base") || !j.contains("complex")) throw SpecError("complex family needs 'base' and 'complex'");
    ModelSpec base = parse_model_spec(j.at("base"));
    if (base.family == "complex") throw SpecError("complex family cannot nest");
    m = build_model(base);
    auto k = std::make_shared<const EquivariantPairComplex>(complex_from_json(j.at("complex"), m.complex->group()));
    m.family = "complex";
    m.id = "complex over " + m.id;
    m.complex = k;
    // Hecke data of the base refer to the base cells; they are dropped.
    m.hecke = [](const GroupElement&) -> HeckeDatum {
      throw SpecError("Hecke data are not available for a supplied complex");
    };
    m.hecke_elements.clear();
  } else {
    throw SpecError("unknown family '" + spec.family + "'");
  }
  if (!spec.id.empty()) m.id = spec.id;
  const std::size_t cap = max_cells_from_env();
  if (m.complex->size() > cap)
    throw SpecError("complex has " + std::to_string(m.complex->size()) + " orbit cells, above DUALIS_MAX_CELLS = " +
                    std::to_string(cap));
  return m;
}

// ---------------------------------------------------------------------------
// Run reports

struct HeckeRecord {
  Matrix g;
  int degree = 0;
  Variant variant = Variant::ordinary;
  Matrix matrix;
  std::vector<Scalar> charpoly;
};

struct RunReport {
  std::string model;
  std::string family;
  std::uint64_t seed = 0;
  /// dims[coefficients]["ordinary" | "compact" | "interior"][degree]
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> dims;
  std::vector<PairingMatrix> pairings;
  std::vector<HeckeRecord> hecke;
  std::vector<CheckResult> checks;
};

inline const char* pairing_name(PairingVariant v) {
  return v == PairingVariant::interior ? "interior" : "compact_ordinary";
}

inline PairingVariant parse_pairing_variant(const std::string& s) {
  if (s == "interior") return PairingVariant::interior;
  if (s == "compact_ordinary") return PairingVariant::compact_ordinary;
  throw SpecError("unknown pairing variant '" + s + "'");
}

inline json report_to_json(const RunReport& r) {
  json pairings = json::array();
  for (const auto& p : r.pairings)
    pairings.push_back({{"degree", p.degree},
                        {"variant", pairing_name(p.variant)},
                        {"rows", p.matrix.rows()},
                        {"cols", p.matrix.cols()},
                        {"matrix", matrix_to_json(p.matrix)}});
  json hecke = json::array();
  for (const auto& h : r.hecke)
    hecke.push_back({{"g", matrix_to_json(h.g)},
                     {"degree", h.degree},
                     {"variant", variant_name(h.variant)},
                     {"size", h.matrix.rows()},
                     {"matrix", matrix_to_json(h.matrix)},
                     {"charpoly", vector_to_json(h.charpoly)}});
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}});
  return {{"model", r.model}, {"family", r.family}, {"seed", r.seed}, {"dimensions", r.dims},
          {"pairings", pairings}, {"hecke", hecke}, {"checks", checks}};
}

inline RunReport report_from_json(const json& j) {
  RunReport r;
  r.model = j.at("model").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.dims = j.at("dimensions").get<decltype(r.dims)>();
  for (const auto& p : j.at("pairings")) {
    PairingMatrix pm;
    pm.degree = p.at("degree").get<int>();
    pm.variant = parse_pairing_variant(p.at("variant").get<std::string>());
    pm.matrix = matrix_from_json(p.at("matrix"), p.at("cols").get<std::size_t>());
    r.pairings.push_back(std::move(pm));
  }
  for (const auto& h : j.at("hecke")) {
    HeckeRecord rec;
    rec.g = matrix_from_json(h.at("g"));
    rec.degree = h.at("degree").get<int>();
    rec.variant = parse_variant(h.at("variant").get<std::string>());
    rec.matrix = matrix_from_json(h.at("matrix"), h.at("size").get<std::size_t>());
    rec.charpoly = vector_from_json(h.at("charpoly"));
    r.hecke.push_back(std::move(rec));
  }
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                        c.at("witnesses").get<std::vector<std::string>>()});
  return r;
}

}  // namespace dualis
