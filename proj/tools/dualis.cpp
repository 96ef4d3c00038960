// dualis: batch front end.  Exit codes: 0 success, 1 usage error,
// 2 spec rejected, 3 invariant violation or failed check, 4 inapplicable check.

#include "dualis/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dualis;

namespace {

constexpr int kSpecError = 2;
constexpr int kInvariant = 3;
constexpr int kInapplicable = 4;

struct Inapplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("cannot parse " + path + ": " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::pair<int, int> parse_degrees(const std::string& text, int n) {
  if (text.empty()) return {0, n};
  auto dots = text.find("..");
  try {
    int lo = std::stoi(dots == std::string::npos ? text : text.substr(0, dots));
    int hi = dots == std::string::npos ? lo : std::stoi(text.substr(dots + 2));
    if (lo < 0 || hi > n || lo > hi) throw SpecError("degree range " + text + " outside 0.." + std::to_string(n));
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw SpecError("cannot parse degree range '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Loaded {
  ModelSpec spec;
  Model model;
};

Loaded load(const std::string& path) {
  ModelSpec spec = parse_model_spec(read_json(path));
  return {spec, build_model(spec)};
}

RunReport new_report(const Model& m, std::uint64_t seed) {
  RunReport r;
  r.model = m.id;
  r.family = m.family;
  r.seed = seed;
  return r;
}

/// Records the structural check; true if the complex is usable.
bool structural_check(const Model& m, RunReport& report) {
  CheckResult c = validate_complex(*m.complex, m.rep);
  c.name = "complex";
  const bool ok = c.pass;
  if (!ok) report.checks.push_back(std::move(c));
  return ok;
}

int compute(const std::string& spec_path, const std::string& degrees, const std::string& variants,
            const std::string& out, std::uint64_t seed) {
  auto [spec, m] = load(spec_path);
  RunReport report = new_report(m, seed);
  if (!structural_check(m, report)) {
    write_json(report_to_json(report), out);
    return kInvariant;
  }
  const int n = m.complex->dimension();
  auto [lo, hi] = parse_degrees(degrees, n);
  std::vector<Variant> vs;
  for (const auto& name : split(variants.empty() ? "ordinary,compact,interior" : variants)) {
    try {
      vs.push_back(parse_variant(name));
    } catch (const std::exception&) {
      throw SpecError("unknown variant '" + name + "'");
    }
  }

  Cohomology e(m.complex, m.rep), d(m.complex, dual_rep(m.rep));
  for (Variant v : vs)
    for (int k = lo; k <= hi; ++k) {
      report.dims["E"][variant_name(v)].push_back(e.basis(k, v).dim());
      report.dims["E*"][variant_name(v)].push_back(d.basis(k, v).dim());
    }
  auto wants = [&](Variant v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
  for (int k = lo; k <= hi; ++k) {
    if (wants(Variant::compact) || wants(Variant::ordinary))
      report.pairings.push_back(pairing_matrix(e, d, k, PairingVariant::compact_ordinary, seed));
    if (wants(Variant::interior)) report.pairings.push_back(pairing_matrix(e, d, k, PairingVariant::interior, seed));
  }
  for (const auto& g : m.hecke_elements) {
    HeckeDatum hd = m.hecke(g);
    for (int k = lo; k <= hi; ++k)
      for (Variant v : vs) {
        // degrees without a comparison map are reported only when trivial
        if (k > hd.chi.max_degree && e.basis(k, v).dim() != 0) continue;
        HeckeRecord rec;
        rec.g = g.geom();
        rec.degree = k;
        rec.variant = v;
        rec.matrix = hecke_operator(e, hd, k, v);
        rec.charpoly = charpoly(rec.matrix);
        report.hecke.push_back(std::move(rec));
      }
  }
  write_json(report_to_json(report), out);
  return 0;
}

const std::set<std::string>& known_checks() {
  static const std::set<std::string> names{"duality",     "grothendieck", "finite_quotient", "transfer",
                                           "hecke_h0",    "double_coset", "adjointness",     "coset_independence"};
  return names;
}

void require_applicable(const std::string& check, const ModelSpec& spec, const Model& m) {
  if (check == "grothendieck" && spec.family != "torus")
    throw Inapplicable("grothendieck needs a torus model, got " + spec.family);
  if (check == "finite_quotient" && spec.family != "finite_rotation")
    throw Inapplicable("finite_quotient needs a finite_rotation model, got " + spec.family);
  const bool needs_hecke = check == "transfer" || check == "hecke_h0" || check == "double_coset" ||
                           check == "adjointness" || check == "coset_independence";
  if (needs_hecke && m.hecke_elements.empty()) throw Inapplicable(check + " needs at least one Hecke element");
}

CheckResult run_check(const std::string& check, const ModelSpec& spec, const Model& m, std::uint64_t seed) {
  Cohomology e(m.complex, m.rep), d(m.complex, dual_rep(m.rep));
  const int n = m.complex->dimension();
  std::mt19937_64 rng(seed);
  if (check == "duality") return verify_duality(e, d, seed);
  if (check == "grothendieck") {
    CheckResult r{check, true, {}};
    std::vector<Matrix> translations;
    for (int j = 0; j < n; ++j) {
      Vector shift(static_cast<std::size_t>(n), Scalar(0));
      shift[static_cast<std::size_t>(j)] = 1;
      translations.push_back(rep_evaluate(m.rep, affine_element(Matrix::identity(static_cast<std::size_t>(n)), shift)));
    }
    auto oracle = koszul_cohomology(translations);
    auto dims = e.dims(Variant::ordinary);
    for (int k = 0; k <= n; ++k) {
      std::string line = "H^" + std::to_string(k) + ": complex " + std::to_string(dims[k]) + ", Koszul " +
                         std::to_string(oracle[k]);
      if (dims[k] != oracle[k]) r.fail(line);
      else r.note(line);
    }
    return r;
  }
  if (check == "finite_quotient") {
    CheckResult r{check, true, {}};
    auto order = spec.parameters.at("order").get<std::size_t>();
    auto oracle = finite_quotient_oracle(order, m.rep);
    auto dims = e.dims(Variant::compact);
    for (int k = 0; k <= n; ++k) {
      std::string line = "H_c^" + std::to_string(k) + ": complex " + std::to_string(dims[k]) + ", invariants " +
                         std::to_string(oracle[k]);
      if (dims[k] != oracle[k]) r.fail(line);
      else r.note(line);
    }
    return r;
  }

  CheckResult all{check, true, {}};
  for (const auto& g : m.hecke_elements) {
    HeckeDatum hd = m.hecke(g);
    std::vector<int> degrees;
    for (int k = 0; k <= std::min(n, hd.chi.max_degree); ++k) degrees.push_back(k);
    CheckResult r{"g = " + g.str(), true, {}};
    if (check == "transfer") {
      SubgroupComplex sc(m.complex, hd.comm.delta1);
      Cohomology sub(sc.complex_ptr(), m.rep);
      r = verify_transfer_identities(e, sc, sub);
      r.name = "g = " + g.str();
    } else if (check == "hecke_h0") {
      r = verify_hecke_h0(e, hd);
      r.name = "g = " + g.str();
    } else if (check == "double_coset") {
      for (int trial = 0; trial < 3; ++trial) {
        GroupElement a = m.sample(rng), b = m.sample(rng);
        CheckResult one = verify_double_coset(e, hd, m.hecke(a * g * b), degrees);
        one.name = "gamma = " + a.str() + ", gamma' = " + b.str();
        if (one.pass) one.note("equal on degrees 0.." + std::to_string(degrees.back()));
        r.absorb(one);
      }
    } else if (check == "adjointness") {
      HeckeDatum hd_inv = m.hecke(g.inverse());
      for (int k = 0; k <= n; ++k) {
        CheckResult one = verify_adjointness(e, d, hd, hd_inv, k);
        one.name = "m = " + std::to_string(k);
        r.absorb(one);
      }
    } else if (check == "coset_independence") {
      SubgroupComplex sc(m.complex, hd.comm.delta1);
      Cohomology sub(sc.complex_ptr(), m.rep);
      auto draw = [&]() { return sample_subgroup(m, hd.comm.delta1.contains, rng); };
      r = verify_coset_independence(e, hd, draw, sc, sub, draw, degrees, 10);
      r.name = "g = " + g.str();
    }
    all.absorb(r);
  }
  return all;
}

int verify(const std::string& spec_path, const std::string& checks, const std::string& out, std::uint64_t seed) {
  auto [spec, m] = load(spec_path);
  auto names = split(checks);
  if (names.empty()) throw SpecError("no checks selected");
  for (const auto& c : names)
    if (!known_checks().count(c)) throw SpecError("unknown check '" + c + "'");
  for (const auto& c : names) require_applicable(c, spec, m);

  RunReport report = new_report(m, seed);
  bool ok = structural_check(m, report);
  if (ok)
    for (const auto& c : names) {
      CheckResult r{c, true, {}};
      try {
        r = run_check(c, spec, m, seed);
        r.name = c;
      } catch (const InvariantError& ex) {
        r.fail(std::string("invariant violation: ") + ex.what());
      }
      ok = ok && r.pass;
      report.checks.push_back(std::move(r));
    }
  write_json(report_to_json(report), out);
  return ok ? 0 : kInvariant;
}

int export_complex(const std::string& spec_path, const std::string& out) {
  auto [spec, m] = load(spec_path);
  write_json(complex_to_json(*m.complex), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant cohomology, duality pairings and Hecke operators with exact arithmetic"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized sampling in property checks");

  std::string spec_path, out, degrees, variants, checks;
  auto* cmp = app.add_subcommand("compute", "cohomology dimensions, pairing and Hecke matrices");
  cmp->add_option("spec", spec_path, "model specification (JSON)")->required();
  cmp->add_option("--degrees", degrees, "degree range a..b");
  cmp->add_option("--variants", variants, "comma list of ordinary,compact,interior");
  cmp->add_option("-o,--output", out, "report path (default stdout)");
  cmp->add_option("--seed", seed, "seed for randomized sampling");

  auto* ver = app.add_subcommand("verify", "run named theorem checks");
  ver->add_option("spec", spec_path, "model specification (JSON)")->required();
  ver->add_option("--checks", checks, "comma list of checks")->required();
  ver->add_option("-o,--output", out, "report path (default stdout)");
  ver->add_option("--seed", seed, "seed for randomized sampling");

  auto* cx = app.add_subcommand("complex", "write the orbit-cell complex of a model");
  cx->add_option("spec", spec_path, "model specification (JSON)")->required();
  cx->add_option("-o,--output", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmp) return compute(spec_path, degrees, variants, out, seed);
    if (*ver) return verify(spec_path, checks, out, seed);
    if (*cx) return export_complex(spec_path, out);
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const Inapplicable& e) {
    std::cerr << "inapplicable check: " << e.what() << "\n";
    return kInapplicable;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  }
  return 1;
}
