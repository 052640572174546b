#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rgw/fuzz.hpp"
#include "rgw/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rgw::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GlobalOptions {
  double tol = rgw::kDefaultTol;
  bool exact = false;
  std::string format = "text";

  bool machine() const { return format == "machine"; }
  rgw::TheoremOptions theorem_options() const {
    rgw::TheoremOptions t;
    t.tol = tol;
    return t;
  }
};

rgw::SpaceDocument load_document(const std::string& path, const GlobalOptions& g) {
  rgw::SpaceDocument doc = rgw::parse_document(read_file(path));
  if (g.exact && !doc.exact)
    throw rgw::ParseError("--exact requires an exact document (flag + rational entries)", path);
  return doc;
}

rgw::RunReport validation_report(const rgw::SpaceDocument& doc, const GlobalOptions& g) {
  rgw::RunReport rep;
  rep.instance = doc.name;
  const rgw::ValidationReport val = rgw::validate_space(doc.to_spec(), g.tol);
  for (const auto& c : val.checks)
    rep.checks.push_back({"validate." + c.name, c.pass ? "pass" : "fail", c.max_residual, g.tol, ""});
  if (doc.exact && g.exact) {
    const rgw::ValidationReport ex = rgw::validate_space(doc.to_exact_spec());
    for (const auto& c : ex.checks)
      rep.checks.push_back(
          {"validate_exact." + c.name, c.pass ? "pass" : "fail", c.max_residual, 0.0, ""});
    rep.exact_mode = true;
  }
  return rep;
}

int emit_report(const rgw::RunReport& rep, const GlobalOptions& g) {
  if (g.machine())
    std::cout << rgw::report_to_json(rep) << "\n";
  else
    std::cout << rgw::report_to_text(rep, true);
  return rep.all_pass() ? kExitOk : kExitAssertionFailure;
}

int cmd_validate(const std::string& path, const GlobalOptions& g) {
  return emit_report(validation_report(load_document(path, g), g), g);
}

int cmd_report(const std::string& path, const GlobalOptions& g) {
  const rgw::SpaceDocument doc = load_document(path, g);
  const rgw::SpaceSpecd spec = doc.to_spec();
  const rgw::ValidationReport val = rgw::validate_space(spec, g.tol);
  if (!val.valid) return emit_report(validation_report(doc, g), g);

  const rgw::CurvatureReport geo = rgw::compute_geometry(spec, g.tol);
  const rgw::MAlgebrad& alg = geo.alg;
  const auto [nil, deg] = rgw::is_nilpotent(alg);
  const rgw::SolvableVerdict sv = rgw::is_split_solvable(alg, g.tol);
  const std::vector<rgw::Matd> sols = rgw::codazzi_solution_space(spec, geo.alpha);

  if (g.machine()) {
    rgw::RunReport rep;
    rep.instance = doc.name;
    rep.metrics = {{"dim_h", double(doc.dim_h)},
                   {"dim_m", double(doc.dim_m)},
                   {"scalar_curvature", geo.s},
                   {"scalar_curvature_canonical", geo.s0},
                   {"scalar_curvature_difference", geo.sd},
                   {"codazzi_dim", double(sols.size())},
                   {"naturally_reductive", geo.natred.naturally_reductive ? 1.0 : 0.0},
                   {"bianchi_r0", geo.bianchi.bianchi ? 1.0 : 0.0},
                   {"nilpotent", nil ? 1.0 : 0.0}};
    std::cout << rgw::report_to_json(rep) << "\n";
    return kExitOk;
  }

  std::cout << "instance: " << doc.name << "  (dim_h=" << doc.dim_h << ", dim_m=" << doc.dim_m
            << ")\n";
  std::cout << "  valid: yes (max residual " << val.max_residual << ")\n";
  std::cout << "  naturally reductive: " << (geo.natred.naturally_reductive ? "yes" : "no")
            << "\n";
  std::cout << "  Bianchi(R0): " << (geo.bianchi.bianchi ? "holds" : "fails")
            << ", pair-skew: " << (geo.bianchi.pair_skew ? "holds" : "fails") << "\n";
  std::cout << "  scalar curvatures: s=" << geo.s << "  s0=" << geo.s0 << "  sd=" << geo.sd
            << "\n";
  std::cout << "  Ricci:\n" << geo.ric << "\n";
  std::cout << "  Ricci (canonical):\n" << geo.ric0 << "\n";
  if (spec.dim_m >= 2) {
    std::cout << "  sectional curvatures on coordinate planes (K, K0, Kd):\n";
    for (int a = 0; a < spec.dim_m; ++a)
      for (int b = a + 1; b < spec.dim_m; ++b) {
        rgw::Vecd u = rgw::Vecd::Zero(spec.dim_m);
        rgw::Vecd v = rgw::Vecd::Zero(spec.dim_m);
        u(a) = 1.0;
        v(b) = 1.0;
        const double k = rgw::sectional(geo.r, spec.gram, u, v, g.tol);
        const double k0 = rgw::sectional(geo.r0, spec.gram, u, v, g.tol);
        std::cout << "    (" << a + 1 << "," << b + 1 << "): " << k << "  " << k0 << "  "
                  << k - k0 << "\n";
      }
  }
  std::cout << "  nilpotent: " << (nil ? "yes, degree " + std::to_string(*deg) : "no") << "\n";
  std::cout << "  split-solvable: "
            << (sv.result == rgw::SolvableVerdict::Result::yes
                    ? "yes"
                    : sv.result == rgw::SolvableVerdict::Result::no ? "no" : "undetermined")
            << "\n";
  std::cout << "  codazzi solution dimension: " << sols.size() << "\n";
  return kExitOk;
}

int cmd_codazzi(const std::string& path, const GlobalOptions& g) {
  const rgw::SpaceDocument doc = load_document(path, g);
  const rgw::SpaceSpecd spec = doc.to_spec();
  const rgw::ValidationReport val = rgw::validate_space(spec, g.tol);
  if (!val.valid) return emit_report(validation_report(doc, g), g);

  const rgw::ProductTabled alpha = rgw::levi_civita_product(spec);
  const std::vector<rgw::Matd> sols = rgw::codazzi_solution_space(spec, alpha);

  rgw::RunReport rep;
  rep.instance = doc.name;
  rep.metrics.emplace_back("codazzi_dim", double(sols.size()));
  std::ostringstream text;
  text << "instance: " << doc.name << "\n";
  text << "  codazzi solution dimension: " << sols.size() << "\n";
  for (size_t i = 0; i < sols.size(); ++i) {
    const rgw::Classification cls = rgw::classify(sols[i], spec, alpha, g.tol);
    std::ostringstream lam;
    for (int k = 0; k < cls.r; ++k) lam << (k ? ", " : "") << cls.decomp.lambdas[k];
    rep.checks.push_back({"solution" + std::to_string(i),
                          "info",
                          cls.nabla_max,
                          g.tol,
                          std::string(cls.parallel ? "parallel" : "nonparallel") +
                              (cls.essential ? " essential" : "") + "; r=" +
                              std::to_string(cls.r) + "; lambda=[" + lam.str() + "]"});
    text << "  solution " << i << ": " << (cls.parallel ? "parallel" : "nonparallel")
         << (cls.essential ? ", essential" : "") << ", r=" << cls.r << ", lambda=[" << lam.str()
         << "]\n"
         << sols[i] << "\n";
  }
  if (g.machine())
    std::cout << rgw::report_to_json(rep) << "\n";
  else
    std::cout << text.str();
  return kExitOk;
}

int run_sweep(const std::vector<rgw::SpaceDocument>& docs, const GlobalOptions& g,
              bool parallel) {
  rgw::SweepOptions opts;
  opts.theorems = g.theorem_options();
  opts.parallel = parallel;
  const rgw::SweepResult result = rgw::sweep_theorems(docs, opts);
  if (g.machine()) {
    std::cout << rgw::sweep_to_json_lines(result);
  } else {
    for (const auto& rep : result.reports) std::cout << rgw::report_to_text(rep);
    std::cout << (result.all_pass ? "all checks passed" : "FAILURES: " +
                                                              std::to_string(result.total_failures))
              << " over " << result.reports.size() << " instance(s)\n";
  }
  return result.all_pass ? kExitOk : kExitAssertionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rgw - invariant geometry workbench for reductive homogeneous spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions g;
  app.add_option("--tol", g.tol, "residual tolerance (default 1e-9)");
  app.add_flag("--exact", g.exact, "require exact-rational documents");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string path;
  auto* validate = app.add_subcommand("validate", "check every space invariant");
  validate->add_option("file", path, ".rgw.json document")->required();

  auto* report = app.add_subcommand("report", "curvature and structure summary");
  report->add_option("file", path, ".rgw.json document")->required();

  auto* codazzi = app.add_subcommand("codazzi", "solve and classify invariant Codazzi tensors");
  codazzi->add_option("file", path, ".rgw.json document")->required();

  bool use_corpus = false;
  auto* theorems = app.add_subcommand("theorems", "run the full identity/proposition harness");
  theorems->add_option("file", path, ".rgw.json document");
  theorems->add_flag("--corpus", use_corpus, "run over the built-in corpus");

  uint64_t seed = 0;
  int count = 1, dim = 3;
  bool fuzz_theorems = false, serial = false;
  auto* fuzz = app.add_subcommand("fuzz", "generate deterministic random instances");
  fuzz->add_option("--seed", seed, "stream seed")->required();
  fuzz->add_option("--count", count, "number of instances")->required();
  fuzz->add_option("--dim", dim, "dim_m in [1,8]")->required();
  fuzz->add_flag("--theorems", fuzz_theorems, "run the harness on each instance");
  fuzz->add_flag("--serial", serial, "single-threaded sweep (reference path)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path, g);
    if (report->parsed()) return cmd_report(path, g);
    if (codazzi->parsed()) return cmd_codazzi(path, g);
    if (theorems->parsed()) {
      std::vector<rgw::SpaceDocument> docs;
      if (use_corpus)
        docs = rgw::builtin_corpus();
      else if (!path.empty())
        docs.push_back(load_document(path, g));
      else
        throw rgw::ParseError("theorems needs a file or --corpus");
      return run_sweep(docs, g, !serial);
    }
    if (fuzz->parsed()) {
      if (g.exact) throw rgw::ParseError("fuzz emits double-precision instances; --exact unsupported");
      const std::vector<rgw::SpaceDocument> docs = rgw::fuzz_instances(seed, count, dim);
      if (!fuzz_theorems) {
        for (const auto& doc : docs) std::cout << rgw::serialize_document(doc) << "\n";
        return kExitOk;
      }
      return run_sweep(docs, g, !serial);
    }
  } catch (const rgw::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rgw::StructuralError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertionFailure;
  }
  return kExitOk;
}
