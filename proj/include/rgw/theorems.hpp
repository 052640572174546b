#pragma once

#include "rgw/curvature.hpp"
#include "rgw/document.hpp"

namespace rgw {

struct CheckEntry {
  std::string name;
  std::string status;  // pass | fail | info | skip
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct RunReport {
  std::string instance;
  std::string provenance;
  bool exact_mode = false;
  std::vector<CheckEntry> checks;
  std::vector<std::pair<std::string, double>> metrics;
  double elapsed_seconds = 0.0;  // human output only; machine format omits it

  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  int fail_count() const {
    int n = 0;
    for (const auto& c : checks)
      if (c.status == "fail") ++n;
    return n;
  }
  const CheckEntry* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  double metric(const std::string& name, double fallback = 0.0) const {
    for (const auto& m : metrics)
      if (m.first == name) return m.second;
    return fallback;
  }
};

struct TheoremOptions {
  double tol = kDefaultTol;
  double cluster_tol = kClusterTol;
  bool use_exact = true;    // run the exact sub-pipeline on exact documents
  int extra_solutions = 1;  // seeded random combinations per solution space
  uint64_t combo_seed = 0x715c0de5ull;
};

/// Full per-instance geometry, shared by the report/codazzi commands and
/// the theorem driver.
struct CurvatureReport {
  SpaceSpecd spec;
  MAlgebrad alg;
  ProductTabled alpha;
  CurvTensord r, r0, rd;
  Matd ric, ric0, ricd;
  double s = 0.0, s0 = 0.0, sd = 0.0;
  BianchiReport bianchi;
  NatRedReport natred;
};

CurvatureReport compute_geometry(const SpaceSpecd& spec, double tol = kDefaultTol);

/// Residuals of the two intermediate identities that compatibility implies
/// on mixed blocks (i != j, any k).
std::pair<double, double> intermediate_da_residuals(const MAlgebrad& alg, const Matd& gram,
                                                    const SpectralDecomp& decomp);

/// Runs the whole pipeline on one document: validation, Levi-Civita
/// product, curvatures, Codazzi classification, and every identity and
/// proposition check, with one report entry per check.
RunReport run_theorems(const SpaceDocument& doc, const TheoremOptions& opts = {});

/// Machine format: versioned single-line JSON, deterministic byte-for-byte
/// for identical inputs.
std::string report_to_json(const RunReport& rep);

/// Human format: one aligned line per check.
std::string report_to_text(const RunReport& rep, bool verbose = false);

}  // namespace rgw
