#include "rgw/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <sstream>

namespace rgw {

namespace {

RunReport run_one(const SpaceDocument& doc, const TheoremOptions& opts) {
  try {
    return run_theorems(doc, opts);
  } catch (const std::exception& e) {
    RunReport rep;
    rep.instance = doc.name;
    CheckEntry entry;
    entry.name = "pipeline.exception";
    entry.status = "fail";
    entry.detail = e.what();
    rep.checks.push_back(std::move(entry));
    return rep;
  }
}

}  // namespace

SweepResult sweep_theorems(const std::vector<SpaceDocument>& docs, const SweepOptions& opts) {
  SweepResult result;
  result.reports.resize(docs.size());
  const int n = static_cast<int>(docs.size());

#ifdef _OPENMP
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) result.reports[i] = run_one(docs[i], opts.theorems);
  } else {
    for (int i = 0; i < n; ++i) result.reports[i] = run_one(docs[i], opts.theorems);
  }
#else
  for (int i = 0; i < n; ++i) result.reports[i] = run_one(docs[i], opts.theorems);
#endif

  for (const auto& rep : result.reports) {
    result.total_failures += rep.fail_count();
    result.all_pass = result.all_pass && rep.all_pass();
  }
  return result;
}

std::string sweep_to_json_lines(const SweepResult& result) {
  std::ostringstream os;
  for (const auto& rep : result.reports) os << report_to_json(rep) << "\n";
  return os.str();
}

}  // namespace rgw
