#pragma once

#include "rgw/theorems.hpp"

namespace rgw {

struct SweepOptions {
  TheoremOptions theorems;
  bool parallel = true;  // OpenMP across instances; the serial path is the reference
};

struct SweepResult {
  std::vector<RunReport> reports;  // input order, independent of scheduling
  bool all_pass = true;
  int total_failures = 0;
};

/// Runs the theorem pipeline over a batch of documents. Instances are
/// independent and each pipeline is single-threaded, so the parallel and
/// serial paths must produce identical reports; aggregation is by input
/// index. Exceptions are captured per instance as failing entries.
SweepResult sweep_theorems(const std::vector<SpaceDocument>& docs, const SweepOptions& opts = {});

/// Machine-format serialization of a whole sweep: one report line per
/// instance, deterministic byte-for-byte.
std::string sweep_to_json_lines(const SweepResult& result);

}  // namespace rgw
