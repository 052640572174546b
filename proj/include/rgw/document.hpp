#pragma once

#include <string>
#include <vector>

#include "rgw/space.hpp"

namespace rgw {

/// Input rejection with position/path context from the JSON layer.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, const std::string& where = "")
      : std::runtime_error(where.empty() ? what : what + " (at " + where + ")") {}
};

/// On-disk description of a space (.rgw.json): sparse bracket entries over
/// the combined basis (1-based, only i < j stored; antisymmetric completion
/// is automatic), a dense row-major metric on m, optional isotropy
/// generator blocks, and an exact flag indicating all-rational entries.
struct SpaceDocument {
  struct BracketEntry {
    int i = 0;
    int j = 0;
    std::vector<double> coeffs;
    std::vector<Rational> coeffs_exact;  // filled when exact
  };

  std::string name;
  int dim_h = 0;
  int dim_m = 0;
  bool exact = false;
  std::vector<BracketEntry> brackets;
  std::vector<double> metric;  // row-major (dim_m)^2
  std::vector<Rational> metric_exact;
  std::vector<std::vector<double>> isotropy_generators;
  std::vector<std::vector<Rational>> isotropy_generators_exact;

  int dim_g() const { return dim_h + dim_m; }

  SpaceSpec<double> to_spec() const;
  SpaceSpec<Rational> to_exact_spec() const;  // throws ParseError unless exact
};

/// Parses and structurally validates a document; throws ParseError with a
/// position or JSON-path annotation on malformed input.
SpaceDocument parse_document(const std::string& text);

/// Canonical serialization: sorted non-zero bracket entries, fixed key
/// order. parse-serialize-parse is a fixpoint after one normalization.
std::string serialize_document(const SpaceDocument& doc);

/// Sorts bracket entries by (i, j) and drops all-zero rows.
SpaceDocument normalize_document(SpaceDocument doc);

/// Hand-built instances covering the interesting regimes: flat/abelian,
/// two-step nilpotent, solvable non-nilpotent, compact simple with three
/// metrics, and the round spheres S^2 and S^3 with non-trivial isotropy.
/// Sorted by name; every instance is exact and passes validate_space.
std::vector<SpaceDocument> builtin_corpus();

}  // namespace rgw
