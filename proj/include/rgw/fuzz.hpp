#pragma once

#include "rgw/document.hpp"

namespace rgw {

/// Deterministic stream of valid instances: catalog families (abelian,
/// Heisenberg-type, almost-abelian solvable, su(2) sums, carved reductive
/// splittings), randomized by a basis change on m and a random invariant
/// SPD metric with condition number <= 1e3. Instance i depends only on
/// (seed, i, dim_m), so streams are prefix-stable in count.
std::vector<SpaceDocument> fuzz_instances(uint64_t seed, int count, int dim_m);

}  // namespace rgw
