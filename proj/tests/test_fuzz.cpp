#include <doctest.h>

#include <map>

#include "rgw/fuzz.hpp"
#include "rgw/sweep.hpp"

using namespace rgw;

TEST_CASE("fuzz streams are deterministic and prefix-stable") {
  const auto a = fuzz_instances(42, 8, 4);
  const auto b = fuzz_instances(42, 8, 4);
  REQUIRE(a.size() == 8);
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(serialize_document(a[i]) == serialize_document(b[i]));

  const auto prefix = fuzz_instances(42, 3, 4);
  for (size_t i = 0; i < prefix.size(); ++i)
    CHECK(serialize_document(prefix[i]) == serialize_document(a[i]));

  const auto other = fuzz_instances(43, 3, 4);
  CHECK(serialize_document(other[0]) != serialize_document(a[0]));
}

TEST_CASE("every fuzz instance passes validation") {
  for (int dim = 1; dim <= 6; ++dim) {
    for (const auto& doc : fuzz_instances(2026, 40, dim)) {
      INFO(doc.name);
      CHECK(validate_space(doc.to_spec()).valid);
    }
  }
}

TEST_CASE("fuzz dimension bounds") {
  CHECK_THROWS_AS(fuzz_instances(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fuzz_instances(1, 1, 9), std::invalid_argument);
  CHECK(fuzz_instances(1, 2, 1).size() == 2);
  CHECK(fuzz_instances(1, 1, 8).size() == 1);
}

TEST_CASE("family coverage at the interesting dimensions") {
  auto family_counts = [](int dim, int count) {
    std::map<std::string, int> fams;
    for (const auto& doc : fuzz_instances(99, count, dim)) {
      const std::string fam = doc.name.substr(doc.name.rfind('-') + 1);
      fams[fam]++;
    }
    return fams;
  };
  const auto d3 = family_counts(3, 60);
  CHECK(d3.count("su2_codazzi"));   // nonparallel Codazzi regime
  CHECK(d3.count("sphere_s3"));     // nontrivial isotropy
  const auto d2 = family_counts(2, 60);
  CHECK(d2.count("sphere_s2"));
  const auto d5 = family_counts(5, 60);
  CHECK(d5.count("so4_line"));      // non-Lie m-bracket regime
}

TEST_CASE("fuzz documents are a serialization fixpoint") {
  for (const auto& doc : fuzz_instances(5, 20, 4)) {
    const std::string once = serialize_document(doc);
    CHECK(serialize_document(parse_document(once)) == once);
  }
}

TEST_CASE("serial and parallel sweeps produce identical reports") {
  const auto docs = fuzz_instances(7, 24, 3);
  SweepOptions serial;
  serial.parallel = false;
  SweepOptions parallel;
  parallel.parallel = true;
  const SweepResult a = sweep_theorems(docs, serial);
  const SweepResult b = sweep_theorems(docs, parallel);
  CHECK(sweep_to_json_lines(a) == sweep_to_json_lines(b));
  CHECK(a.all_pass);
  CHECK(a.all_pass == b.all_pass);
}

TEST_CASE("sweep captures per-instance exceptions instead of dying") {
  SpaceDocument broken;
  broken.name = "broken";
  broken.dim_h = 0;
  broken.dim_m = 2;
  broken.metric = {1.0, 0.0, 0.0, -1.0};  // not positive definite
  const SweepResult r = sweep_theorems({broken}, {});
  REQUIRE(r.reports.size() == 1);
  CHECK_FALSE(r.all_pass);
}
