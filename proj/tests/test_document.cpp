#include <doctest.h>

#include "rgw/document.hpp"
#include "rgw/theorems.hpp"

using namespace rgw;

TEST_CASE("minimal abelian document parses and validates") {
  const SpaceDocument doc =
      parse_document(R"({"dim_h":0,"dim_m":2,"brackets":[],"metric":[1,0,0,1]})");
  CHECK(doc.dim_m == 2);
  CHECK(doc.brackets.empty());
  CHECK(validate_space(doc.to_spec()).valid);
}

TEST_CASE("parse-serialize-parse is a fixpoint") {
  const std::string raw = R"({
    "name": "su2",
    "dim_h": 0,
    "dim_m": 3,
    "brackets": [
      {"i": 2, "j": 3, "coeffs": [1, 0, 0]},
      {"i": 1, "j": 2, "coeffs": [0, 0, 1]},
      {"i": 1, "j": 3, "coeffs": [0, -1, 0]}
    ],
    "metric": [1, 0, 0, 0, 1, 0, 0, 0, 1]
  })";
  const std::string once = serialize_document(parse_document(raw));
  const std::string twice = serialize_document(parse_document(once));
  CHECK(once == twice);
  // normalization sorts entries by (i, j)
  CHECK(once.find("\"i\":1,\"j\":2") < once.find("\"i\":2,\"j\":3"));
}

TEST_CASE("zero bracket rows are dropped by normalization") {
  const SpaceDocument doc = parse_document(
      R"({"dim_h":0,"dim_m":2,"brackets":[{"i":1,"j":2,"coeffs":[0,0]}],"metric":[1,0,0,1]})");
  CHECK(doc.brackets.empty());
}

TEST_CASE("parse rejections") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_document(text);
      FAIL_CHECK("expected ParseError for ", needle);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[{"i":2,"j":2,"coeffs":[0,0]}],"metric":[1,0,0,1]})",
               "diagonal bracket entry");
  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[{"i":2,"j":1,"coeffs":[0,0]}],"metric":[1,0,0,1]})",
               "i < j");
  expect_error(
      R"({"dim_h":0,"dim_m":2,"brackets":[{"i":1,"j":2,"coeffs":[0,1]},{"i":1,"j":2,"coeffs":[1,0]}],"metric":[1,0,0,1]})",
      "duplicate");
  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[{"i":1,"j":5,"coeffs":[0,0]}],"metric":[1,0,0,1]})",
               "out of range");
  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[],"metric":[1,2,0,1]})", "non-symmetric");
  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[],"metric":[1,0,0]})", "dim_m^2");
  expect_error(R"({"dim_h":0,"dim_m":0,"brackets":[],"metric":[]})", "positive");
  expect_error(R"({"dim_h":0,"dim_m":2,"brackets":[{"i":1,"j":2,"coeffs":[1]}],"metric":[1,0,0,1]})",
               "dim_g");
  expect_error("{not json", "malformed");
  expect_error(R"([1,2,3])", "object");
  expect_error(R"({"dim_h":0,"dim_m":1,"metric":[0.25],"exact":true})", "exact document");
}

TEST_CASE("exact documents parse rational strings") {
  const SpaceDocument doc = parse_document(
      R"({"dim_h":0,"dim_m":2,"brackets":[{"i":1,"j":2,"coeffs":["1/2",0]}],"metric":["1","0","0","2/3"],"exact":true})");
  CHECK(doc.exact);
  CHECK(doc.metric_exact[3] == Rational(2, 3));
  const SpaceSpec<Rational> spec = doc.to_exact_spec();
  CHECK(spec.structure(0, 1, 0) == Rational(1, 2));
  CHECK(spec.structure(1, 0, 0) == Rational(-1, 2));
  // double view stays in sync
  CHECK(doc.to_spec().gram(1, 1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("non-exact documents refuse the exact view") {
  const SpaceDocument doc =
      parse_document(R"({"dim_h":0,"dim_m":1,"brackets":[],"metric":[1.5]})");
  CHECK_THROWS_AS(doc.to_exact_spec(), ParseError);
}

TEST_CASE("builtin corpus shape") {
  const std::vector<SpaceDocument> corpus = builtin_corpus();
  CHECK(corpus.size() >= 8);
  for (size_t i = 1; i < corpus.size(); ++i) CHECK(corpus[i - 1].name < corpus[i].name);
  for (const auto& doc : corpus) {
    INFO(doc.name);
    CHECK(doc.exact);
    CHECK(validate_space(doc.to_spec()).valid);
    CHECK(validate_space(doc.to_exact_spec()).valid);
    // serialization of corpus members round-trips
    const std::string s = serialize_document(doc);
    CHECK(serialize_document(parse_document(s)) == s);
  }
  bool has_s2 = false, has_s3 = false, has_solvable = false;
  for (const auto& doc : corpus) {
    has_s2 = has_s2 || doc.name == "sphere_s2";
    has_s3 = has_s3 || doc.name == "sphere_s3";
    has_solvable = has_solvable || doc.name == "solvable_aff";
  }
  CHECK(has_s2);
  CHECK(has_s3);
  CHECK(has_solvable);
}

TEST_CASE("corpus end-to-end spot checks through the harness") {
  for (const auto& doc : builtin_corpus()) {
    if (doc.name == "su2_bi") {
      const RunReport rep = run_theorems(doc);
      CHECK(rep.all_pass());
      CHECK(rep.metric("codazzi_dim") == 1.0);
      const CheckEntry* nr = rep.find("natred.flag");
      REQUIRE(nr != nullptr);
      CHECK(nr->detail == "naturally reductive");
    }
    if (doc.name == "sphere_s2") {
      const RunReport rep = run_theorems(doc);
      CHECK(rep.all_pass());
      CHECK(rep.metric("codazzi_dim") == 1.0);
    }
  }
}

TEST_CASE("machine report serialization is stable and versioned") {
  const SpaceDocument doc =
      parse_document(R"({"name":"t","dim_h":0,"dim_m":2,"brackets":[],"metric":[1,0,0,1]})");
  const RunReport rep = run_theorems(doc);
  const std::string a = report_to_json(rep);
  const std::string b = report_to_json(run_theorems(doc));
  CHECK(a == b);
  CHECK(a.find("\"schema\":\"rgw.report/1\"") != std::string::npos);
  CHECK(a.find("elapsed") == std::string::npos);  // timing never leaks into machine output
}
