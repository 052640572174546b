#include "rgw/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace rgw {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Number {
  double value = 0.0;
  Rational rat;
  bool has_rat = false;
};

Number read_number(const json& v, bool exact, const std::string& where) {
  Number out;
  if (v.is_number_integer()) {
    const long long i = v.get<long long>();
    out.value = static_cast<double>(i);
    out.rat = Rational(i);
    out.has_rat = true;
    return out;
  }
  if (v.is_string()) {
    try {
      out.rat = Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad rational literal: ") + e.what(), where);
    }
    out.value = out.rat.to_double();
    out.has_rat = true;
    return out;
  }
  if (v.is_number_float()) {
    if (exact)
      throw ParseError("exact document requires integer or \"p/q\" entries", where);
    out.value = v.get<double>();
    return out;
  }
  throw ParseError("expected a number or rational string", where);
}

int read_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError("expected an integer", where);
  return v.get<int>();
}

}  // namespace

SpaceSpec<double> SpaceDocument::to_spec() const {
  SpaceSpec<double> spec;
  spec.dim_h = dim_h;
  spec.dim_m = dim_m;
  const int n = dim_g();
  spec.structure = Tensor3<double>(n, n, n);
  for (const auto& e : brackets)
    for (int k = 0; k < n; ++k) {
      spec.structure(e.i - 1, e.j - 1, k) = e.coeffs[k];
      spec.structure(e.j - 1, e.i - 1, k) = -e.coeffs[k];
    }
  spec.gram = Matd(dim_m, dim_m);
  for (int r = 0; r < dim_m; ++r)
    for (int c = 0; c < dim_m; ++c) spec.gram(r, c) = metric[r * dim_m + c];
  for (const auto& g : isotropy_generators) {
    Matd gm(dim_m, dim_m);
    for (int r = 0; r < dim_m; ++r)
      for (int c = 0; c < dim_m; ++c) gm(r, c) = g[r * dim_m + c];
    spec.isotropy_generators.push_back(std::move(gm));
  }
  return spec;
}

SpaceSpec<Rational> SpaceDocument::to_exact_spec() const {
  if (!exact) throw ParseError("document '" + name + "' is not exact-capable");
  SpaceSpec<Rational> spec;
  spec.dim_h = dim_h;
  spec.dim_m = dim_m;
  const int n = dim_g();
  spec.structure = Tensor3<Rational>(n, n, n);
  for (const auto& e : brackets)
    for (int k = 0; k < n; ++k) {
      spec.structure(e.i - 1, e.j - 1, k) = e.coeffs_exact[k];
      spec.structure(e.j - 1, e.i - 1, k) = -e.coeffs_exact[k];
    }
  spec.gram = Mat<Rational>(dim_m, dim_m);
  for (int r = 0; r < dim_m; ++r)
    for (int c = 0; c < dim_m; ++c) spec.gram(r, c) = metric_exact[r * dim_m + c];
  for (const auto& g : isotropy_generators_exact) {
    Mat<Rational> gm(dim_m, dim_m);
    for (int r = 0; r < dim_m; ++r)
      for (int c = 0; c < dim_m; ++c) gm(r, c) = g[r * dim_m + c];
    spec.isotropy_generators.push_back(std::move(gm));
  }
  return spec;
}

SpaceDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");

  SpaceDocument doc;
  doc.name = j.value("name", std::string("unnamed"));
  if (!j.contains("dim_h") || !j.contains("dim_m"))
    throw ParseError("dim_h and dim_m are required");
  doc.dim_h = read_int(j.at("dim_h"), "dim_h");
  doc.dim_m = read_int(j.at("dim_m"), "dim_m");
  if (doc.dim_h < 0) throw ParseError("dim_h must be non-negative");
  if (doc.dim_m < 1) throw ParseError("dim_m must be positive");
  doc.exact = j.value("exact", false);
  const int n = doc.dim_g();
  const int m = doc.dim_m;

  if (!j.contains("metric") || !j.at("metric").is_array())
    throw ParseError("metric must be a dense row-major array");
  const json& met = j.at("metric");
  if (static_cast<int>(met.size()) != m * m)
    throw ParseError("metric must hold dim_m^2 entries, got " + std::to_string(met.size()));
  for (size_t idx = 0; idx < met.size(); ++idx) {
    Number num = read_number(met[idx], doc.exact, "metric[" + std::to_string(idx) + "]");
    doc.metric.push_back(num.value);
    if (doc.exact) doc.metric_exact.push_back(num.rat);
  }
  for (int r = 0; r < m; ++r)
    for (int c = r + 1; c < m; ++c) {
      const bool sym = doc.exact ? doc.metric_exact[r * m + c] == doc.metric_exact[c * m + r]
                                 : doc.metric[r * m + c] == doc.metric[c * m + r];
      if (!sym)
        throw ParseError("non-symmetric metric", "metric[" + std::to_string(r * m + c) + "]");
    }

  if (j.contains("brackets")) {
    if (!j.at("brackets").is_array()) throw ParseError("brackets must be an array");
    std::vector<std::pair<int, int>> seen;
    for (size_t idx = 0; idx < j.at("brackets").size(); ++idx) {
      const std::string where = "brackets[" + std::to_string(idx) + "]";
      const json& e = j.at("brackets")[idx];
      if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("coeffs"))
        throw ParseError("bracket entry needs i, j, coeffs", where);
      SpaceDocument::BracketEntry entry;
      entry.i = read_int(e.at("i"), where + ".i");
      entry.j = read_int(e.at("j"), where + ".j");
      if (entry.i == entry.j)
        throw ParseError("diagonal bracket entry (antisymmetry forces zero)", where);
      if (entry.i > entry.j) throw ParseError("store only i < j entries", where);
      if (entry.i < 1 || entry.j > n) throw ParseError("bracket index out of range", where);
      if (std::find(seen.begin(), seen.end(), std::make_pair(entry.i, entry.j)) != seen.end())
        throw ParseError("duplicate bracket entry", where);
      seen.emplace_back(entry.i, entry.j);
      if (!e.at("coeffs").is_array() || static_cast<int>(e.at("coeffs").size()) != n)
        throw ParseError("coeffs must hold dim_g entries", where + ".coeffs");
      for (size_t k = 0; k < e.at("coeffs").size(); ++k) {
        Number num = read_number(e.at("coeffs")[k], doc.exact,
                                 where + ".coeffs[" + std::to_string(k) + "]");
        entry.coeffs.push_back(num.value);
        if (doc.exact) entry.coeffs_exact.push_back(num.rat);
      }
      doc.brackets.push_back(std::move(entry));
    }
  }

  if (j.contains("isotropy_generators")) {
    if (!j.at("isotropy_generators").is_array())
      throw ParseError("isotropy_generators must be an array of dense blocks");
    for (size_t g = 0; g < j.at("isotropy_generators").size(); ++g) {
      const std::string where = "isotropy_generators[" + std::to_string(g) + "]";
      const json& blk = j.at("isotropy_generators")[g];
      if (!blk.is_array() || static_cast<int>(blk.size()) != m * m)
        throw ParseError("generator block must hold dim_m^2 entries", where);
      std::vector<double> vals;
      std::vector<Rational> rats;
      for (size_t idx = 0; idx < blk.size(); ++idx) {
        Number num = read_number(blk[idx], doc.exact, where + "[" + std::to_string(idx) + "]");
        vals.push_back(num.value);
        if (doc.exact) rats.push_back(num.rat);
      }
      doc.isotropy_generators.push_back(std::move(vals));
      if (doc.exact) doc.isotropy_generators_exact.push_back(std::move(rats));
    }
  }
  return normalize_document(std::move(doc));
}

SpaceDocument normalize_document(SpaceDocument doc) {
  auto zero_row = [&](const SpaceDocument::BracketEntry& e) {
    if (doc.exact) {
      for (const auto& r : e.coeffs_exact)
        if (!r.is_zero()) return false;
      return true;
    }
    for (double v : e.coeffs)
      if (v != 0.0) return false;
    return true;
  };
  doc.brackets.erase(std::remove_if(doc.brackets.begin(), doc.brackets.end(), zero_row),
                     doc.brackets.end());
  std::sort(doc.brackets.begin(), doc.brackets.end(),
            [](const SpaceDocument::BracketEntry& a, const SpaceDocument::BracketEntry& b) {
              return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
            });
  return doc;
}

std::string serialize_document(const SpaceDocument& doc) {
  ordered_json j;
  j["name"] = doc.name;
  j["dim_h"] = doc.dim_h;
  j["dim_m"] = doc.dim_m;
  ordered_json brackets = ordered_json::array();
  for (const auto& e : doc.brackets) {
    ordered_json entry;
    entry["i"] = e.i;
    entry["j"] = e.j;
    ordered_json coeffs = ordered_json::array();
    if (doc.exact)
      for (const auto& r : e.coeffs_exact) coeffs.push_back(r.str());
    else
      for (double v : e.coeffs) coeffs.push_back(v);
    entry["coeffs"] = std::move(coeffs);
    brackets.push_back(std::move(entry));
  }
  j["brackets"] = std::move(brackets);
  ordered_json metric = ordered_json::array();
  if (doc.exact)
    for (const auto& r : doc.metric_exact) metric.push_back(r.str());
  else
    for (double v : doc.metric) metric.push_back(v);
  j["metric"] = std::move(metric);
  if (!doc.isotropy_generators.empty()) {
    ordered_json gens = ordered_json::array();
    for (size_t g = 0; g < doc.isotropy_generators.size(); ++g) {
      ordered_json blk = ordered_json::array();
      if (doc.exact)
        for (const auto& r : doc.isotropy_generators_exact[g]) blk.push_back(r.str());
      else
        for (double v : doc.isotropy_generators[g]) blk.push_back(v);
      gens.push_back(std::move(blk));
    }
    j["isotropy_generators"] = std::move(gens);
  }
  if (doc.exact) j["exact"] = true;
  return j.dump();
}

}  // namespace rgw
