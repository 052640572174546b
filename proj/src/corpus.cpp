#include "rgw/document.hpp"

#include <algorithm>

namespace rgw {

namespace {

struct DocBuilder {
  SpaceDocument doc;

  DocBuilder(const std::string& name, int dim_h, int dim_m) {
    doc.name = name;
    doc.dim_h = dim_h;
    doc.dim_m = dim_m;
    doc.exact = true;
    doc.metric.assign(static_cast<size_t>(dim_m) * dim_m, 0.0);
    doc.metric_exact.assign(static_cast<size_t>(dim_m) * dim_m, Rational(0));
    for (int i = 0; i < dim_m; ++i) set_metric(i, i, Rational(1));
  }

  void set_metric(int r, int c, const Rational& v) {
    doc.metric[r * doc.dim_m + c] = v.to_double();
    doc.metric_exact[r * doc.dim_m + c] = v;
    doc.metric[c * doc.dim_m + r] = v.to_double();
    doc.metric_exact[c * doc.dim_m + r] = v;
  }

  // 1-based combined-basis indices; components sparse as (k, value).
  void bracket(int i, int j, std::initializer_list<std::pair<int, Rational>> comps) {
    SpaceDocument::BracketEntry e;
    e.i = i;
    e.j = j;
    e.coeffs.assign(doc.dim_g(), 0.0);
    e.coeffs_exact.assign(doc.dim_g(), Rational(0));
    for (const auto& [k, v] : comps) {
      e.coeffs[k - 1] = v.to_double();
      e.coeffs_exact[k - 1] = v;
    }
    doc.brackets.push_back(std::move(e));
  }

  SpaceDocument take() { return normalize_document(std::move(doc)); }
};

// so(n+1) over the basis L_ab = E_ab - E_ba (a < b), ordered with the
// stabilizer so(n) of the first axis first and the m-part {L_0q} last.
SpaceDocument sphere_document(const std::string& name, int n) {
  std::vector<std::pair<int, int>> basis;  // (a, b), 0-based, a < b
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) basis.emplace_back(a, b);
  const int dim_h = static_cast<int>(basis.size());
  for (int b = 1; b <= n; ++b) basis.emplace_back(0, b);
  const int total = static_cast<int>(basis.size());

  DocBuilder builder(name, dim_h, n);
  auto entry = [&](int p, int q, int r, int c) -> long long {
    // entry (r, c) of L_{pq}
    if (r == p && c == q) return 1;
    if (r == q && c == p) return -1;
    return 0;
  };
  for (int x = 0; x < total; ++x)
    for (int y = x + 1; y < total; ++y) {
      const auto [a, b] = basis[x];
      const auto [c, d] = basis[y];
      std::vector<std::pair<int, Rational>> comps;
      for (int z = 0; z < total; ++z) {
        const auto [p, q] = basis[z];
        // Coefficient of L_pq in [L_ab, L_cd] is the (p, q) entry of the
        // matrix commutator: basis matrices have disjoint supports.
        long long v = 0;
        for (int k = 0; k <= n; ++k)
          v += entry(a, b, p, k) * entry(c, d, k, q) - entry(c, d, p, k) * entry(a, b, k, q);
        if (v != 0) comps.emplace_back(z + 1, Rational(v));
      }
      if (!comps.empty()) {
        SpaceDocument::BracketEntry e;
        e.i = x + 1;
        e.j = y + 1;
        e.coeffs.assign(total, 0.0);
        e.coeffs_exact.assign(total, Rational(0));
        for (const auto& [k, value] : comps) {
          e.coeffs[k - 1] = value.to_double();
          e.coeffs_exact[k - 1] = value;
        }
        builder.doc.brackets.push_back(std::move(e));
      }
    }
  return builder.take();
}

SpaceDocument su2_document(const std::string& name, Rational g1, Rational g2, Rational g3) {
  DocBuilder b(name, 0, 3);
  b.bracket(1, 2, {{3, Rational(1)}});
  b.bracket(2, 3, {{1, Rational(1)}});
  b.bracket(1, 3, {{2, Rational(-1)}});
  b.set_metric(0, 0, g1);
  b.set_metric(1, 1, g2);
  b.set_metric(2, 2, g3);
  return b.take();
}

}  // namespace

std::vector<SpaceDocument> builtin_corpus() {
  std::vector<SpaceDocument> docs;

  {
    DocBuilder b("abelian_r2", 0, 2);
    docs.push_back(b.take());
  }
  {
    DocBuilder b("abelian_r3", 0, 3);
    docs.push_back(b.take());
  }
  {
    DocBuilder b("heisenberg3", 0, 3);
    b.bracket(1, 2, {{3, Rational(1)}});
    docs.push_back(b.take());
  }
  {
    // [e1, e2] = e2: solvable, not nilpotent, not unimodular.
    DocBuilder b("solvable_aff", 0, 2);
    b.bracket(1, 2, {{2, Rational(1)}});
    docs.push_back(b.take());
  }
  {
    // Spec of the round 2-sphere with one isotropy rotation written out:
    // h = f1, m = {f2, f3}; [h,e1] = e2, [h,e2] = -e1, [e1,e2] = h.
    DocBuilder b("sphere_s2", 1, 2);
    b.bracket(1, 2, {{3, Rational(1)}});
    b.bracket(1, 3, {{2, Rational(-1)}});
    b.bracket(2, 3, {{1, Rational(1)}});
    docs.push_back(b.take());
  }
  docs.push_back(sphere_document("sphere_s3", 3));
  docs.push_back(su2_document("su2_bi", Rational(1), Rational(1), Rational(1)));
  docs.push_back(su2_document("su2_berger", Rational(1), Rational(1), Rational(2)));
  // diag(1,1,4) satisfies sqrt(g3) = sqrt(g1) + sqrt(g2), which is exactly
  // the regime carrying a nonparallel (in fact essential) Codazzi tensor.
  docs.push_back(su2_document("su2_squashed", Rational(1), Rational(1), Rational(4)));

  std::sort(docs.begin(), docs.end(),
            [](const SpaceDocument& a, const SpaceDocument& b) { return a.name < b.name; });
  return docs;
}

}  // namespace rgw
