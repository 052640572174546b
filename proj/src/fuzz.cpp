#include "rgw/fuzz.hpp"

#include <Eigen/QR>

#include <cmath>

#include "rgw/structure.hpp"

namespace rgw {

namespace {

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t s) : state(s) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int pick(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

struct RawSpace {
  std::string family;
  int dim_h = 0;
  int dim_m = 0;
  Tensor3<double> structure;  // over the combined basis
  Matd gram;
};

RawSpace raw(const std::string& family, int dim_h, int dim_m) {
  RawSpace s;
  s.family = family;
  s.dim_h = dim_h;
  s.dim_m = dim_m;
  const int n = dim_h + dim_m;
  s.structure = Tensor3<double>(n, n, n);
  s.gram = Matd::Identity(dim_m, dim_m);
  return s;
}

void set_bracket(RawSpace& s, int i, int j, int k, double v) {
  s.structure(i, j, k) = v;
  s.structure(j, i, k) = -v;
}

RawSpace abelian(int m) { return raw("abelian", 0, m); }

RawSpace heisenberg_sum(int m, Rng& rng) {
  // heis(2k+1) + abelian remainder
  const int max_k = (m - 1) / 2;
  const int k = 1 + rng.pick(max_k);
  RawSpace s = raw("heisenberg_sum", 0, m);
  for (int p = 0; p < k; ++p) set_bracket(s, 2 * p, 2 * p + 1, 2 * k, 1.0);
  return s;
}

RawSpace almost_abelian(int m, Rng& rng, bool rotation_block) {
  // [e1, v] = M v on span{e2..em}; Jacobi is automatic.
  RawSpace s = raw(rotation_block ? "almost_abelian_rot" : "almost_abelian_tri", 0, m);
  const int d = m - 1;
  Matd mat = Matd::Zero(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c)
      if (c == r || rng.uniform01() < 0.6) mat(r, c) = std::round(rng.uniform(-2.0, 2.0) * 4.0) / 4.0;
  if (rotation_block && d >= 2) {
    const double w = 0.25 + std::round(rng.uniform(0.0, 2.0) * 4.0) / 4.0;
    mat(0, 0) = 0.0;
    mat(0, 1) = -w;
    mat(1, 0) = w;
    mat(1, 1) = 0.0;
  }
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (mat(r, c) != 0.0) set_bracket(s, 0, 1 + c, 1 + r, mat(r, c));
  return s;
}

RawSpace su2_sum(int m) {
  RawSpace s = raw("su2_sum", 0, m);
  set_bracket(s, 0, 1, 2, 1.0);
  set_bracket(s, 1, 2, 0, 1.0);
  set_bracket(s, 2, 0, 1, 1.0);
  return s;
}

RawSpace sphere_s2() {
  RawSpace s = raw("sphere_s2", 1, 2);
  set_bracket(s, 0, 1, 2, 1.0);
  set_bracket(s, 0, 2, 1, -1.0);
  set_bracket(s, 1, 2, 0, 1.0);
  return s;
}

RawSpace sphere_s3() {
  // so(4), stabilizer of the first axis first; commutators of L_ab.
  std::vector<std::pair<int, int>> basis = {{1, 2}, {1, 3}, {2, 3}, {0, 1}, {0, 2}, {0, 3}};
  RawSpace s = raw("sphere_s3", 3, 3);
  auto entry = [](std::pair<int, int> pq, int r, int c) -> double {
    if (r == pq.first && c == pq.second) return 1.0;
    if (r == pq.second && c == pq.first) return -1.0;
    return 0.0;
  };
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      for (int z = 0; z < 6; ++z) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k)
          v += entry(basis[x], basis[z].first, k) * entry(basis[y], k, basis[z].second) -
               entry(basis[y], basis[z].first, k) * entry(basis[x], k, basis[z].second);
        s.structure(x, y, z) = v;
      }
  return s;
}

RawSpace heis_center_quotient() {
  // Heisenberg with h = the center: bracket lands in h, h acts trivially.
  RawSpace s = raw("heis_center", 1, 2);
  set_bracket(s, 1, 2, 0, 1.0);
  return s;
}

RawSpace so4_line() {
  // so(4) with h = span{L_34}: the projected bracket on the 5-dimensional
  // complement is not a Lie algebra, so R^0 must fail the Bianchi identity.
  std::vector<std::pair<int, int>> basis = {{2, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  RawSpace s = raw("so4_line", 1, 5);
  auto entry = [](std::pair<int, int> pq, int r, int c) -> double {
    if (r == pq.first && c == pq.second) return 1.0;
    if (r == pq.second && c == pq.first) return -1.0;
    return 0.0;
  };
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      for (int z = 0; z < 6; ++z) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k)
          v += entry(basis[x], basis[z].first, k) * entry(basis[y], k, basis[z].second) -
               entry(basis[y], basis[z].first, k) * entry(basis[x], k, basis[z].second);
        s.structure(x, y, z) = v;
      }
  return s;
}

RawSpace su2_codazzi(Rng& rng) {
  RawSpace s = su2_sum(3);
  s.family = "su2_codazzi";
  const double a = rng.uniform(0.6, 1.6);
  const double b = rng.uniform(0.6, 1.6);
  s.gram = Matd::Zero(3, 3);
  s.gram(0, 0) = a * a;
  s.gram(1, 1) = b * b;
  s.gram(2, 2) = (a + b) * (a + b);
  return s;
}

RawSpace su2su2_codazzi(Rng& rng) {
  // Two squashed su(2) factors: eigenspaces of the diagonal Codazzi family
  // sit inside one factor and are never ideals, so nonparallel solutions
  // here are essential even above dimension 3.
  RawSpace s = raw("su2su2_codazzi", 0, 6);
  for (int base : {0, 3}) {
    set_bracket(s, base + 0, base + 1, base + 2, 1.0);
    set_bracket(s, base + 1, base + 2, base + 0, 1.0);
    set_bracket(s, base + 2, base + 0, base + 1, 1.0);
  }
  s.gram = Matd::Identity(6, 6);
  for (int base : {0, 3}) {
    const double a = rng.uniform(0.6, 1.6);
    const double b = rng.uniform(0.6, 1.6);
    s.gram(base + 0, base + 0) = a * a;
    s.gram(base + 1, base + 1) = b * b;
    s.gram(base + 2, base + 2) = (a + b) * (a + b);
  }
  return s;
}

RawSpace su2_codazzi_sum(int m, Rng& rng) {
  // su(2) in the Codazzi-admitting regime plus an abelian factor: the
  // abelian directions become ideal eigenspaces, so nonparallel solutions
  // here are not essential.
  RawSpace s = su2_codazzi(rng);
  s.family = "su2_codazzi_sum";
  s.dim_m = m;
  const Tensor3<double> su2 = s.structure;
  s.structure = Tensor3<double>(m, m, m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s.structure(i, j, k) = su2(i, j, k);
  Matd g = Matd::Identity(m, m);
  g.topLeftCorner(3, 3) = s.gram;
  for (int i = 3; i < m; ++i) g(i, i) = rng.uniform(0.5, 2.0);
  s.gram = g;
  return s;
}

Matd random_basis_change(int d, Rng& rng) {
  Matd a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Matd> qr(a);
  Matd q = qr.householderQ();
  Matd scale = Matd::Identity(d, d);
  for (int i = 0; i < d; ++i) scale(i, i) = rng.uniform(0.6, 1.6);
  return q * scale;
}

void apply_basis_change(RawSpace& s, const Matd& q_m, Rng& rng) {
  const int n = s.dim_h + s.dim_m;
  Matd full = Matd::Identity(n, n);
  full.bottomRightCorner(s.dim_m, s.dim_m) = q_m;
  if (s.dim_h > 0) full.topLeftCorner(s.dim_h, s.dim_h) = random_basis_change(s.dim_h, rng);
  const Matd inv = full.inverse();
  Tensor3<double> out(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vecd img = Vecd::Zero(n);
      for (int p = 0; p < n; ++p) {
        if (full(p, i) == 0.0) continue;
        for (int q = 0; q < n; ++q) {
          if (full(q, j) == 0.0) continue;
          for (int r = 0; r < n; ++r) img(r) += full(p, i) * full(q, j) * s.structure(p, q, r);
        }
      }
      const Vecd local = inv * img;
      for (int k = 0; k < n; ++k) out(i, j, k) = local(k);
    }
  s.structure = std::move(out);
  s.gram = q_m.transpose() * s.gram * q_m;
}

// Random SPD with condition number capped at 1e3, rescaled to unit largest
// eigenvalue so residual magnitudes stay comparable across instances.
Matd random_spd(int d, Rng& rng) {
  Matd f(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) f(r, c) = rng.uniform(-1.0, 1.0);
  Matd g = f.transpose() * f;
  Eigen::SelfAdjointEigenSolver<Matd> es(g);
  const double hi = es.eigenvalues().maxCoeff();
  const double lo = es.eigenvalues().minCoeff();
  const double kappa = 1e3;
  if (hi <= 0.0) return Matd::Identity(d, d);
  const double shift = std::max(0.0, (hi - kappa * lo) / (kappa - 1.0));
  g += (shift + 1e-6 * hi) * Matd::Identity(d, d);
  return g / Eigen::SelfAdjointEigenSolver<Matd>(g).eigenvalues().maxCoeff();
}

SpaceDocument to_document(const RawSpace& s, const std::string& name) {
  SpaceDocument doc;
  doc.name = name;
  doc.dim_h = s.dim_h;
  doc.dim_m = s.dim_m;
  const int n = s.dim_h + s.dim_m;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SpaceDocument::BracketEntry e;
      e.i = i + 1;
      e.j = j + 1;
      e.coeffs.assign(n, 0.0);
      for (int k = 0; k < n; ++k) e.coeffs[k] = s.structure(i, j, k);
      doc.brackets.push_back(std::move(e));
    }
  // Emit an exactly symmetric metric: basis changes leave the two triangles
  // equal only up to roundoff, and the document schema demands equality.
  doc.metric.assign(static_cast<size_t>(s.dim_m) * s.dim_m, 0.0);
  for (int r = 0; r < s.dim_m; ++r)
    for (int c = r; c < s.dim_m; ++c) {
      const double v = r == c ? s.gram(r, c) : 0.5 * (s.gram(r, c) + s.gram(c, r));
      doc.metric[r * s.dim_m + c] = v;
      doc.metric[c * s.dim_m + r] = v;
    }
  return normalize_document(std::move(doc));
}

SpaceDocument make_instance(uint64_t seed, int index, int dim_m) {
  Rng rng(seed * 0x100000001b3ull + static_cast<uint64_t>(index) * 0x9e3779b97f4a7c15ull + 1);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<int> families;  // weighted candidates for this dimension
    families.push_back(0);      // abelian
    if (dim_m >= 3) families.insert(families.end(), {1, 1});       // heisenberg
    if (dim_m >= 2) families.insert(families.end(), {2, 2, 2});    // almost abelian (real)
    if (dim_m >= 3) families.push_back(3);                         // almost abelian (rotation)
    if (dim_m >= 3) families.insert(families.end(), {4, 4});       // su2 + abelian
    if (dim_m == 3) families.insert(families.end(), {5, 5, 5});    // su2 Codazzi metric
    if (dim_m == 2) families.insert(families.end(), {6, 6, 7});    // S^2, heis/center
    if (dim_m == 3) families.insert(families.end(), {8, 8});       // S^3
    if (dim_m == 5) families.insert(families.end(), {9, 9});       // so(4)/line
    if (dim_m >= 4) families.insert(families.end(), {10, 10});     // su2 Codazzi + abelian
    if (dim_m == 6) families.insert(families.end(), {11, 11});     // two squashed su(2) factors

    RawSpace s = abelian(dim_m);
    switch (families[rng.pick(static_cast<int>(families.size()))]) {
      case 0: s = abelian(dim_m); break;
      case 1: s = heisenberg_sum(dim_m, rng); break;
      case 2: s = almost_abelian(dim_m, rng, false); break;
      case 3: s = almost_abelian(dim_m, rng, true); break;
      case 4: s = su2_sum(dim_m); break;
      case 5: s = su2_codazzi(rng); break;
      case 6: s = sphere_s2(); break;
      case 7: s = heis_center_quotient(); break;
      case 8: s = sphere_s3(); break;
      case 9: s = so4_line(); break;
      case 10: s = su2_codazzi_sum(dim_m, rng); break;
      case 11: s = su2su2_codazzi(rng); break;
    }

    const bool special_metric = s.family == "su2_codazzi" || s.family == "su2_codazzi_sum" ||
                                s.family == "su2su2_codazzi";
    if (s.dim_h == 0 && !special_metric) s.gram = random_spd(s.dim_m, rng);
    if (rng.uniform01() < 0.7) apply_basis_change(s, random_basis_change(s.dim_m, rng), rng);

    if (s.dim_h > 0) {
      // Sample the metric inside the invariant cone around the identity.
      SpaceDocument probe = to_document(s, "probe");
      const std::vector<Matd> inv = invariant_symmetric_forms(probe.to_spec());
      Matd g = s.gram;
      for (const auto& b : inv) g += 0.25 * rng.uniform(-1.0, 1.0) * b;
      if (positive_definite(g)) s.gram = g;
    }

    SpaceDocument doc =
        to_document(s, "fuzz-s" + std::to_string(seed) + "-i" + std::to_string(index) + "-" +
                           s.family);
    try {
      if (validate_space(doc.to_spec()).valid) return doc;
    } catch (const StructuralError&) {
    }
    rng.next();  // perturb the stream and retry
  }
  return to_document(abelian(dim_m), "fuzz-s" + std::to_string(seed) + "-i" +
                                         std::to_string(index) + "-abelian");
}

}  // namespace

std::vector<SpaceDocument> fuzz_instances(uint64_t seed, int count, int dim_m) {
  if (dim_m < 1 || dim_m > 8)
    throw std::invalid_argument("fuzz_instances: dim_m must lie in [1, 8]");
  if (count < 0) throw std::invalid_argument("fuzz_instances: negative count");
  std::vector<SpaceDocument> docs;
  docs.reserve(count);
  for (int i = 0; i < count; ++i) docs.push_back(make_instance(seed, i, dim_m));
  return docs;
}

}  // namespace rgw
