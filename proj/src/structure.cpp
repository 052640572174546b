#include "rgw/structure.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace rgw {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_interval(uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

enum class NodeResult { success, dead_end, inconclusive };

// Depth-first construction of a chain of codimension-one ideals. Every
// hyperplane containing the derived subalgebra is automatically an ideal
// (the one-dimensional quotient product vanishes by antisymmetry), so the
// search space at each node is the set of hyperplanes between the derived
// subalgebra and the node. A node whose derived subalgebra is the whole
// node is a hard obstruction; with several complement directions the finite
// enumeration cannot exhaust all hyperplanes, so failures below the top are
// only conclusive when the hyperplane was forced.
struct ChainSearch {
  const MAlgebrad& alg;
  double tol;
  int budget = 256;
  std::vector<Matd> chain;

  explicit ChainSearch(const MAlgebrad& a, double t) : alg(a), tol(t) {}

  NodeResult run(const Matd& basis) {
    if (--budget < 0) return NodeResult::inconclusive;
    const int d = static_cast<int>(basis.cols());
    if (d == 0) return NodeResult::success;

    Matd gens(basis.rows(), d * (d - 1) / 2);
    int at = 0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) gens.col(at++) = alg.bracket(basis.col(a), basis.col(b));
    // Work in node-local coordinates; the generators lie in the node span
    // because every node on the path is bracket-closed.
    const Matd local = basis.transpose() * gens;
    const Matd derived = orth_basis(local);
    const int dd = static_cast<int>(derived.cols());
    if (dd == d) return NodeResult::dead_end;

    Matd comp;
    if (dd == 0) {
      comp = Matd::Identity(d, d);
    } else {
      Eigen::JacobiSVD<Matd> svd(derived, Eigen::ComputeFullU);
      comp = svd.matrixU().rightCols(d - dd);
    }
    const int c = static_cast<int>(comp.cols());
    bool any_inconclusive = false;
    for (int drop = 0; drop < c; ++drop) {
      Matd keep(d, d - 1);
      keep.leftCols(dd) = derived;
      int k = dd;
      for (int t = 0; t < c; ++t)
        if (t != drop) keep.col(k++) = comp.col(t);
      const Matd sub = basis * keep;  // ambient coordinates, orthonormal
      chain.push_back(sub);
      const NodeResult res = run(sub);
      if (res == NodeResult::success) return res;
      chain.pop_back();
      if (res == NodeResult::inconclusive) any_inconclusive = true;
      if (budget < 0) return NodeResult::inconclusive;
    }
    if (c == 1 && !any_inconclusive) return NodeResult::dead_end;
    return NodeResult::inconclusive;
  }
};

}  // namespace

SolvableVerdict is_split_solvable(const MAlgebrad& alg, double tol) {
  SolvableVerdict v;
  const int n = alg.dim;

  // Necessary condition: real characteristic roots of every ad_m(X). Probe
  // the basis directions plus seeded generic combinations.
  std::vector<Vecd> probes;
  for (int i = 0; i < n; ++i) {
    Vecd e = Vecd::Zero(n);
    e(i) = 1.0;
    probes.push_back(e);
  }
  uint64_t rng = 0x5eed5eed5eed5eedull;
  for (int t = 0; t < 8; ++t) {
    Vecd x(n);
    for (int i = 0; i < n; ++i) x(i) = 2.0 * unit_interval(rng) - 1.0;
    if (x.norm() > 1e-8) probes.push_back(x / x.norm());
  }
  for (const auto& x : probes) {
    const Matd ad = alg.ad(x);
    const double scale = 1.0 + ad.cwiseAbs().maxCoeff();
    Eigen::EigenSolver<Matd> es(ad, false);
    for (int e = 0; e < es.eigenvalues().size(); ++e) {
      const std::complex<double> ev = es.eigenvalues()(e);
      if (std::abs(ev.imag()) > tol * scale) {
        v.result = SolvableVerdict::Result::no;
        v.witness_kind = SolvableVerdict::WitnessKind::complex_spectrum;
        v.witness_direction = x;
        v.witness_eigenvalue = ev;
        return v;
      }
    }
  }

  ChainSearch search(alg, tol);
  const NodeResult res = search.run(Matd::Identity(n, n));
  switch (res) {
    case NodeResult::success:
      v.result = SolvableVerdict::Result::yes;
      v.chain = search.chain;
      if (!v.chain.empty() && v.chain.back().cols() == 0) v.chain.pop_back();
      break;
    case NodeResult::dead_end:
      // Conclusive at the top: no codimension-one ideal chain exists.
      v.result = SolvableVerdict::Result::no;
      v.witness_kind = SolvableVerdict::WitnessKind::perfect_algebra;
      break;
    case NodeResult::inconclusive:
      v.result = SolvableVerdict::Result::undetermined;
      break;
  }
  return v;
}

double verify_solvable_chain(const MAlgebrad& alg, const std::vector<Matd>& chain) {
  const int n = alg.dim;
  Matd pred = Matd::Identity(n, n);
  double worst = 0.0;
  for (const auto& member : chain) {
    if (member.cols() != pred.cols() - 1) return std::numeric_limits<double>::infinity();
    const Matd s = orth_basis(member);
    if (s.cols() != member.cols()) return std::numeric_limits<double>::infinity();
    for (int c = 0; c < s.cols(); ++c)
      worst = std::max(worst, span_distance(orth_basis(pred), s.col(c)));
    for (int p = 0; p < pred.cols(); ++p)
      for (int c = 0; c < s.cols(); ++c)
        worst = std::max(worst, span_distance(s, alg.bracket(pred.col(p), s.col(c))));
    pred = member;
  }
  if (!chain.empty() && chain.back().cols() != 1) return std::numeric_limits<double>::infinity();
  if (chain.empty() && n != 1) return std::numeric_limits<double>::infinity();
  return worst;
}

}  // namespace rgw
