#include "rgw/codazzi.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace rgw {

namespace {

// Packed symmetric coordinates with off-diagonals weighted by sqrt(2), so
// that the Euclidean norm of the packed vector equals the Frobenius norm.
Vecd pack_frob(const Matd& a) {
  const int m = static_cast<int>(a.rows());
  Vecd v(detail::sym_count(m));
  const double w = std::sqrt(2.0);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) v(detail::sym_index(p, q, m)) = p == q ? a(p, q) : w * a(p, q);
  return v;
}

Matd unpack_frob(const Vecd& v, int m) {
  Matd a(m, m);
  const double w = std::sqrt(2.0);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      a(p, q) = p == q ? v(detail::sym_index(p, q, m)) : v(detail::sym_index(p, q, m)) / w;
      a(q, p) = a(p, q);
    }
  return a;
}

}  // namespace

SpectralDecomp spectral_decompose(const Matd& a, const Matd& gram, double cluster_tol) {
  if (a.rows() != gram.rows() || a.cols() != gram.cols())
    throw StructuralError("spectral_decompose: shape mismatch");
  if (!positive_definite(gram)) throw StructuralError("spectral_decompose: gram not positive-definite");

  const int n = static_cast<int>(a.rows());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matd> es(0.5 * (a + a.transpose()), gram,
                                                    Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigensolver failed");
  const Vecd ev = es.eigenvalues();  // ascending
  const Matd v = es.eigenvectors();  // gram-orthonormal columns

  const double spread = ev(n - 1) - ev(0);
  const double scale = std::max(1.0, std::abs(ev(0)) + std::abs(ev(n - 1)));

  std::vector<std::pair<int, int>> groups;  // [first, last] eigenvalue index
  if (spread <= cluster_tol * scale) {
    groups.emplace_back(0, n - 1);
  } else {
    int first = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || ev(i) - ev(i - 1) > cluster_tol * spread) {
        groups.emplace_back(first, i - 1);
        first = i;
      }
    }
  }

  SpectralDecomp d;
  d.r = static_cast<int>(groups.size());
  for (const auto& [lo, hi] : groups) {
    const int width = hi - lo + 1;
    d.lambdas.push_back(ev.segment(lo, width).mean());
    d.blocks.push_back(v.middleCols(lo, width));
    d.projectors.push_back(d.blocks.back() * d.blocks.back().transpose() * gram);
  }
  return d;
}

DecompCheck check_decomp(const SpectralDecomp& d, const Matd& a, const Matd& gram) {
  DecompCheck out;
  const int n = static_cast<int>(gram.rows());
  Matd all(n, n);
  int at = 0;
  for (const auto& b : d.blocks) {
    all.middleCols(at, b.cols()) = b;
    at += static_cast<int>(b.cols());
  }
  out.orthonormality = (all.transpose() * gram * all - Matd::Identity(n, n)).cwiseAbs().maxCoeff();
  Matd psum = Matd::Zero(n, n);
  for (const auto& p : d.projectors) psum += p;
  out.completeness = (psum - Matd::Identity(n, n)).cwiseAbs().maxCoeff();
  Matd rec = Matd::Zero(n, n);
  for (int i = 0; i < d.r; ++i)
    rec += d.lambdas[i] * gram * d.blocks[i] * d.blocks[i].transpose() * gram;
  out.reconstruction = (rec - 0.5 * (a + a.transpose())).cwiseAbs().maxCoeff();
  for (int i = 1; i < d.r; ++i) out.ordered = out.ordered && d.lambdas[i - 1] < d.lambdas[i];
  return out;
}

CompatReport check_compatibility(const MAlgebrad& alg, const Matd& gram,
                                 const SpectralDecomp& decomp, double tol) {
  CompatReport rep;
  constexpr size_t kMaxViolations = 64;
  for (int i = 0; i < decomp.r; ++i)
    for (int j = 0; j < decomp.r; ++j)
      for (int k = 0; k < decomp.r; ++k) {
        const double gik = decomp.lambdas[i] - decomp.lambdas[k];
        const double gji = decomp.lambdas[j] - decomp.lambdas[i];
        for (int a = 0; a < decomp.block_dim(i); ++a)
          for (int b = 0; b < decomp.block_dim(j); ++b)
            for (int c = 0; c < decomp.block_dim(k); ++c) {
              const Vecd x = decomp.blocks[i].col(a);
              const Vecd y = decomp.blocks[j].col(b);
              const Vecd z = decomp.blocks[k].col(c);
              const double t1 = alg.bracket(x, y).dot(gram * z);
              const double t2 = alg.bracket(x, z).dot(gram * y);
              const double res = gik * gik * t1 + gji * gji * t2;
              if (std::abs(res) > rep.max_residual) rep.max_residual = std::abs(res);
              if (std::abs(res) > tol) {
                rep.ok = false;
                if (rep.violations.size() < kMaxViolations)
                  rep.violations.push_back({i, j, k, a, b, c, std::abs(res)});
              }
            }
      }
  std::stable_sort(rep.violations.begin(), rep.violations.end(),
                   [](const CompatViolation& l, const CompatViolation& r) {
                     return l.residual > r.residual;
                   });
  return rep;
}

Matd construct_codazzi(const MAlgebrad& alg, const Matd& gram, const std::vector<Matd>& blocks,
                       const std::vector<double>& lambdas, double tol) {
  if (blocks.size() != lambdas.size())
    throw StructuralError("construct_codazzi: one lambda per block required");
  if (blocks.empty()) throw StructuralError("construct_codazzi: no blocks");
  const int n = alg.dim;

  const double scale = 1.0 + std::abs(*std::max_element(lambdas.begin(), lambdas.end(),
                                                        [](double a, double b) {
                                                          return std::abs(a) < std::abs(b);
                                                        }));
  for (size_t a = 0; a < lambdas.size(); ++a)
    for (size_t b = a + 1; b < lambdas.size(); ++b)
      if (std::abs(lambdas[a] - lambdas[b]) <= 1e-12 * scale)
        throw CodazziError("construct_codazzi: repeated eigenvalues");

  SpectralDecomp d;
  d.r = static_cast<int>(blocks.size());
  std::vector<int> order(blocks.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lambdas[a] < lambdas[b]; });

  int total = 0;
  for (int idx : order) {
    const Matd b = gram_orthonormalize(blocks[idx], gram);
    d.lambdas.push_back(lambdas[idx]);
    d.blocks.push_back(b);
    d.projectors.push_back(b * b.transpose() * gram);
    total += static_cast<int>(b.cols());
  }
  if (total != n) throw StructuralError("construct_codazzi: blocks must span m");

  double ortho = 0.0;
  for (int i = 0; i < d.r; ++i)
    for (int j = i + 1; j < d.r; ++j)
      ortho = std::max(ortho,
                       (d.blocks[i].transpose() * gram * d.blocks[j]).cwiseAbs().maxCoeff());
  if (ortho > tol) throw CodazziError("construct_codazzi: blocks not mutually gram-orthogonal");

  for (int i = 0; i < d.r; ++i)
    for (const auto& act : alg.h_action)
      for (int c = 0; c < d.blocks[i].cols(); ++c) {
        Vecd img = act * d.blocks[i].col(c);
        Vecd residual = img - d.projectors[i] * img;
        if (residual.norm() > tol)
          throw CodazziError("construct_codazzi: block not ad(h)-invariant");
      }

  CompatReport compat = check_compatibility(alg, gram, d, tol);
  if (!compat.ok) throw CompatibilityError(compat.violations.front());

  Matd a = Matd::Zero(n, n);
  for (int i = 0; i < d.r; ++i)
    a += d.lambdas[i] * gram * d.blocks[i] * d.blocks[i].transpose() * gram;
  return 0.5 * (a + a.transpose());
}

std::vector<Matd> order_form_basis(const std::vector<Matd>& forms, const Matd& gram) {
  if (forms.empty()) return {};
  const int m = static_cast<int>(gram.rows());
  Eigen::SelfAdjointEigenSolver<Matd> es(gram);
  const Matd gram_inv_sqrt = es.operatorInverseSqrt();
  const Matd gram_sqrt = es.operatorSqrt();

  // In transformed coordinates A~ = G^-1/2 A G^-1/2 the pairing is plain
  // Frobenius and gram itself becomes the identity.
  const double id_norm = std::sqrt(static_cast<double>(m));
  std::vector<Vecd> residuals;
  for (const auto& f : forms) {
    Matd t = gram_inv_sqrt * f * gram_inv_sqrt;
    t -= (t.trace() / m) * Matd::Identity(m, m);
    residuals.push_back(pack_frob(t));
  }
  Matd stacked(residuals[0].size(), static_cast<int>(residuals.size()));
  for (size_t c = 0; c < residuals.size(); ++c) stacked.col(static_cast<int>(c)) = residuals[c];

  // The span contains gram, so exactly |forms| - 1 directions survive after
  // removing the gram component; forcing that rank keeps pure-roundoff
  // residual columns from minting spurious directions.
  const int keep = static_cast<int>(forms.size()) - 1;
  std::vector<Matd> out;
  out.push_back(gram_sqrt * (Matd::Identity(m, m) / id_norm) * gram_sqrt);
  if (keep > 0) {
    Eigen::JacobiSVD<Matd> svd(stacked, Eigen::ComputeFullU);
    for (int c = 0; c < keep; ++c)
      out.push_back(gram_sqrt * unpack_frob(svd.matrixU().col(c), m) * gram_sqrt);
  }
  return out;
}

std::vector<Mat<Rational>> order_form_basis(const std::vector<Mat<Rational>>& forms,
                                            const Mat<Rational>& gram) {
  if (forms.empty()) return {};
  const Mat<Rational> gi = invert(gram);
  auto pairing = [&](const Mat<Rational>& a, const Mat<Rational>& b) {
    // tr(G^-1 A G^-1 B)
    Mat<Rational> prod = gi * a * gi * b;
    Rational tr(0);
    for (int i = 0; i < prod.rows(); ++i) tr += prod(i, i);
    return tr;
  };
  std::vector<Mat<Rational>> out;
  out.push_back(gram);
  for (const auto& f : forms) {
    Mat<Rational> h = f;
    for (const auto& acc : out) {
      const Rational coef = pairing(h, acc) / pairing(acc, acc);
      h -= coef * acc;
    }
    bool zero = true;
    Rational lead(0);
    for (int p = 0; p < h.rows() && zero; ++p)
      for (int q = 0; q < h.cols(); ++q)
        if (!h(p, q).is_zero()) {
          zero = false;
          lead = h(p, q);
          break;
        }
    if (zero) continue;
    out.push_back(h / lead);
  }
  return out;
}

double form_span_distance(const std::vector<Matd>& basis, const Matd& form) {
  if (basis.empty()) return pack_frob(form).norm();
  Matd stacked(pack_frob(basis[0]).size(), static_cast<int>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) stacked.col(static_cast<int>(c)) = pack_frob(basis[c]);
  const Matd q = orth_basis(stacked);
  return span_distance(q, pack_frob(form));
}

Classification classify(const Matd& form, const SpaceSpecd& spec, const ProductTabled& alpha,
                        double tol, double cluster_tol) {
  Classification out;
  out.codazzi_res = codazzi_residual(alpha, form).value;
  if (out.codazzi_res > tol)
    throw CodazziError("classify: form fails the Codazzi residual test");

  const MAlgebrad alg = project_algebra(spec);
  out.decomp = spectral_decompose(form, spec.gram, cluster_tol);
  out.r = out.decomp.r;

  Tensor3<double> nabla = covariant_differential(alpha, form);
  out.nabla_max = max_abs(nabla).value;
  out.parallel = out.nabla_max <= tol;

  // Mutually-distinct-triple criterion: <X_i, [Y_j, Z_k]_m> over block bases.
  for (int i = 0; i < out.r; ++i)
    for (int j = 0; j < out.r; ++j)
      for (int k = 0; k < out.r; ++k) {
        if (i == j || j == k || i == k) continue;
        for (int a = 0; a < out.decomp.block_dim(i); ++a)
          for (int b = 0; b < out.decomp.block_dim(j); ++b)
            for (int c = 0; c < out.decomp.block_dim(k); ++c) {
              const double v = out.decomp.blocks[i].col(a).dot(
                  spec.gram *
                  alg.bracket(out.decomp.blocks[j].col(b), out.decomp.blocks[k].col(c)));
              out.triple_max = std::max(out.triple_max, std::abs(v));
            }
      }
  const bool nonparallel_by_triples = out.triple_max > tol;
  out.criteria_agree = (!out.parallel) == nonparallel_by_triples;
  out.r_rule_ok = out.parallel || out.r >= 3;

  if (!out.parallel) {
    for (int i = 0; i < out.r; ++i) {
      double res = 0.0;
      if (is_ideal(alg, out.decomp.blocks[i], tol, &res)) out.ideal_eigenspaces.push_back(i);
    }
    out.essential = out.ideal_eigenspaces.empty();
  }
  return out;
}

Vecd eigen_alpha_pair(const MAlgebrad& alg, const SpectralDecomp& decomp, int i, int j,
                      const Vecd& x, const Vecd& y) {
  if (i == j)
    throw std::invalid_argument("eigen_alpha_pair: formula undefined for i == j");
  if (i < 0 || i >= decomp.r || j < 0 || j >= decomp.r)
    throw std::out_of_range("eigen_alpha_pair: block index out of range");
  const Vecd bracket = alg.bracket(x, y);
  Vecd out = Vecd::Zero(alg.dim);
  const double denom = decomp.lambdas[i] - decomp.lambdas[j];
  for (int k = 0; k < decomp.r; ++k)
    out += ((decomp.lambdas[i] - decomp.lambdas[k]) / denom) * (decomp.projectors[k] * bracket);
  return out;
}

double eigen_alpha_residual(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& decomp,
                            const ProductTabled& alpha, double tol) {
  CompatReport compat = check_compatibility(alg, gram, decomp, tol);
  if (!compat.ok) throw CompatibilityError(compat.violations.front());
  // Compared with denominators cleared, (l_i - l_j) alpha(X_i, Y_j) vs
  // sum_k (l_i - l_k) [X_i, Y_j]_k, normalized by the spread. Inside a
  // nearly degenerate eigenvalue pair the two projector errors enter with
  // coefficients differing by exactly the tiny gap, so the roundoff
  // amplification of the quotient form cancels here.
  double worst = 0.0;
  const double spread =
      decomp.r > 1 ? decomp.lambdas.back() - decomp.lambdas.front() : 1.0;
  for (int i = 0; i < decomp.r; ++i)
    for (int j = 0; j < decomp.r; ++j) {
      if (i == j) continue;
      const double gap = decomp.lambdas[i] - decomp.lambdas[j];
      for (int a = 0; a < decomp.block_dim(i); ++a)
        for (int b = 0; b < decomp.block_dim(j); ++b) {
          const Vecd x = decomp.blocks[i].col(a);
          const Vecd y = decomp.blocks[j].col(b);
          const Vecd bracket = alg.bracket(x, y);
          Vecd rhs = Vecd::Zero(alg.dim);
          for (int k = 0; k < decomp.r; ++k)
            rhs += (decomp.lambdas[i] - decomp.lambdas[k]) * (decomp.projectors[k] * bracket);
          const Vecd lhs = gap * alpha.apply(x, y);
          worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / spread);
        }
    }
  return worst;
}

SkewRepReport skew_representation_check(const MAlgebrad& alg, const Matd& gram,
                                        const SpectralDecomp& decomp, int k, double tol) {
  if (k < 0 || k >= decomp.r)
    throw std::out_of_range("skew_representation_check: block index out of range");
  CompatReport compat = check_compatibility(alg, gram, decomp, tol);
  if (!compat.ok) throw CompatibilityError(compat.violations.front());

  SkewRepReport rep;
  const int n = alg.dim;

  // Matrix of <<.,.>>_k = sum_j (delta_jk + (l_j - l_k)^2) <(.)_j, (.)_j>.
  Matd w = Matd::Zero(n, n);
  for (int j = 0; j < decomp.r; ++j) {
    const double gap = decomp.lambdas[j] - decomp.lambdas[k];
    const double coef = (j == k ? 1.0 : 0.0) + gap * gap;
    w += coef * gram * decomp.blocks[j] * decomp.blocks[j].transpose() * gram;
  }

  const Matd perp = decomp.perp_basis(k);
  for (int zc = 0; zc < decomp.block_dim(k); ++zc) {
    const Vecd z = decomp.blocks[k].col(zc);
    for (int a = 0; a < perp.cols(); ++a)
      for (int b = 0; b <= a; ++b) {
        const Vecd x = perp.col(a);
        const Vecd y = perp.col(b);
        const double s = alg.bracket(z, x).dot(w * y) + x.dot(w * alg.bracket(z, y));
        rep.skew_residual = std::max(rep.skew_residual, std::abs(s));
      }
    if (perp.cols() > 0) {
      const Matd op = perp.transpose() * gram * alg.ad(z) * perp;
      Eigen::EigenSolver<Matd> es(op);
      for (int e = 0; e < es.eigenvalues().size(); ++e) {
        rep.spectrum.push_back(es.eigenvalues()(e));
        rep.max_abs_real = std::max(rep.max_abs_real, std::abs(es.eigenvalues()(e).real()));
      }
    }
  }
  rep.ok = rep.skew_residual <= tol && rep.max_abs_real <= tol;
  return rep;
}

}  // namespace rgw
