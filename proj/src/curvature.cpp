#include "rgw/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace rgw {

double sectional(const CurvTensord& r, const Matd& gram, const Vecd& u, const Vecd& v,
                 double tol) {
  const double un2 = u.dot(gram * u);
  if (un2 <= tol) throw DependentVectors();
  const Vecd x = u / std::sqrt(un2);
  Vecd w = v - v.dot(gram * x) * x;
  const double wn2 = w.dot(gram * w);
  if (wn2 <= tol * std::max(1.0, v.dot(gram * v))) throw DependentVectors();
  const Vecd y = w / std::sqrt(wn2);
  return r.apply(x, y, y).dot(gram * x);
}

double sec_d_direct(const CurvTensord& rd, const Matd& gram, const Vecd& x, const Vecd& y) {
  return rd.apply(x, y, y).dot(gram * x);
}

double sec_d_eigenformula(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d, int i,
                          int j, const Vecd& x, const Vecd& y) {
  if (i == j) throw std::invalid_argument("sec_d_eigenformula: requires i != j");
  if (i < 0 || i >= d.r || j < 0 || j >= d.r)
    throw std::out_of_range("sec_d_eigenformula: block index out of range");
  const Vecd bracket = alg.bracket(x, y);
  const double denom = d.lambdas[i] - d.lambdas[j];
  double sum = 0.0;
  for (int k = 0; k < d.r; ++k) {
    if (k == j) continue;
    const Vecd bk = d.projectors[k] * bracket;
    sum += (d.lambdas[i] - d.lambdas[k]) * (d.lambdas[j] - d.lambdas[k]) * bk.dot(gram * bk);
  }
  return 2.0 / (denom * denom) * sum;
}

NatRedReport naturally_reductive_check(const SpaceSpecd& spec, double tol) {
  NatRedReport rep;
  const MAlgebrad alg = project_algebra(spec);
  rep.identity_residual = naturally_reductive_residual(alg, spec.gram).value;
  rep.naturally_reductive = rep.identity_residual <= tol;
  if (!rep.naturally_reductive) return rep;

  const ProductTabled alpha = levi_civita_product(spec);
  const CurvTensord r = curvature(alg, alpha);
  const CurvTensord r0 = curvature(alg, canonical_product<double>(alg.dim));
  const CurvTensord rd = difference_curvature(r, r0);

  const Matd frame = gram_orthonormalize(Matd::Identity(alg.dim, alg.dim), spec.gram);
  rep.kd_min = alg.dim > 1 ? std::numeric_limits<double>::max() : 0.0;
  for (int a = 0; a < alg.dim; ++a)
    for (int b = a + 1; b < alg.dim; ++b) {
      const Vecd x = frame.col(a);
      const Vecd y = frame.col(b);
      const double kd = sec_d_direct(rd, spec.gram, x, y);
      const Vecd br = alg.bracket(x, y);
      const double predicted = br.dot(spec.gram * br) / 4.0;
      rep.kd_formula_residual = std::max(rep.kd_formula_residual, std::abs(kd - predicted));
      rep.kd_min = std::min(rep.kd_min, kd);
    }
  return rep;
}

namespace {

// Max |<X_i,[Y_j,Z_k]>| over mutually distinct block triples; zero means
// the underlying Codazzi tensor is parallel.
double mutually_distinct_triple_max(const MAlgebrad& alg, const Matd& gram,
                                    const SpectralDecomp& d) {
  double worst = 0.0;
  for (int i = 0; i < d.r; ++i)
    for (int j = 0; j < d.r; ++j)
      for (int k = 0; k < d.r; ++k) {
        if (i == j || j == k || i == k) continue;
        for (int a = 0; a < d.block_dim(i); ++a)
          for (int b = 0; b < d.block_dim(j); ++b)
            for (int c = 0; c < d.block_dim(k); ++c) {
              const double v = d.blocks[i].col(a).dot(
                  gram * alg.bracket(d.blocks[j].col(b), d.blocks[k].col(c)));
              worst = std::max(worst, std::abs(v));
            }
      }
  return worst;
}

bool partial_sum_subalgebra(const MAlgebrad& alg, const SpectralDecomp& d, int upto,
                            double tol) {
  int cols = 0;
  for (int i = 0; i < upto; ++i) cols += d.block_dim(i);
  Matd s(d.dim(), cols);
  int at = 0;
  for (int i = 0; i < upto; ++i) {
    s.middleCols(at, d.block_dim(i)) = d.blocks[i];
    at += d.block_dim(i);
  }
  return is_subalgebra(alg, s, tol);
}

bool pair_subalgebra(const MAlgebrad& alg, const SpectralDecomp& d, int mu, int nu, double tol) {
  Matd s(d.dim(), d.block_dim(mu) + d.block_dim(nu));
  s.leftCols(d.block_dim(mu)) = d.blocks[mu];
  s.rightCols(d.block_dim(nu)) = d.blocks[nu];
  return is_subalgebra(alg, s, tol);
}

}  // namespace

KdSignSearch kd_sign_search(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                            const CurvTensord& rd, double tol) {
  KdSignSearch out;
  if (mutually_distinct_triple_max(alg, gram, d) <= tol) {
    out.parallel = true;
    return out;
  }
  const double margin = kSignMargin * tol;

  // Positive witness: smallest rho with m_1 + ... + m_rho not a subalgebra;
  // some X_i (i < rho) and Y_rho then bracket into a higher block.
  for (int rho = 2; rho <= d.r - 1 && !out.found_pos; ++rho) {
    if (partial_sum_subalgebra(alg, d, rho, tol)) continue;
    for (int i = 0; i < rho - 1 && !out.found_pos; ++i)
      for (int a = 0; a < d.block_dim(i) && !out.found_pos; ++a)
        for (int b = 0; b < d.block_dim(rho - 1) && !out.found_pos; ++b) {
          const Vecd x = d.blocks[i].col(a);
          const Vecd y = d.blocks[rho - 1].col(b);
          const Vecd br = alg.bracket(x, y);
          double escape = 0.0;
          for (int k = rho; k < d.r; ++k) {
            const Vecd bk = d.projectors[k] * br;
            escape += bk.dot(gram * bk);
          }
          if (escape <= tol) continue;
          const double kd = sec_d_direct(rd, gram, x, y);
          if (kd > margin) {
            out.found_pos = true;
            out.pos_x = x;
            out.pos_y = y;
            out.kd_pos = kd;
            out.strategy_pos = "structured";
          }
        }
    break;  // only the smallest non-closed partial sum is usable
  }

  // Negative witness: non-closed pair (mu, nu) with nu - mu maximal.
  int best_mu = -1, best_nu = -1;
  for (int mu = 0; mu < d.r; ++mu)
    for (int nu = mu + 1; nu < d.r; ++nu) {
      if (pair_subalgebra(alg, d, mu, nu, tol)) continue;
      if (best_mu < 0 || nu - mu > best_nu - best_mu) {
        best_mu = mu;
        best_nu = nu;
      }
    }
  if (best_mu >= 0) {
    for (int a = 0; a < d.block_dim(best_mu) && !out.found_neg; ++a)
      for (int b = 0; b < d.block_dim(best_nu) && !out.found_neg; ++b) {
        const Vecd x = d.blocks[best_mu].col(a);
        const Vecd y = d.blocks[best_nu].col(b);
        const Vecd br = alg.bracket(x, y);
        double escape = 0.0;
        for (int k = 0; k < d.r; ++k) {
          if (k == best_mu || k == best_nu) continue;
          const Vecd bk = d.projectors[k] * br;
          escape += bk.dot(gram * bk);
        }
        if (escape <= tol) continue;
        const double kd = sec_d_direct(rd, gram, x, y);
        if (kd < -margin) {
          out.found_neg = true;
          out.neg_x = x;
          out.neg_y = y;
          out.kd_neg = kd;
          out.strategy_neg = "structured";
        }
      }
  }

  // Exhaustive fallback over all mixed block-basis pairs.
  if (!out.found_pos || !out.found_neg) {
    for (int i = 0; i < d.r; ++i)
      for (int j = i + 1; j < d.r; ++j)
        for (int a = 0; a < d.block_dim(i); ++a)
          for (int b = 0; b < d.block_dim(j); ++b) {
            const Vecd x = d.blocks[i].col(a);
            const Vecd y = d.blocks[j].col(b);
            const double kd = sec_d_direct(rd, gram, x, y);
            if (!out.found_pos && kd > margin) {
              out.found_pos = true;
              out.pos_x = x;
              out.pos_y = y;
              out.kd_pos = kd;
              out.strategy_pos = "exhaustive";
            }
            if (!out.found_neg && kd < -margin) {
              out.found_neg = true;
              out.neg_x = x;
              out.neg_y = y;
              out.kd_neg = kd;
              out.strategy_neg = "exhaustive";
            }
          }
  }
  return out;
}

RestrictedRicci restricted_ricci(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                                 const CurvTensord& rd, int i) {
  if (i < 0 || i >= d.r) throw std::out_of_range("restricted_ricci: block index out of range");
  RestrictedRicci out;
  const Matd& b = d.blocks[i];
  const int di = static_cast<int>(b.cols());
  out.ric_block = Matd::Zero(di, di);
  for (int yc = 0; yc < di; ++yc)
    for (int zc = 0; zc < di; ++zc) {
      double trace = 0.0;
      for (int a = 0; a < di; ++a) {
        const Vecd img = rd.apply(b.col(a), b.col(yc), b.col(zc));
        trace += img.dot(gram * b.col(a));
        const Vecd outside = img - d.projectors[i] * img;
        out.preservation_residual = std::max(out.preservation_residual, outside.norm());
      }
      out.ric_block(yc, zc) = trace;
    }
  out.s_i = out.ric_block.trace();
  return out;
}

RicciSReport ricci_s_checks(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                            const CurvTensord& rd) {
  RicciSReport rep;
  const Matd ricd = ricci(rd);

  for (int i = 0; i < d.r; ++i)
    for (int j = 0; j < d.r; ++j)
      for (int k = 0; k < d.r; ++k) {
        if (i == j || j == k || i == k) continue;
        const double lij = d.lambdas[i] - d.lambdas[j];
        const double ljk = d.lambdas[j] - d.lambdas[k];
        const double lki = d.lambdas[k] - d.lambdas[i];
        for (int a = 0; a < d.block_dim(i); ++a)
          for (int b = 0; b < d.block_dim(j); ++b)
            for (int c = 0; c < d.block_dim(k); ++c) {
              const Vecd x = d.blocks[i].col(a);
              const Vecd y = d.blocks[j].col(b);
              const Vecd z = d.blocks[k].col(c);
              const double p1 = alg.bracket(x, y).dot(gram * z);
              const double p2 = alg.bracket(y, z).dot(gram * x);
              const double p3 = alg.bracket(z, x).dot(gram * y);
              const double cyc = (-lki) * ljk / (lij * lij) * p1 * p1 +
                                 (-lij) * lki / (ljk * ljk) * p2 * p2 +
                                 (-ljk) * lij / (lki * lki) * p3 * p3;
              rep.cyclic_residual = std::max(rep.cyclic_residual, std::abs(cyc));
            }
      }

  std::vector<RestrictedRicci> restricted;
  restricted.reserve(d.r);
  double sum_si = 0.0;
  for (int i = 0; i < d.r; ++i) {
    restricted.push_back(restricted_ricci(alg, gram, d, rd, i));
    rep.block_scalars.push_back(restricted.back().s_i);
    sum_si += restricted.back().s_i;
  }
  const double sd = scalar_curv(ricd, gram);
  rep.sum_residual = std::abs(sum_si - sd);

  for (int j = 0; j < d.r; ++j) {
    const Matd& bj = d.blocks[j];
    for (int c = 0; c < d.block_dim(j); ++c) {
      const Vecd y = bj.col(c);
      const double direct = y.dot(ricd * y);
      const double ric_j = restricted[j].ric_block(c, c);

      double first_sum = 0.0, est_sum = 0.0;
      for (int i = 0; i < d.r; ++i) {
        if (i == j) continue;
        for (int a = 0; a < d.block_dim(i); ++a) {
          const Vecd ei = d.blocks[i].col(a);
          for (int k = 0; k < d.r; ++k) {
            if (k == j) continue;
            const double num = (d.lambdas[i] - d.lambdas[k]) * (d.lambdas[j] - d.lambdas[k]);
            const double den = (d.lambdas[i] - d.lambdas[j]) * (d.lambdas[i] - d.lambdas[j]);
            for (int b = 0; b < d.block_dim(k); ++b) {
              const Vecd ek = d.blocks[k].col(b);
              if (k != i) {
                const double inner = alg.bracket(ek, ei).dot(gram * y);
                const double den2 = (d.lambdas[k] - d.lambdas[i]) * (d.lambdas[k] - d.lambdas[i]);
                est_sum += (d.lambdas[k] - d.lambdas[j]) * (d.lambdas[i] - d.lambdas[j]) / den2 *
                           inner * inner;
              }
              const double inner_first = alg.bracket(ei, y).dot(gram * ek);
              first_sum += num / den * inner_first * inner_first;
            }
          }
        }
      }
      const double first_formula = ric_j + 2.0 * first_sum;
      const double est_formula = ric_j - est_sum;
      rep.ricci_first_residual = std::max(rep.ricci_first_residual, std::abs(direct - first_formula));
      rep.ricci_estimate_residual =
          std::max(rep.ricci_estimate_residual, std::abs(direct - est_formula));

      if (j == 0) rep.ineq_violation_first = std::max(rep.ineq_violation_first, direct - ric_j);
      if (j == d.r - 1) rep.ineq_violation_last = std::max(rep.ineq_violation_last, direct - ric_j);
    }
  }
  return rep;
}

CorollaryReport ricci_corollary_check(const SpaceSpecd& spec, const MAlgebrad& alg,
                                      const ProductTabled& alpha, const CurvTensord& rd,
                                      double tol, double cluster_tol) {
  CorollaryReport rep;
  const Matd ricd = ricci(rd);
  if ((ricd - ricd.transpose()).cwiseAbs().maxCoeff() > tol) {
    rep.status = CorollaryReport::Status::ric_not_symmetric;
    return rep;
  }
  const Matd a = 0.5 * (ricd + ricd.transpose());

  // Invariance plus the Codazzi residual decide whether the corollary's
  // hypothesis "Ric^d is a Codazzi tensor field" applies.
  double inv_res = 0.0;
  for (const auto& act : alg.h_action)
    inv_res = std::max(inv_res, (act.transpose() * a + a * act).cwiseAbs().maxCoeff());
  if (inv_res > tol || codazzi_residual(alpha, a).value > tol) {
    rep.status = CorollaryReport::Status::not_codazzi;
    return rep;
  }
  if (max_abs(covariant_differential(alpha, a)).value <= tol) {
    rep.status = CorollaryReport::Status::parallel;
    return rep;
  }

  const SpectralDecomp d = spectral_decompose(a, spec.gram, cluster_tol);
  rep.r = d.r;
  for (int i = 0; i < d.r; ++i)
    rep.block_scalars.push_back(restricted_ricci(alg, spec.gram, d, rd, i).s_i);
  for (int i = 0; i + 1 < d.r; ++i)
    if (rep.block_scalars[i] < -tol) {
      rep.status = CorollaryReport::Status::hypotheses_not_met;
      return rep;
    }

  rep.sdr = rep.block_scalars.back();
  for (int i = 0; i < d.r && !rep.nonabelian_eigenspace; ++i)
    rep.nonabelian_eigenspace = !is_abelian(alg, d.blocks[i], tol);
  const bool conclusion = std::abs(rep.sdr) > tol && rep.nonabelian_eigenspace;
  rep.status =
      conclusion ? CorollaryReport::Status::verified : CorollaryReport::Status::violated;
  return rep;
}

}  // namespace rgw
