#pragma once

#include "rgw/codazzi.hpp"

namespace rgw {

class DependentVectors : public std::invalid_argument {
public:
  DependentVectors() : std::invalid_argument("sectional curvature needs two independent vectors") {}
};

/// <R(X,Y)Y,X> after gram-orthonormalizing the spanning pair.
double sectional(const CurvTensord& r, const Matd& gram, const Vecd& u, const Vecd& v,
                 double tol = kDefaultTol);

/// Ric(Y,Z) = tr(X -> R(X,Y)Z); no metric involved, no symmetry assumed.
template <class T>
Mat<T> ricci(const CurvTensor<T>& r) {
  const int n = r.dim;
  Mat<T> ric = Mat<T>::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      T s(0);
      for (int i = 0; i < n; ++i) s += r.coeffs(i, j, k, i);
      ric(j, k) = s;
    }
  return ric;
}

/// Gram trace of a (possibly non-symmetric) Ricci block.
template <class T>
T scalar_curv(const Mat<T>& ric, const Mat<T>& gram) {
  const Mat<T> gi = invert(gram);
  T s(0);
  for (int j = 0; j < ric.rows(); ++j)
    for (int k = 0; k < ric.cols(); ++k) s += gi(k, j) * ric(j, k);
  return s;
}

/// R^d = R - R^0, entrywise.
template <class T>
CurvTensor<T> difference_curvature(const CurvTensor<T>& r, const CurvTensor<T>& r0) {
  CurvTensor<T> d;
  d.dim = r.dim;
  d.coeffs = Tensor4<T>(r.dim, r.dim, r.dim, r.dim);
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j)
      for (int k = 0; k < r.dim; ++k)
        for (int l = 0; l < r.dim; ++l) d.coeffs(i, j, k, l) = r.coeffs(i, j, k, l) - r0.coeffs(i, j, k, l);
  return d;
}

struct BianchiReport {
  double bianchi_residual = 0.0;
  double pair_skew_residual = 0.0;
  double jacobi_residual = 0.0;
  bool bianchi = true;
  bool pair_skew = true;
  bool jacobi = true;
  bool equivalence_ok = true;  // Bianchi(R^0) <=> Jacobi([.,.]_m)
};

/// First Bianchi sum and pair-skewness of R^0, plus an independent Jacobi
/// test of [.,.]_m; the two verdicts must agree.
template <class T>
BianchiReport bianchi_check(const CurvTensor<T>& r0, const MAlgebra<T>& alg, const Mat<T>& gram,
                            double tol = kDefaultTol) {
  const int n = r0.dim;
  ResidualMax<T> bianchi, skew, jacobi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          bianchi.add(r0.coeffs(i, j, k, l) + r0.coeffs(j, k, i, l) + r0.coeffs(k, i, j, l));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          T s(0);
          for (int p = 0; p < n; ++p)
            s += r0.coeffs(i, j, k, p) * gram(p, l) + r0.coeffs(i, j, l, p) * gram(p, k);
          skew.add(s);
        }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          T s(0);
          for (int p = 0; p < n; ++p)
            s += alg.bracket_m(i, j, p) * alg.bracket_m(p, k, l) +
                 alg.bracket_m(j, k, p) * alg.bracket_m(p, i, l) +
                 alg.bracket_m(k, i, p) * alg.bracket_m(p, j, l);
          jacobi.add(s);
        }
  BianchiReport rep;
  rep.bianchi_residual = bianchi.value;
  rep.pair_skew_residual = skew.value;
  rep.jacobi_residual = jacobi.value;
  rep.bianchi = bianchi.pass(tol);
  rep.pair_skew = skew.pass(tol);
  rep.jacobi = jacobi.pass(tol);
  rep.equivalence_ok = rep.bianchi == rep.jacobi;
  return rep;
}

/// Defining identity of natural reductivity,
/// <[X,Y]_m,Z> + <Y,[X,Z]_m> = 0 over basis triples.
template <class T>
ResidualMax<T> naturally_reductive_residual(const MAlgebra<T>& alg, const Mat<T>& gram) {
  const int n = alg.dim;
  ResidualMax<T> worst;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z <= y; ++z) {
        T s(0);
        for (int k = 0; k < n; ++k)
          s += alg.bracket_m(x, y, k) * gram(k, z) + gram(y, k) * alg.bracket_m(x, z, k);
        worst.add(s);
      }
  return worst;
}

struct NatRedReport {
  bool naturally_reductive = false;
  double identity_residual = 0.0;
  double kd_formula_residual = 0.0;  // K^d vs |[X,Y]_m|^2 / 4 over orthonormal planes
  double kd_min = 0.0;
};

/// Checks the defining identity; when it holds, verifies the difference
/// sectional curvature formula K^d = |[X,Y]_m|^2/4 over planes spanned by a
/// gram-orthonormalized basis.
NatRedReport naturally_reductive_check(const SpaceSpecd& spec, double tol = kDefaultTol);

/// Formula value of <R^d(X_i,Y_j)Y_j,X_i> per the eigen-decomposition.
/// Requires i != j; X, Y need not be unit (both sides scale alike).
double sec_d_eigenformula(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d, int i,
                          int j, const Vecd& x, const Vecd& y);

/// Direct tensor evaluation <R^d(X,Y)Y,X> without normalization.
double sec_d_direct(const CurvTensord& rd, const Matd& gram, const Vecd& x, const Vecd& y);

struct KdSignSearch {
  bool parallel = false;
  bool found_pos = false;
  bool found_neg = false;
  Vecd pos_x, pos_y, neg_x, neg_y;
  double kd_pos = 0.0;
  double kd_neg = 0.0;
  std::string strategy_pos, strategy_neg;  // "structured" or "exhaustive"
};

/// Searches for planes with K^d > 0 and K^d < 0 when the underlying Codazzi
/// tensor is nonparallel, using the structured witnesses (smallest partial
/// sum that fails to be a subalgebra; the widest non-closed block pair)
/// before falling back to an exhaustive block-basis pair scan. Parallel
/// decompositions report parallel and skip the search.
KdSignSearch kd_sign_search(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                            const CurvTensord& rd, double tol = kDefaultTol);

struct RestrictedRicci {
  Matd ric_block;                    // in gram-orthonormal block coordinates
  double s_i = 0.0;
  double preservation_residual = 0.0;  // X -> R^d(X,Y_i)Z_i must preserve m_i
};

RestrictedRicci restricted_ricci(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                                 const CurvTensord& rd, int i);

struct RicciSReport {
  double cyclic_residual = 0.0;
  double ineq_violation_first = 0.0;  // max(0, Ric^d(Y) - Ric^d_j(Y)), j = 1
  double ineq_violation_last = 0.0;   // same for j = r
  double sum_residual = 0.0;          // |s^d_1 + ... + s^d_r - s^d|
  double ricci_first_residual = 0.0;
  double ricci_estimate_residual = 0.0;
  std::vector<double> block_scalars;
};

RicciSReport ricci_s_checks(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& d,
                            const CurvTensord& rd);

struct CorollaryReport {
  enum class Status {
    ric_not_symmetric,
    not_codazzi,
    parallel,
    hypotheses_not_met,
    verified,
    violated
  };
  Status status = Status::hypotheses_not_met;
  int r = 0;
  double sdr = 0.0;
  bool nonabelian_eigenspace = false;
  std::vector<double> block_scalars;
};

/// Tests the closing corollary: when Ric^d is itself a nonparallel Codazzi
/// solution and s^d_i >= 0 for i < r, then s^d_r != 0 and some eigenspace
/// of Ric^d is non-Abelian. "violated" is a falsification event.
CorollaryReport ricci_corollary_check(const SpaceSpecd& spec, const MAlgebrad& alg,
                                      const ProductTabled& alpha, const CurvTensord& rd,
                                      double tol = kDefaultTol,
                                      double cluster_tol = kClusterTol);

}  // namespace rgw
