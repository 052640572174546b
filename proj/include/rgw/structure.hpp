#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rgw/space.hpp"

namespace rgw {

/// Killing form of (m, [.,.]_m): beta(X,Y) = tr(ad_m(X) ad_m(Y)).
template <class T>
Mat<T> killing_form(const MAlgebra<T>& alg) {
  const int n = alg.dim;
  Mat<T> beta = Mat<T>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      T s(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += alg.bracket_m(i, l, k) * alg.bracket_m(j, k, l);
      beta(i, j) = s;
      beta(j, i) = s;
    }
  return beta;
}

/// Splits beta(Z,Z) across one factor of an orthogonal decomposition:
/// returns (beta, beta_k, correction) with
///   beta_k    the Killing form of (m_k, [.,.]_k) evaluated at Z, and
///   correction = tr[(pi_k_perp o ad_m(Z)|_{m_k_perp})^2].
/// The identity beta = beta_k + correction holds whenever m_k is closed
/// under the bracket (in particular for Codazzi eigenspace decompositions).
struct KillingSplit {
  double beta = 0.0;
  double beta_k = 0.0;
  double correction = 0.0;
  double residual() const { return std::abs(beta - beta_k - correction); }
};

inline KillingSplit killing_split(const MAlgebrad& alg, const Matd& gram,
                                  const std::vector<Matd>& blocks, int k, const Vecd& z) {
  if (k < 0 || k >= static_cast<int>(blocks.size()))
    throw std::out_of_range("killing_split: block index out of range");
  const int n = alg.dim;
  const Matd ad_z = alg.ad(z);
  KillingSplit out;
  out.beta = (ad_z * ad_z).trace();

  const Matd& bk = blocks[k];
  // ad restricted to the block, in gram-orthonormal block coordinates.
  Matd ad_k = bk.transpose() * gram * ad_z * bk;
  out.beta_k = (ad_k * ad_k).trace();

  int perp_dim = 0;
  for (int j = 0; j < static_cast<int>(blocks.size()); ++j)
    if (j != k) perp_dim += static_cast<int>(blocks[j].cols());
  Matd b_perp(n, perp_dim);
  int at = 0;
  for (int j = 0; j < static_cast<int>(blocks.size()); ++j) {
    if (j == k) continue;
    b_perp.middleCols(at, blocks[j].cols()) = blocks[j];
    at += static_cast<int>(blocks[j].cols());
  }
  Matd d = b_perp.transpose() * gram * ad_z * b_perp;
  out.correction = (d * d).trace();
  return out;
}

/// Descending power chain m^1 = m, m^t = sum_{p+q=t} [m^p, m^q]. Returns
/// (true, least t with m^t = 0) or (false, nullopt) when the chain refuses
/// to reach zero.
template <class T>
std::pair<bool, std::optional<int>> is_nilpotent(const MAlgebra<T>& alg) {
  const int n = alg.dim;
  std::vector<Mat<T>> powers;  // powers[t-1] = basis of m^t
  Mat<T> full = Mat<T>::Zero(n, n);
  for (int i = 0; i < n; ++i) full(i, i) = T(1);
  powers.push_back(full);
  const int t_max = 3 * (n + 2);
  for (int t = 2; t <= t_max; ++t) {
    std::vector<Vec<T>> gens;
    for (int p = 1; p <= t - 1; ++p) {
      const int q = t - p;
      const Mat<T>& bp = powers[p - 1];
      const Mat<T>& bq = powers[q - 1];
      for (int a = 0; a < bp.cols(); ++a)
        for (int b = 0; b < bq.cols(); ++b) gens.push_back(alg.bracket(bp.col(a), bq.col(b)));
    }
    Mat<T> cand(n, static_cast<int>(gens.size()));
    for (size_t g = 0; g < gens.size(); ++g) cand.col(static_cast<int>(g)) = gens[g];
    Mat<T> basis = orth_basis(cand);
    if (basis.cols() == 0) return {true, t};
    powers.push_back(std::move(basis));
  }
  return {false, std::nullopt};
}

/// [m, S]_m contained in span(S) within tol.
inline bool is_ideal(const MAlgebrad& alg, const Matd& subspace, double tol = kDefaultTol,
                     double* residual = nullptr) {
  if (numeric_rank(subspace) != subspace.cols())
    throw StructuralError("is_ideal: rank-deficient subspace block");
  const Matd s = orth_basis(subspace);
  double worst = 0.0;
  for (int i = 0; i < alg.dim; ++i) {
    Vecd ei = Vecd::Zero(alg.dim);
    ei(i) = 1.0;
    for (int c = 0; c < s.cols(); ++c)
      worst = std::max(worst, span_distance(s, alg.bracket(ei, s.col(c))));
  }
  if (residual) *residual = worst;
  return worst <= tol;
}

/// [S, S]_m contained in span(S) within tol.
inline bool is_subalgebra(const MAlgebrad& alg, const Matd& subspace, double tol = kDefaultTol,
                          double* residual = nullptr) {
  if (numeric_rank(subspace) != subspace.cols())
    throw StructuralError("is_subalgebra: rank-deficient subspace block");
  const Matd s = orth_basis(subspace);
  double worst = 0.0;
  for (int a = 0; a < s.cols(); ++a)
    for (int b = a + 1; b < s.cols(); ++b)
      worst = std::max(worst, span_distance(s, alg.bracket(s.col(a), s.col(b))));
  if (residual) *residual = worst;
  return worst <= tol;
}

/// [S, S]_m = 0 within tol.
inline bool is_abelian(const MAlgebrad& alg, const Matd& subspace, double tol = kDefaultTol,
                       double* residual = nullptr) {
  if (numeric_rank(subspace) != subspace.cols())
    throw StructuralError("is_abelian: rank-deficient subspace block");
  double worst = 0.0;
  for (int a = 0; a < subspace.cols(); ++a)
    for (int b = a + 1; b < subspace.cols(); ++b)
      worst = std::max(worst, alg.bracket(subspace.col(a), subspace.col(b)).norm());
  if (residual) *residual = worst;
  return worst <= tol;
}

namespace detail {

inline int sym_count(int m) { return m * (m + 1) / 2; }

inline int sym_index(int p, int q, int m) {
  if (p > q) std::swap(p, q);
  return p * (2 * m - p + 1) / 2 + (q - p);
}

template <class T>
Mat<T> unpack_sym(const Vec<T>& v, int m) {
  Mat<T> s(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      s(p, q) = v(sym_index(p, q, m));
      s(q, p) = s(p, q);
    }
  return s;
}

template <class T>
Vec<T> pack_sym(const Mat<T>& s) {
  const int m = static_cast<int>(s.rows());
  Vec<T> v(sym_count(m));
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) v(sym_index(p, q, m)) = s(p, q);
  return v;
}

}  // namespace detail

/// Basis of the space of ad(h)-invariant symmetric bilinear forms on m,
/// intersected with the fixed sets of any finite isotropy generators. The
/// invariant metric always lies in the returned span.
template <class T>
std::vector<Mat<T>> invariant_symmetric_forms(const SpaceSpec<T>& spec) {
  const int m = spec.dim_m;
  const int nv = detail::sym_count(m);
  const MAlgebra<T> alg = project_algebra(spec);

  std::vector<Vec<T>> rows;
  // S(ad(W)x, y) + S(x, ad(W)y) = 0
  for (int w = 0; w < spec.dim_h; ++w) {
    const Mat<T>& act = alg.h_action[w];
    for (int x = 0; x < m; ++x)
      for (int y = x; y < m; ++y) {
        Vec<T> row = Vec<T>::Zero(nv);
        for (int k = 0; k < m; ++k) {
          row(detail::sym_index(k, y, m)) += act(k, x);
          row(detail::sym_index(x, k, m)) += act(k, y);
        }
        rows.push_back(std::move(row));
      }
  }
  // S(gx, gy) = S(x, y)
  for (const auto& g : spec.isotropy_generators) {
    for (int x = 0; x < m; ++x)
      for (int y = x; y < m; ++y) {
        Vec<T> row = Vec<T>::Zero(nv);
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) row(detail::sym_index(k, l, m)) += g(k, x) * g(l, y);
        row(detail::sym_index(x, y, m)) -= T(1);
        rows.push_back(std::move(row));
      }
  }

  Mat<T> system(static_cast<int>(rows.size()), nv);
  for (size_t r = 0; r < rows.size(); ++r) system.row(static_cast<int>(r)) = rows[r].transpose();
  Mat<T> null = nullspace(system);

  std::vector<Mat<T>> basis;
  basis.reserve(null.cols());
  for (int c = 0; c < null.cols(); ++c) basis.push_back(detail::unpack_sym<T>(null.col(c), m));
  return basis;
}

// --- split-solvability -----------------------------------------------------

struct SolvableVerdict {
  enum class Result { yes, no, undetermined };
  enum class WitnessKind { none, complex_spectrum, perfect_algebra };

  Result result = Result::undetermined;
  /// For yes: proper subspaces of decreasing dimension n-1, ..., 1, each an
  /// ideal of its predecessor (the predecessor of the first is m itself).
  std::vector<Matd> chain;
  WitnessKind witness_kind = WitnessKind::none;
  Vecd witness_direction;
  std::complex<double> witness_eigenvalue{0.0, 0.0};
};

SolvableVerdict is_split_solvable(const MAlgebrad& alg, double tol = kDefaultTol);

/// Exact re-verification of a chain: every member has codimension 1 in its
/// predecessor and is an ideal of it. Returns the worst residual.
double verify_solvable_chain(const MAlgebrad& alg, const std::vector<Matd>& chain);

}  // namespace rgw
