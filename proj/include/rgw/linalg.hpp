#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "rgw/scalar.hpp"

namespace rgw {

class SingularMatrix : public std::runtime_error {
public:
  SingularMatrix() : std::runtime_error("singular linear system") {}
};

namespace detail {

template <class T>
int pick_pivot(const Mat<T>& m, int col, int from_row) {
  if constexpr (ScalarTraits<T>::exact) {
    for (int r = from_row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) return r;
    return -1;
  } else {
    int best = -1;
    double best_mag = 0.0;
    for (int r = from_row; r < m.rows(); ++r) {
      double mag = std::abs(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best;
  }
}

}  // namespace detail

/// Gaussian elimination with pivoting: exact pivots for rationals, partial
/// pivoting by magnitude for double. Solves A X = B with A square.
template <class T>
Mat<T> gauss_solve(Mat<T> a, Mat<T> b, double pivot_tol = 0.0) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("gauss_solve: shape mismatch");
  for (int c = 0; c < n; ++c) {
    int p = detail::pick_pivot(a, c, c);
    if (p < 0 || (!ScalarTraits<T>::exact && ScalarTraits<T>::magnitude(a(p, c)) <= pivot_tol))
      throw SingularMatrix();
    if (p != c) {
      a.row(p).swap(a.row(c));
      b.row(p).swap(b.row(c));
    }
    const T piv = a(c, c);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      if (ScalarTraits<T>::near_zero(a(r, c), 0.0)) continue;
      const T f = a(r, c) / piv;
      for (int cc = c; cc < n; ++cc) a(r, cc) -= f * a(c, cc);
      for (int cc = 0; cc < b.cols(); ++cc) b(r, cc) -= f * b(c, cc);
    }
  }
  Mat<T> x(n, b.cols());
  for (int r = 0; r < n; ++r)
    for (int cc = 0; cc < b.cols(); ++cc) x(r, cc) = b(r, cc) / a(r, r);
  return x;
}

template <class T>
Mat<T> invert(const Mat<T>& a) {
  Mat<T> id = Mat<T>::Zero(a.rows(), a.rows());
  for (int i = 0; i < a.rows(); ++i) id(i, i) = T(1);
  return gauss_solve<T>(a, id);
}

/// Reduced row echelon form in place; returns pivot column indices. The
/// double path treats entries below rel_tol * (largest remaining entry) as
/// zero; the exact path needs no tolerance.
template <class T>
std::vector<int> rref(Mat<T>& m, double rel_tol = 1e-12) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  double scale = 0.0;
  if constexpr (!ScalarTraits<T>::exact) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) scale = std::max(scale, std::abs(m(r, c)));
    if (scale == 0.0) scale = 1.0;
  }
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int p = detail::pick_pivot(m, col, row);
    if (p < 0) continue;
    if constexpr (!ScalarTraits<T>::exact) {
      if (std::abs(m(p, col)) <= rel_tol * scale) {
        for (int r = row; r < rows; ++r) m(r, col) = 0.0;
        continue;
      }
    }
    if (p != row) m.row(p).swap(m.row(row));
    const T piv = m(row, col);
    for (int c = col; c < cols; ++c) m(row, c) = m(row, c) / piv;
    for (int r = 0; r < rows; ++r) {
      if (r == row) continue;
      if (ScalarTraits<T>::near_zero(m(r, col), 0.0)) continue;
      const T f = m(r, col);
      for (int c = col; c < cols; ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Nullspace basis, one column per basis vector. Double route: SVD with the
/// contract's rank threshold sigma <= rel * sigma_max. Exact route: row
/// reduction with free-variable back substitution.
inline Matd nullspace(const Matd& m, double rel = kSingularRel) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0 || cols == 0) return Matd::Identity(cols, cols);
  Eigen::JacobiSVD<Matd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * smax && sv(i) > 0.0) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

inline Mat<Rational> nullspace(const Mat<Rational>& m, double /*rel*/ = kSingularRel) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0 || cols == 0) {
    Mat<Rational> id = Mat<Rational>::Zero(cols, cols);
    for (int i = 0; i < cols; ++i) id(i, i) = Rational(1);
    return id;
  }
  Mat<Rational> r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  const int nullity = cols - static_cast<int>(pivots.size());
  Mat<Rational> basis = Mat<Rational>::Zero(cols, nullity);
  int b = 0;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, b) = Rational(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr) basis(pivots[pr], b) = -r(static_cast<int>(pr), free);
    ++b;
  }
  return basis;
}

/// Euclidean-orthonormal basis of the column span (double) via SVD rank
/// truncation; deterministic for fixed input.
inline Matd orth_basis(const Matd& m, double rel = kSingularRel) {
  if (m.cols() == 0) return Matd(m.rows(), 0);
  Eigen::JacobiSVD<Matd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * smax && sv(i) > 0.0) ++rank;
  return svd.matrixU().leftCols(rank);
}

inline Mat<Rational> orth_basis(const Mat<Rational>& m, double /*rel*/ = kSingularRel) {
  Mat<Rational> r = m.transpose();
  std::vector<int> pivots = rref(r);
  Mat<Rational> basis(m.rows(), static_cast<int>(pivots.size()));
  for (int i = 0; i < basis.cols(); ++i)
    for (int j = 0; j < basis.rows(); ++j) basis(j, i) = r(i, j);
  return basis;
}

/// Distance of v from span(basis); basis columns Euclidean-orthonormal in
/// the double case.
inline double span_distance(const Matd& orthonormal_basis, const Vecd& v) {
  if (orthonormal_basis.cols() == 0) return v.norm();
  return (v - orthonormal_basis * (orthonormal_basis.transpose() * v)).norm();
}

/// Rank via SVD threshold (double) or RREF (exact).
template <class T>
int numeric_rank(const Mat<T>& m, double rel = kSingularRel) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if constexpr (ScalarTraits<T>::exact) {
    Mat<T> r = m;
    return static_cast<int>(rref(r).size());
  } else {
    Eigen::JacobiSVD<Mat<T>> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rel * smax && sv(i) > 0.0) ++rank;
    return rank;
  }
}

/// Strict positive definiteness. Double: smallest eigenvalue of the
/// symmetrized matrix must be positive. Exact: Sylvester's criterion with
/// Bareiss fraction-free determinants.
inline bool positive_definite(const Matd& g, double* min_eig = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matd> es(0.5 * (g + g.transpose()));
  const double mn = es.eigenvalues().minCoeff();
  if (min_eig) *min_eig = mn;
  return mn > 0.0;
}

inline bool positive_definite(const Mat<Rational>& g, double* min_eig = nullptr) {
  if (min_eig) *min_eig = 0.0;
  const int n = static_cast<int>(g.rows());
  for (int k = 1; k <= n; ++k) {
    Mat<Rational> lead = g.topLeftCorner(k, k);
    // Gaussian determinant; exact division keeps this fraction-safe.
    Rational det(1);
    for (int c = 0; c < k; ++c) {
      int p = detail::pick_pivot(lead, c, c);
      if (p < 0) return false;
      if (p != c) {
        lead.row(p).swap(lead.row(c));
        det = -det;
      }
      det *= lead(c, c);
      for (int r = c + 1; r < k; ++r) {
        if (lead(r, c).is_zero()) continue;
        const Rational f = lead(r, c) / lead(c, c);
        for (int cc = c; cc < k; ++cc) lead(r, cc) -= f * lead(c, cc);
      }
    }
    if (!(det > Rational(0))) return false;
  }
  return true;
}

/// Gram-Schmidt against an SPD gram matrix; columns come back
/// gram-orthonormal. Throws on rank deficiency.
inline Matd gram_orthonormalize(const Matd& cols, const Matd& gram, double tol = 1e-12) {
  Matd q = cols;
  for (int c = 0; c < q.cols(); ++c) {
    for (int p = 0; p < c; ++p) {
      const double proj = q.col(p).dot(gram * q.col(c));
      q.col(c) -= proj * q.col(p);
    }
    const double nrm2 = q.col(c).dot(gram * q.col(c));
    if (nrm2 <= tol) throw std::invalid_argument("gram_orthonormalize: rank-deficient columns");
    q.col(c) /= std::sqrt(nrm2);
  }
  return q;
}

}  // namespace rgw
