#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>

#include "rgw/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<rgw::Rational> {
  typedef rgw::Rational Real;
  typedef rgw::Rational NonInteger;
  typedef rgw::Rational Nested;
  typedef rgw::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 16,
    MulCost = 16
  };
  static inline rgw::Rational epsilon() { return rgw::Rational(0); }
  static inline rgw::Rational dummy_precision() { return rgw::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace rgw {

// Tolerances fixed by the artifact contract.
inline constexpr double kDefaultTol = 1e-9;    // residual acceptance in double
inline constexpr double kClusterTol = 1e-7;    // eigenvalue clustering, relative to spread
inline constexpr double kSingularRel = 1e-9;   // SVD rank decision, relative to sigma_max
inline constexpr double kSignMargin = 10.0;    // strictness factor for sign witnesses

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matd = Mat<double>;
using Vecd = Vec<double>;

/// Scalar glue shared by the double and exact code paths. "near_zero" is
/// |x| <= tol in double and exact equality for rationals, which is how the
/// exact mode turns every residual tolerance into equality.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_int(long long v) { return static_cast<double>(v); }
  static double magnitude(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
  static bool near_zero(double x, double tol) { return std::abs(x) <= tol; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long long v) { return Rational(v); }
  static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static bool near_zero(const Rational& x, double /*tol*/) { return x.is_zero(); }
};

/// Accumulates the worst residual of a batch of scalar checks. Pass/fail is
/// tolerance-based for double and exact for rationals; the double magnitude
/// is kept either way for reporting.
template <class T>
struct ResidualMax {
  double value = 0.0;
  bool exact_nonzero = false;

  void add(const T& x) {
    value = std::max(value, ScalarTraits<T>::magnitude(x));
    if constexpr (ScalarTraits<T>::exact) {
      if (!x.is_zero()) exact_nonzero = true;
    }
  }
  bool pass(double tol) const {
    if constexpr (ScalarTraits<T>::exact) return !exact_nonzero;
    return value <= tol;
  }
};

}  // namespace rgw
