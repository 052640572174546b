#pragma once

#include "rgw/space.hpp"

namespace rgw {

/// Bilinear multiplication on m standing for an invariant connection:
/// alpha(e_i, e_j) = sum_k coeffs(i,j,k) e_k.
template <class T>
struct ProductTable {
  int dim = 0;
  Tensor3<T> coeffs;

  Vec<T> apply(const Vec<T>& x, const Vec<T>& y) const {
    Vec<T> out = Vec<T>::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      if (ScalarTraits<T>::near_zero(x(i), 0.0)) continue;
      for (int j = 0; j < dim; ++j) {
        if (ScalarTraits<T>::near_zero(y(j), 0.0)) continue;
        const T f = x(i) * y(j);
        for (int k = 0; k < dim; ++k) out(k) += f * coeffs(i, j, k);
      }
    }
    return out;
  }

  Vec<T> basis_product(int i, int j) const {
    Vec<T> out(dim);
    for (int k = 0; k < dim; ++k) out(k) = coeffs(i, j, k);
    return out;
  }
};

using ProductTabled = ProductTable<double>;

/// (1,3) curvature block: value(i,j,k,l) is the e_l coefficient of
/// R(e_i,e_j)e_k. Antisymmetric in (i,j).
template <class T>
struct CurvTensor {
  int dim = 0;
  Tensor4<T> coeffs;

  Vec<T> apply(const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) const {
    Vec<T> out = Vec<T>::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      if (ScalarTraits<T>::near_zero(x(i), 0.0)) continue;
      for (int j = 0; j < dim; ++j) {
        if (ScalarTraits<T>::near_zero(y(j), 0.0)) continue;
        const T xy = x(i) * y(j);
        for (int k = 0; k < dim; ++k) {
          if (ScalarTraits<T>::near_zero(z(k), 0.0)) continue;
          const T f = xy * z(k);
          for (int l = 0; l < dim; ++l) out(l) += f * coeffs(i, j, k, l);
        }
      }
    }
    return out;
  }
};

using CurvTensord = CurvTensor<double>;

/// Levi-Civita product from the Koszul formula
///   2<alpha(X,Y),Z> = <[X,Y]_m,Z> - <X,[Y,Z]_m> - <[X,Z]_m,Y>.
/// Split as alpha = (1/2)[.,.]_m + U with U symmetric; only U needs a
/// linear solve, and mirroring it over (i, j) makes the torsion vanish
/// bit-exactly rather than up to solver noise.
template <class T>
ProductTable<T> levi_civita_product(const SpaceSpec<T>& spec) {
  const MAlgebra<T> alg = project_algebra(spec);
  const int n = alg.dim;
  const Mat<T>& g = spec.gram;
  const T half = T(1) / T(2);

  // 2<U(e_i,e_j),e_l> = -<e_i,[e_j,e_l]> - <[e_i,e_l],e_j>, symmetric in (i,j).
  const int pairs = n * (n + 1) / 2;
  Mat<T> rhs(n, pairs);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++col)
      for (int l = 0; l < n; ++l) {
        T s(0);
        for (int k = 0; k < n; ++k)
          s -= g(i, k) * alg.bracket_m(j, l, k) + alg.bracket_m(i, l, k) * g(k, j);
        rhs(l, col) = half * s;
      }
  Mat<T> u = gauss_solve<T>(g, rhs);
  if constexpr (!ScalarTraits<T>::exact) {
    // One refinement step keeps the Koszul residual near machine precision
    // for metrics up to the fuzz condition cap.
    u += gauss_solve<T>(g, Mat<T>(rhs - g * u));
  }

  ProductTable<T> prod;
  prod.dim = n;
  prod.coeffs = Tensor3<T>(n, n, n);
  col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++col)
      for (int k = 0; k < n; ++k) {
        const T sym = u(k, col);
        prod.coeffs(i, j, k) = half * alg.bracket_m(i, j, k) + sym;
        if (i != j) prod.coeffs(j, i, k) = half * alg.bracket_m(j, i, k) + sym;
      }
  return prod;
}

/// The zero product; corresponds to the canonical connection of second kind.
template <class T>
ProductTable<T> canonical_product(int dim) {
  ProductTable<T> prod;
  prod.dim = dim;
  prod.coeffs = Tensor3<T>(dim, dim, dim);
  return prod;
}

inline ProductTabled canonical_product_d(int dim) { return canonical_product<double>(dim); }

/// Infinitesimal Ad(H)-equivariance: ad(W)alpha(X,Y) = alpha(ad(W)X, Y) +
/// alpha(X, ad(W)Y) for all h-basis W, plus exact equivariance under any
/// finite isotropy generators.
template <class T>
bool check_equivariance(const SpaceSpec<T>& spec, const ProductTable<T>& prod,
                        double tol = kDefaultTol, double* residual = nullptr) {
  if (prod.dim != spec.dim_m) throw StructuralError("check_equivariance: dimension mismatch");
  const MAlgebra<T> alg = project_algebra(spec);
  const int n = alg.dim;
  ResidualMax<T> worst;
  for (int w = 0; w < spec.dim_h; ++w) {
    const Mat<T>& act = alg.h_action[w];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          T s(0);
          for (int p = 0; p < n; ++p) {
            s += act(k, p) * prod.coeffs(i, j, p);
            s -= act(p, i) * prod.coeffs(p, j, k);
            s -= act(p, j) * prod.coeffs(i, p, k);
          }
          worst.add(s);
        }
  }
  for (const auto& gmat : spec.isotropy_generators) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          T lhs(0), rhs(0);
          for (int p = 0; p < n; ++p) lhs += gmat(k, p) * prod.coeffs(i, j, p);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) rhs += gmat(p, i) * gmat(q, j) * prod.coeffs(p, q, k);
          worst.add(lhs - rhs);
        }
  }
  if (residual) *residual = worst.value;
  return worst.pass(tol);
}

/// T(X,Y) = alpha(X,Y) - alpha(Y,X) - [X,Y]_m.
template <class T>
Tensor3<T> torsion(const MAlgebra<T>& alg, const ProductTable<T>& prod) {
  const int n = alg.dim;
  Tensor3<T> t(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        t(i, j, k) = prod.coeffs(i, j, k) - prod.coeffs(j, i, k) - alg.bracket_m(i, j, k);
  return t;
}

/// R(X,Y)Z = a(X,a(Y,Z)) - a(Y,a(X,Z)) - a([X,Y]_m, Z) - [[X,Y]_h, Z].
/// The last term uses the h-action tables; reductivity keeps it inside m.
template <class T>
CurvTensor<T> curvature(const MAlgebra<T>& alg, const ProductTable<T>& prod) {
  const int n = alg.dim;
  CurvTensor<T> r;
  r.dim = n;
  r.coeffs = Tensor4<T>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          T s(0);
          for (int p = 0; p < n; ++p) {
            s += prod.coeffs(j, k, p) * prod.coeffs(i, p, l);
            s -= prod.coeffs(i, k, p) * prod.coeffs(j, p, l);
            s -= alg.bracket_m(i, j, p) * prod.coeffs(p, k, l);
          }
          for (int a = 0; a < alg.dim_h; ++a) s -= alg.bracket_h(i, j, a) * alg.h_action[a](l, k);
          r.coeffs(i, j, k, l) = s;
        }
  return r;
}

/// Covariant differential of a k-times covariant block:
///   a(X, theta)(Y_1,...,Y_k) = -sum_s theta(Y_1,...,a(X,Y_s),...,Y_k).
/// The first index of the result is the differentiation slot.
template <class T>
KTensor<T> covariant_differential(const ProductTable<T>& prod, const KTensor<T>& theta) {
  const int n = theta.dim();
  const int k = theta.order();
  if (prod.dim != n) throw StructuralError("covariant_differential: dimension mismatch");
  KTensor<T> out(k + 1, n);
  const size_t total = out.size();
  for (size_t f = 0; f < total; ++f) {
    std::vector<int> idx = out.unflatten(f);
    const int x = idx[0];
    std::vector<int> inner(idx.begin() + 1, idx.end());
    T s(0);
    for (int slot = 0; slot < k; ++slot) {
      const int orig = inner[slot];
      for (int p = 0; p < n; ++p) {
        const T a = prod.coeffs(x, orig, p);
        if (ScalarTraits<T>::near_zero(a, 0.0)) continue;
        inner[slot] = p;
        s -= a * theta.at(inner);
      }
      inner[slot] = orig;
    }
    out.flat_at(f) = s;
  }
  return out;
}

/// Specialization for symmetric 2-forms: returns nabla A as a 3-block with
/// t(x, y, z) = a(e_x, A)(e_y, e_z).
template <class T>
Tensor3<T> covariant_differential(const ProductTable<T>& prod, const Mat<T>& form) {
  const int n = prod.dim;
  if (form.rows() != n || form.cols() != n)
    throw StructuralError("covariant_differential: dimension mismatch");
  Tensor3<T> out(n, n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T s(0);
        for (int p = 0; p < n; ++p)
          s -= prod.coeffs(x, y, p) * form(p, z) + prod.coeffs(x, z, p) * form(y, p);
        out(x, y, z) = s;
      }
  return out;
}

template <class T>
ResidualMax<T> max_abs(const Tensor3<T>& t) {
  ResidualMax<T> r;
  for (const auto& v : t.data()) r.add(v);
  return r;
}

template <class T>
ResidualMax<T> max_abs(const Tensor4<T>& t) {
  ResidualMax<T> r;
  for (const auto& v : t.data()) r.add(v);
  return r;
}

/// Koszul identity residual of a candidate product (diagnostic).
template <class T>
ResidualMax<T> koszul_residual(const SpaceSpec<T>& spec, const ProductTable<T>& prod) {
  const MAlgebra<T> alg = project_algebra(spec);
  const int n = alg.dim;
  const Mat<T>& g = spec.gram;
  ResidualMax<T> worst;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        T s(0);
        for (int k = 0; k < n; ++k) {
          s += T(2) * prod.coeffs(i, j, k) * g(k, l);
          s -= alg.bracket_m(i, j, k) * g(k, l);
          s += g(i, k) * alg.bracket_m(j, l, k);
          s += alg.bracket_m(i, l, k) * g(k, j);
        }
        worst.add(s);
      }
  return worst;
}

/// Skew-adjointness <alpha(X,Y),Z> + <Y,alpha(X,Z)> = 0 over basis triples.
template <class T>
ResidualMax<T> skew_adjoint_residual(const Mat<T>& gram, const ProductTable<T>& prod) {
  const int n = prod.dim;
  ResidualMax<T> worst;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z <= y; ++z) {
        T s(0);
        for (int k = 0; k < n; ++k)
          s += prod.coeffs(x, y, k) * gram(k, z) + gram(y, k) * prod.coeffs(x, z, k);
        worst.add(s);
      }
  return worst;
}

}  // namespace rgw
