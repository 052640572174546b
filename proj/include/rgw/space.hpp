#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rgw/linalg.hpp"
#include "rgw/tensor.hpp"

namespace rgw {

/// Raised for shape/domain problems, as opposed to invariant failures which
/// land in a ValidationReport.
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// A reductive homogeneous space at the algebra level: structure constants
/// of g over a basis adapted to h + m (h-basis first), the gram matrix of
/// the invariant metric on m, and optional finite isotropy generators given
/// as their m-blocks.
template <class T>
struct SpaceSpec {
  int dim_h = 0;
  int dim_m = 0;
  Tensor3<T> structure;  // structure(i,j,k): coefficient of f_k in [f_i, f_j]
  Mat<T> gram;           // dim_m x dim_m, SPD
  std::vector<Mat<T>> isotropy_generators;

  int dim_g() const { return dim_h + dim_m; }
};

using SpaceSpecd = SpaceSpec<double>;

/// The non-associative algebra structure induced on m: the m- and h-parts
/// of the bracket of two m-vectors, and the action of each h-basis element
/// on m. All indices are m-local (0..dim-1).
template <class T>
struct MAlgebra {
  int dim = 0;
  int dim_h = 0;
  Tensor3<T> bracket_m;  // (dim, dim, dim)
  Tensor3<T> bracket_h;  // (dim, dim, dim_h)
  std::vector<Mat<T>> h_action;  // per h-basis element, dim x dim; column i = ad(W)e_i

  /// [x, y]_m for coordinate vectors on m.
  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    Vec<T> out = Vec<T>::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      if (ScalarTraits<T>::near_zero(x(i), 0.0)) continue;
      for (int j = 0; j < dim; ++j) {
        if (ScalarTraits<T>::near_zero(y(j), 0.0)) continue;
        const T f = x(i) * y(j);
        for (int k = 0; k < dim; ++k) out(k) += f * bracket_m(i, j, k);
      }
    }
    return out;
  }

  /// ad_m(x) as a matrix: column j is [x, e_j]_m.
  Mat<T> ad(const Vec<T>& x) const {
    Mat<T> out = Mat<T>::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      if (ScalarTraits<T>::near_zero(x(i), 0.0)) continue;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) out(k, j) += x(i) * bracket_m(i, j, k);
    }
    return out;
  }

  Mat<T> ad_basis(int i) const {
    Mat<T> out(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) out(k, j) = bracket_m(i, j, k);
    return out;
  }
};

using MAlgebrad = MAlgebra<double>;

struct InvariantCheck {
  std::string name;
  double max_residual = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<InvariantCheck> checks;
  bool valid = true;
  double max_residual = 0.0;

  const InvariantCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

template <class T>
void push_check(ValidationReport& rep, const std::string& name, const ResidualMax<T>& r,
                double tol) {
  InvariantCheck c;
  c.name = name;
  c.max_residual = r.value;
  c.pass = r.pass(tol);
  rep.checks.push_back(c);
  rep.valid = rep.valid && c.pass;
  rep.max_residual = std::max(rep.max_residual, c.max_residual);
}

}  // namespace detail

/// Checks every structural invariant of a SpaceSpec and reports pass/fail
/// with the worst residual per invariant. Shape problems throw
/// StructuralError; dim_m == 0 is rejected up front.
template <class T>
ValidationReport validate_space(const SpaceSpec<T>& spec, double tol = kDefaultTol) {
  const int h = spec.dim_h, m = spec.dim_m, n = spec.dim_g();
  if (h < 0) throw StructuralError("dim_h must be non-negative");
  if (m <= 0) throw StructuralError("dim_m must be positive");
  if (spec.structure.dim0() != n || spec.structure.dim1() != n || spec.structure.dim2() != n)
    throw StructuralError("structure constant block must be dim_g^3");
  if (spec.gram.rows() != m || spec.gram.cols() != m)
    throw StructuralError("gram block must be dim_m x dim_m");
  for (const auto& g : spec.isotropy_generators)
    if (g.rows() != m || g.cols() != m)
      throw StructuralError("isotropy generator must be dim_m x dim_m");

  ValidationReport rep;
  const auto& c = spec.structure;

  ResidualMax<T> antisym;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k) antisym.add(c(i, j, k) + c(j, i, k));
  detail::push_check(rep, "antisymmetry", antisym, tol);

  ResidualMax<T> jacobi;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          T s(0);
          for (int p = 0; p < n; ++p)
            s += c(i, j, p) * c(p, k, l) + c(j, k, p) * c(p, i, l) + c(k, i, p) * c(p, j, l);
          jacobi.add(s);
        }
  detail::push_check(rep, "jacobi", jacobi, tol);

  ResidualMax<T> h_sub;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      for (int k = h; k < n; ++k) h_sub.add(c(i, j, k));
  detail::push_check(rep, "h_subalgebra", h_sub, tol);

  ResidualMax<T> reductive;
  for (int i = 0; i < h; ++i)
    for (int j = h; j < n; ++j)
      for (int k = 0; k < h; ++k) reductive.add(c(i, j, k));
  detail::push_check(rep, "reductivity", reductive, tol);

  ResidualMax<T> gram_sym;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) gram_sym.add(spec.gram(i, j) - spec.gram(j, i));
  detail::push_check(rep, "gram_symmetric", gram_sym, tol);

  {
    InvariantCheck pd;
    pd.name = "gram_positive_definite";
    double min_eig = 0.0;
    pd.pass = positive_definite(spec.gram, &min_eig);
    pd.max_residual = pd.pass ? 0.0 : std::max(tol, -min_eig);
    rep.checks.push_back(pd);
    rep.valid = rep.valid && pd.pass;
    rep.max_residual = std::max(rep.max_residual, pd.max_residual);
  }

  // <[W,X]_m, Y> + <X, [W,Y]_m> = 0 for W in h, X, Y in m.
  ResidualMax<T> ad_inv;
  for (int w = 0; w < h; ++w)
    for (int x = 0; x < m; ++x)
      for (int y = 0; y <= x; ++y) {
        T s(0);
        for (int k = 0; k < m; ++k)
          s += c(w, h + x, h + k) * spec.gram(k, y) + c(w, h + y, h + k) * spec.gram(x, k);
        ad_inv.add(s);
      }
  detail::push_check(rep, "gram_ad_invariant", ad_inv, tol);

  if (!spec.isotropy_generators.empty()) {
    // Only the m-blocks of the generators are known, so the checkable
    // conditions are: gram isometry, automorphism of [.,.]_m, and
    // equivariance of the composite (X,Y,Z) -> [[X,Y]_h, Z].
    ResidualMax<T> gen_res;
    for (const auto& g : spec.isotropy_generators) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
          T s = -spec.gram(i, j);
          for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) s += g(p, i) * spec.gram(p, q) * g(q, j);
          gen_res.add(s);
        }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            // g [e_i, e_j]_m  vs  [g e_i, g e_j]_m, component k
            T lhs(0), rhs(0);
            for (int p = 0; p < m; ++p) lhs += g(k, p) * c(h + i, h + j, h + p);
            for (int p = 0; p < m; ++p)
              for (int q = 0; q < m; ++q) rhs += g(p, i) * g(q, j) * c(h + p, h + q, h + k);
            gen_res.add(lhs - rhs);
          }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int z = 0; z < m; ++z)
            for (int l = 0; l < m; ++l) {
              // g [[e_i,e_j]_h, e_z]  vs  [[g e_i, g e_j]_h, g e_z], component l
              T lhs(0), rhs(0);
              for (int a = 0; a < h; ++a)
                for (int k = 0; k < m; ++k)
                  lhs += g(l, k) * c(h + i, h + j, a) * c(a, h + z, h + k);
              for (int p = 0; p < m; ++p)
                for (int q = 0; q < m; ++q)
                  for (int a = 0; a < h; ++a)
                    for (int zz = 0; zz < m; ++zz)
                      rhs += g(p, i) * g(q, j) * g(zz, z) * c(h + p, h + q, a) * c(a, h + zz, h + l);
              gen_res.add(lhs - rhs);
            }
    }
    detail::push_check(rep, "isotropy_generators", gen_res, tol);
  }

  return rep;
}

/// Splits the combined structure constants into the m-bracket, the h-part
/// of m-brackets, and the h-action on m. Pure index slicing given the
/// adapted basis convention.
template <class T>
MAlgebra<T> project_algebra(const SpaceSpec<T>& spec) {
  const int h = spec.dim_h, m = spec.dim_m;
  MAlgebra<T> alg;
  alg.dim = m;
  alg.dim_h = h;
  alg.bracket_m = Tensor3<T>(m, m, m);
  alg.bracket_h = Tensor3<T>(m, m, h);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) alg.bracket_m(i, j, k) = spec.structure(h + i, h + j, h + k);
      for (int a = 0; a < h; ++a) alg.bracket_h(i, j, a) = spec.structure(h + i, h + j, a);
    }
  alg.h_action.reserve(h);
  for (int a = 0; a < h; ++a) {
    Mat<T> act = Mat<T>::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) act(k, i) = spec.structure(a, h + i, h + k);
    alg.h_action.push_back(std::move(act));
  }
  return alg;
}

template <class T>
SpaceSpec<double> to_double(const SpaceSpec<T>& spec) {
  SpaceSpec<double> out;
  out.dim_h = spec.dim_h;
  out.dim_m = spec.dim_m;
  const int n = spec.dim_g();
  out.structure = Tensor3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.structure(i, j, k) = ScalarTraits<T>::to_double(spec.structure(i, j, k));
  out.gram = Matd(spec.dim_m, spec.dim_m);
  for (int i = 0; i < spec.dim_m; ++i)
    for (int j = 0; j < spec.dim_m; ++j)
      out.gram(i, j) = ScalarTraits<T>::to_double(spec.gram(i, j));
  for (const auto& g : spec.isotropy_generators) {
    Matd gd(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) gd(i, j) = ScalarTraits<T>::to_double(g(i, j));
    out.isotropy_generators.push_back(std::move(gd));
  }
  return out;
}

}  // namespace rgw
