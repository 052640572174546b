#pragma once

#include <complex>
#include <vector>

#include "rgw/connections.hpp"
#include "rgw/structure.hpp"

namespace rgw {

class CodazziError : public std::runtime_error {
public:
  explicit CodazziError(const std::string& what) : std::runtime_error(what) {}
};

struct CompatViolation {
  int i = 0, j = 0, k = 0;  // block indices
  int a = 0, b = 0, c = 0;  // basis indices inside the blocks
  double residual = 0.0;
};

class CompatibilityError : public CodazziError {
public:
  explicit CompatibilityError(const CompatViolation& v)
      : CodazziError("compatibility condition violated on block triple (" +
                     std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) +
                     ")"),
        violation(v) {}
  CompatViolation violation;
};

/// Orthogonal eigenspace decomposition of m induced by a symmetric form,
/// eigenvalues strictly increasing, block columns gram-orthonormal.
struct SpectralDecomp {
  int r = 0;
  std::vector<double> lambdas;
  std::vector<Matd> blocks;
  std::vector<Matd> projectors;  // P_i = B_i B_i^T G

  int dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].rows()); }
  int block_dim(int i) const { return static_cast<int>(blocks[i].cols()); }

  /// Gram-orthonormal basis of the complement of block k.
  Matd perp_basis(int k) const {
    int cols = 0;
    for (int j = 0; j < r; ++j)
      if (j != k) cols += block_dim(j);
    Matd out(dim(), cols);
    int at = 0;
    for (int j = 0; j < r; ++j) {
      if (j == k) continue;
      out.middleCols(at, block_dim(j)) = blocks[j];
      at += block_dim(j);
    }
    return out;
  }
};

/// Solves the gram-self-adjoint eigenproblem A v = lambda G v and merges
/// eigenvalues whose gap is below cluster_tol relative to the spectral
/// spread. Throws StructuralError when gram is not positive-definite.
SpectralDecomp spectral_decompose(const Matd& a, const Matd& gram,
                                  double cluster_tol = kClusterTol);

/// Residuals of the SpectralDecomp invariants against (A, gram).
struct DecompCheck {
  double orthonormality = 0.0;
  double completeness = 0.0;   // deviation of summed projectors from identity
  double reconstruction = 0.0;
  bool ordered = true;
};
DecompCheck check_decomp(const SpectralDecomp& d, const Matd& a, const Matd& gram);

struct CompatReport {
  bool ok = true;
  double max_residual = 0.0;
  std::vector<CompatViolation> violations;  // capped; worst kept first
};

/// Evaluates (l_i-l_k)^2 <[X_i,Y_j],Z_k> + (l_j-l_i)^2 <[X_i,Z_k],Y_j> over
/// all block-basis triples.
CompatReport check_compatibility(const MAlgebrad& alg, const Matd& gram,
                                 const SpectralDecomp& decomp, double tol = kDefaultTol);

/// Builds A = sum_i lambda_i <.,.>|_{m_i x m_i} from prescribed blocks.
/// Blocks must be mutually gram-orthogonal, ad(h)-invariant and span m;
/// lambdas mutually distinct; compatibility is checked and a violation
/// raises CompatibilityError carrying the triple.
Matd construct_codazzi(const MAlgebrad& alg, const Matd& gram, const std::vector<Matd>& blocks,
                       const std::vector<double>& lambdas, double tol = kDefaultTol);

/// Codazzi residual of a symmetric form against a product:
/// max |a(X,A)(Y,Z) - a(Y,A)(X,Z)| over basis triples.
template <class T>
ResidualMax<T> codazzi_residual(const ProductTable<T>& alpha, const Mat<T>& form) {
  const int n = alpha.dim;
  ResidualMax<T> worst;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T s(0);
        for (int p = 0; p < n; ++p) {
          s -= alpha.coeffs(x, y, p) * form(p, z) + alpha.coeffs(x, z, p) * form(y, p);
          s += alpha.coeffs(y, x, p) * form(p, z) + alpha.coeffs(y, z, p) * form(x, p);
        }
        worst.add(s);
      }
  return worst;
}

/// Basis of the space of invariant symmetric forms satisfying the Codazzi
/// linear system for the given Levi-Civita product. The basis is returned
/// orthonormalized under the pairing tr(G^-1 A G^-1 B) with the gram
/// direction listed first (exact mode: orthogonalized, leading entry 1).
template <class T>
std::vector<Mat<T>> codazzi_solution_space(const SpaceSpec<T>& spec, const ProductTable<T>& alpha);

/// Orders and pairing-orthonormalizes a set of symmetric forms with the
/// gram direction first. Used by codazzi_solution_space; exposed for tests.
std::vector<Matd> order_form_basis(const std::vector<Matd>& forms, const Matd& gram);
std::vector<Mat<Rational>> order_form_basis(const std::vector<Mat<Rational>>& forms,
                                            const Mat<Rational>& gram);

/// Distance of `form` from the span of `basis` under the Frobenius norm of
/// the packed representation (diagnostic; used for "gram lies in the span").
double form_span_distance(const std::vector<Matd>& basis, const Matd& form);

struct Classification {
  bool parallel = false;
  bool essential = false;
  int r = 0;
  double codazzi_res = 0.0;
  double nabla_max = 0.0;   // max |nabla A| entry
  double triple_max = 0.0;  // max |<X_i,[Y_j,Z_k]>| over mutually distinct blocks
  bool criteria_agree = true;   // covariant-differential vs triple criterion
  bool r_rule_ok = true;        // nonparallel => r >= 3
  std::vector<int> ideal_eigenspaces;
  SpectralDecomp decomp;
};

/// Classifies a Codazzi solution as parallel/nonparallel (via the covariant
/// differential, cross-checked against the mutually-distinct-triple
/// criterion) and essential (nonparallel and no eigenspace an ideal).
/// Throws CodazziError when the form fails the Codazzi residual test.
Classification classify(const Matd& form, const SpaceSpecd& spec, const ProductTabled& alpha,
                        double tol = kDefaultTol, double cluster_tol = kClusterTol);

/// Predicted mixed-block products alpha(X_i, Y_j) =
/// sum_k ((l_i-l_k)/(l_i-l_j)) [X_i,Y_j]_k for one basis pair; i == j is
/// rejected. Compatibility of the decomposition is the caller's contract.
Vecd eigen_alpha_pair(const MAlgebrad& alg, const SpectralDecomp& decomp, int i, int j,
                      const Vecd& x, const Vecd& y);

/// Worst deviation between the eigen-formula prediction and the actual
/// Levi-Civita product over all mixed block-basis pairs. Throws
/// CompatibilityError when the decomposition is incompatible.
double eigen_alpha_residual(const MAlgebrad& alg, const Matd& gram, const SpectralDecomp& decomp,
                            const ProductTabled& alpha, double tol = kDefaultTol);

struct SkewRepReport {
  double skew_residual = 0.0;   // modified-inner-product skew-adjointness
  double max_abs_real = 0.0;    // spectra of pi_k_perp o ad(Z_k)|_{m_k_perp}
  std::vector<std::complex<double>> spectrum;
  bool ok = true;
};

/// Verifies that ad by block-k vectors acts skew-adjointly on the
/// complement for the modified inner product <<.,.>>_k and that the
/// characteristic roots are purely imaginary.
SkewRepReport skew_representation_check(const MAlgebrad& alg, const Matd& gram,
                                        const SpectralDecomp& decomp, int k,
                                        double tol = kDefaultTol);

// --- implementation of the templated solver --------------------------------

template <class T>
std::vector<Mat<T>> codazzi_solution_space(const SpaceSpec<T>& spec, const ProductTable<T>& alpha) {
  const int n = spec.dim_m;
  if (alpha.dim != n) throw StructuralError("codazzi_solution_space: dimension mismatch");
  const std::vector<Mat<T>> inv_forms = invariant_symmetric_forms(spec);
  const int nb = static_cast<int>(inv_forms.size());
  if (nb == 0) return {};

  // One row per basis triple (x < y, z), one column per invariant form.
  Mat<T> system(n * (n - 1) / 2 * n, nb);
  int row = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        for (int b = 0; b < nb; ++b) {
          const Mat<T>& s = inv_forms[b];
          T e(0);
          for (int p = 0; p < n; ++p) {
            e -= alpha.coeffs(x, y, p) * s(p, z) + alpha.coeffs(x, z, p) * s(y, p);
            e += alpha.coeffs(y, x, p) * s(p, z) + alpha.coeffs(y, z, p) * s(x, p);
          }
          system(row, b) = e;
        }
        ++row;
      }

  Mat<T> coeffs = nullspace(system);
  std::vector<Mat<T>> sols;
  sols.reserve(coeffs.cols());
  for (int c = 0; c < coeffs.cols(); ++c) {
    Mat<T> a = Mat<T>::Zero(n, n);
    for (int b = 0; b < nb; ++b)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) a(p, q) += coeffs(b, c) * inv_forms[b](p, q);
    sols.push_back(std::move(a));
  }
  return order_form_basis(sols, spec.gram);
}

}  // namespace rgw
