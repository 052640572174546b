#include <doctest.h>

#include "rgw/codazzi.hpp"
#include "rgw/curvature.hpp"
#include "rgw/document.hpp"

using namespace rgw;

namespace {

SpaceSpec<Rational> exact_spec(const std::string& name) {
  for (const auto& d : builtin_corpus())
    if (d.name == name) return d.to_exact_spec();
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("exact levi-civita product of bi-invariant su(2) is exactly half the bracket") {
  const SpaceSpec<Rational> spec = exact_spec("su2_bi");
  const ProductTable<Rational> alpha = levi_civita_product(spec);
  CHECK(alpha.coeffs(0, 1, 2) == Rational(1, 2));
  CHECK(alpha.coeffs(1, 0, 2) == Rational(-1, 2));
  CHECK(alpha.coeffs(0, 0, 0).is_zero());
  CHECK(koszul_residual(spec, alpha).pass(0.0));
}

TEST_CASE("exact torsion and metric compatibility are literally zero") {
  for (const char* name : {"su2_bi", "su2_berger", "su2_squashed", "heisenberg3", "sphere_s3"}) {
    const SpaceSpec<Rational> spec = exact_spec(name);
    const MAlgebra<Rational> alg = project_algebra(spec);
    const ProductTable<Rational> alpha = levi_civita_product(spec);
    const Tensor3<Rational> t = torsion(alg, alpha);
    for (const Rational& v : t.data()) CHECK(v.is_zero());
    const Tensor3<Rational> nabla_g = covariant_differential(alpha, spec.gram);
    for (const Rational& v : nabla_g.data()) CHECK(v.is_zero());
  }
}

TEST_CASE("exact curvature of bi-invariant su(2): R(e1,e2)e2 = e1/4") {
  const SpaceSpec<Rational> spec = exact_spec("su2_bi");
  const MAlgebra<Rational> alg = project_algebra(spec);
  const CurvTensor<Rational> r = curvature(alg, levi_civita_product(spec));
  CHECK(r.coeffs(0, 1, 1, 0) == Rational(1, 4));
  CHECK(r.coeffs(0, 1, 1, 1).is_zero());
  CHECK(r.coeffs(0, 1, 1, 2).is_zero());
}

TEST_CASE("exact killing form of su(2) is -2 I") {
  const Mat<Rational> beta = killing_form(project_algebra(exact_spec("su2_bi")));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(beta(i, j) == (i == j ? Rational(-2) : Rational(0)));
}

TEST_CASE("exact validation replaces tolerances by equality") {
  SpaceSpec<Rational> spec = exact_spec("sphere_s2");
  CHECK(validate_space(spec).valid);
  // any nonzero rational perturbation is rejected, however small
  spec.gram(0, 0) += Rational(1, 1000000000000LL);
  const ValidationReport rep = validate_space(spec);
  CHECK_FALSE(rep.valid);
  CHECK_FALSE(rep.find("gram_ad_invariant")->pass);
}

TEST_CASE("exact positive definiteness via leading minors") {
  Mat<Rational> good(2, 2);
  good(0, 0) = Rational(1);
  good(0, 1) = Rational(1, 2);
  good(1, 0) = Rational(1, 2);
  good(1, 1) = Rational(1);
  CHECK(positive_definite(good));
  good(0, 1) = Rational(2);
  good(1, 0) = Rational(2);
  CHECK_FALSE(positive_definite(good));
  Mat<Rational> semidefinite = Mat<Rational>::Zero(2, 2);
  semidefinite(0, 0) = Rational(1);
  CHECK_FALSE(positive_definite(semidefinite));
}

TEST_CASE("exact linear algebra building blocks") {
  SUBCASE("gauss solve inverts a rational matrix exactly") {
    Mat<Rational> a(2, 2);
    a(0, 0) = Rational(1, 2);
    a(0, 1) = Rational(1, 3);
    a(1, 0) = Rational(1, 4);
    a(1, 1) = Rational(1, 5);
    const Mat<Rational> inv = invert(a);
    const Mat<Rational> prod = a * inv;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(prod(i, j) == (i == j ? Rational(1) : Rational(0)));
  }
  SUBCASE("singular systems are refused") {
    Mat<Rational> s = Mat<Rational>::Zero(2, 2);
    s(0, 0) = Rational(1);
    CHECK_THROWS_AS(invert(s), SingularMatrix);
  }
  SUBCASE("rref nullspace of a known system") {
    // x + y + z = 0 has a two-dimensional solution space
    Mat<Rational> m = Mat<Rational>::Zero(1, 3);
    m(0, 0) = m(0, 1) = m(0, 2) = Rational(1);
    const Mat<Rational> null = nullspace(m);
    REQUIRE(null.cols() == 2);
    for (int c = 0; c < 2; ++c) {
      Rational sum(0);
      for (int r = 0; r < 3; ++r) sum += null(r, c);
      CHECK(sum.is_zero());
    }
  }
  SUBCASE("zero-row systems have full nullspace") {
    Mat<Rational> m(0, 4);
    CHECK(nullspace(m).cols() == 4);
  }
}

TEST_CASE("exact codazzi solution spaces match the double route") {
  for (const char* name : {"abelian_r2", "su2_bi", "su2_berger", "su2_squashed", "sphere_s2"}) {
    const SpaceSpec<Rational> spec = exact_spec(name);
    const ProductTable<Rational> alpha = levi_civita_product(spec);
    const std::vector<Mat<Rational>> sols = codazzi_solution_space(spec, alpha);

    SpaceSpecd dspec = to_double(spec);
    const auto dsols = codazzi_solution_space(dspec, levi_civita_product(dspec));
    CHECK(sols.size() == dsols.size());
    for (const auto& s : sols) CHECK(codazzi_residual(alpha, s).pass(0.0));
    // the first basis element is the metric itself
    REQUIRE(!sols.empty());
    for (int i = 0; i < spec.dim_m; ++i)
      for (int j = 0; j < spec.dim_m; ++j) CHECK(sols[0](i, j) == spec.gram(i, j));
  }
}

TEST_CASE("exact squashed su(2) has the hand-computed essential solution") {
  const SpaceSpec<Rational> spec = exact_spec("su2_squashed");
  const ProductTable<Rational> alpha = levi_civita_product(spec);
  Mat<Rational> a = Mat<Rational>::Zero(3, 3);
  a(1, 1) = Rational(2);
  a(2, 2) = Rational(4);
  CHECK(codazzi_residual(alpha, a).pass(0.0));  // exactly Codazzi
  // and its covariant differential does not vanish
  const Tensor3<Rational> nabla = covariant_differential(alpha, a);
  bool nonzero = false;
  for (const Rational& v : nabla.data()) nonzero |= !v.is_zero();
  CHECK(nonzero);
}

TEST_CASE("exact bianchi-jacobi biconditional on corpus members") {
  for (const char* name : {"su2_bi", "sphere_s2", "sphere_s3", "heisenberg3"}) {
    const SpaceSpec<Rational> spec = exact_spec(name);
    const MAlgebra<Rational> alg = project_algebra(spec);
    const CurvTensor<Rational> r0 = curvature(alg, canonical_product<Rational>(alg.dim));
    const BianchiReport rep = bianchi_check(r0, alg, spec.gram, 0.0);
    CHECK(rep.equivalence_ok);
    CHECK(rep.pair_skew);
  }
}

TEST_CASE("exact nilpotency chain") {
  const auto [nil, deg] = is_nilpotent(project_algebra(exact_spec("heisenberg3")));
  CHECK(nil);
  CHECK(*deg == 3);
  CHECK_FALSE(is_nilpotent(project_algebra(exact_spec("su2_bi"))).first);
}

TEST_CASE("exact invariant forms of the sphere") {
  const auto basis = invariant_symmetric_forms(exact_spec("sphere_s2"));
  REQUIRE(basis.size() == 1);
  const Rational lead = basis[0](0, 0);
  CHECK(basis[0](1, 1) == lead);
  CHECK(basis[0](0, 1).is_zero());
}

TEST_CASE("exact naturally reductive identity decisions") {
  CHECK(naturally_reductive_residual(project_algebra(exact_spec("su2_bi")),
                                     exact_spec("su2_bi").gram)
            .pass(0.0));
  CHECK_FALSE(naturally_reductive_residual(project_algebra(exact_spec("su2_berger")),
                                           exact_spec("su2_berger").gram)
                  .pass(0.0));
}
