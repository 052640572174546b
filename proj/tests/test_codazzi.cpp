#include <doctest.h>

#include <Eigen/SVD>

#include "rgw/codazzi.hpp"
#include "rgw/document.hpp"

using namespace rgw;

namespace {

SpaceSpecd corpus_spec(const std::string& name) {
  for (const auto& d : builtin_corpus())
    if (d.name == name) return d.to_spec();
  REQUIRE(false);
  return {};
}

SpaceSpecd abelian_spec(int n) {
  SpaceSpecd s;
  s.dim_h = 0;
  s.dim_m = n;
  s.structure = Tensor3<double>(n, n, n);
  s.gram = Matd::Identity(n, n);
  return s;
}

std::vector<Matd> axis_blocks(int n) {
  std::vector<Matd> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back(Matd::Identity(n, n).middleCols(i, 1));
  return blocks;
}

}  // namespace

TEST_CASE("solution space dimensions on the reference instances") {
  CHECK(codazzi_solution_space(abelian_spec(2), levi_civita_product(abelian_spec(2))).size() == 3);
  CHECK(codazzi_solution_space(abelian_spec(3), levi_civita_product(abelian_spec(3))).size() == 6);

  const SpaceSpecd su2 = corpus_spec("su2_bi");
  const auto su2_sols = codazzi_solution_space(su2, levi_civita_product(su2));
  REQUIRE(su2_sols.size() == 1);
  const Matd normalized = su2_sols[0] / su2_sols[0](0, 0);
  CHECK((normalized - Matd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9);

  const SpaceSpecd s2 = corpus_spec("sphere_s2");
  CHECK(codazzi_solution_space(s2, levi_civita_product(s2)).size() == 1);
}

TEST_CASE("su(2) solution space matches an independently assembled system") {
  // Bi-invariant case: alpha = [.,.]/2 is known in closed form, so the
  // 27-equation linear system can be built from scratch here.
  const SpaceSpecd spec = corpus_spec("su2_bi");
  const MAlgebrad alg = project_algebra(spec);
  auto a = [&](int i, int j, int k) { return 0.5 * alg.bracket_m(i, j, k); };

  Matd system(27, 6);
  int row = 0;
  auto sym = [&](int p, int q) { return detail::sym_index(p, q, 3); };
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        Vecd r = Vecd::Zero(6);
        for (int p = 0; p < 3; ++p) {
          r(sym(p, z)) -= a(x, y, p);
          r(sym(y, p)) -= a(x, z, p);
          r(sym(p, z)) += a(y, x, p);
          r(sym(x, p)) += a(y, z, p);
        }
        system.row(row++) = r.transpose();
      }
  const Matd null = nullspace(system);
  REQUIRE(null.cols() == 1);
  const Matd form = detail::unpack_sym<double>(Vecd(null.col(0)), 3);
  CHECK((form / form(0, 0) - Matd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("squashed su(2) carries a nonparallel essential solution") {
  const SpaceSpecd spec = corpus_spec("su2_squashed");
  const ProductTabled alpha = levi_civita_product(spec);
  const auto sols = codazzi_solution_space(spec, alpha);
  REQUIRE(sols.size() >= 2);

  bool essential_found = false;
  for (const auto& s : sols) {
    const Classification cls = classify(s, spec, alpha);
    CHECK(cls.criteria_agree);
    if (!cls.parallel) {
      CHECK(cls.r >= 3);
      if (cls.essential) essential_found = true;
    }
  }
  CHECK(essential_found);

  // The hand-derived representative: A = diag(0, 2, 4) in form coordinates.
  Matd a = Matd::Zero(3, 3);
  a(1, 1) = 2.0;
  a(2, 2) = 4.0;
  CHECK(codazzi_residual(alpha, a).value <= 1e-12);
  const Classification cls = classify(a, spec, alpha);
  CHECK_FALSE(cls.parallel);
  CHECK(cls.essential);
  CHECK(cls.r == 3);
}

TEST_CASE("abelian direct factors give nonparallel solutions that are not essential") {
  // su(2) with the diag(1,1,4) metric plus a flat line: the line is an
  // ideal, so the nonparallel solution loses essentiality.
  SpaceSpecd spec;
  spec.dim_h = 0;
  spec.dim_m = 4;
  spec.structure = Tensor3<double>(4, 4, 4);
  auto set = [&](int i, int j, int k, double v) {
    spec.structure(i, j, k) = v;
    spec.structure(j, i, k) = -v;
  };
  set(0, 1, 2, 1.0);
  set(1, 2, 0, 1.0);
  set(2, 0, 1, 1.0);
  spec.gram = Matd::Identity(4, 4);
  spec.gram(2, 2) = 4.0;
  REQUIRE(validate_space(spec).valid);

  const ProductTabled alpha = levi_civita_product(spec);
  Matd a = Matd::Zero(4, 4);
  a.diagonal() << 0.0, 2.0, 4.0, 3.0;  // eigenvalues 0, 2, 1, 3 against gram
  REQUIRE(codazzi_residual(alpha, a).value <= 1e-12);

  const Classification cls = classify(a, spec, alpha);
  CHECK_FALSE(cls.parallel);
  CHECK(cls.r == 4);
  CHECK(cls.criteria_agree);
  CHECK_FALSE(cls.essential);
  REQUIRE(cls.ideal_eigenspaces.size() == 1);
  // the ideal eigenspace is the flat line e4, sitting at lambda = 3
  CHECK(cls.decomp.lambdas[cls.ideal_eigenspaces[0]] == doctest::Approx(3.0));
  CHECK(std::abs(cls.decomp.blocks[cls.ideal_eigenspaces[0]](3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("ordered basis starts with the gram direction") {
  for (const char* name : {"abelian_r3", "su2_squashed", "sphere_s3"}) {
    const SpaceSpecd spec = corpus_spec(name);
    const auto sols = codazzi_solution_space(spec, levi_civita_product(spec));
    REQUIRE(!sols.empty());
    const double scale = sols[0](0, 0) / spec.gram(0, 0);
    CHECK((sols[0] - scale * spec.gram).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("spectral decomposition") {
  const Matd gram = Matd::Identity(3, 3);
  SUBCASE("A = gram collapses to one block") {
    const SpectralDecomp d = spectral_decompose(gram, gram);
    CHECK(d.r == 1);
    CHECK(d.lambdas[0] == doctest::Approx(1.0));
    CHECK(d.block_dim(0) == 3);
  }
  SUBCASE("diagonal multiplicities split as (1, 2)") {
    Matd a = Matd::Identity(3, 3);
    a(1, 1) = 2.0;
    a(2, 2) = 2.0;
    const SpectralDecomp d = spectral_decompose(a, gram);
    REQUIRE(d.r == 2);
    CHECK(d.lambdas[0] == doctest::Approx(1.0));
    CHECK(d.lambdas[1] == doctest::Approx(2.0));
    CHECK(d.block_dim(0) == 1);
    CHECK(d.block_dim(1) == 2);
    const DecompCheck chk = check_decomp(d, a, gram);
    CHECK(chk.orthonormality <= 1e-12);
    CHECK(chk.completeness <= 1e-12);
    CHECK(chk.reconstruction <= 1e-12);
    CHECK(chk.ordered);
  }
  SUBCASE("sub-threshold gaps merge") {
    Matd a = Matd::Identity(3, 3);
    a(1, 1) = 1.0 + 1e-12;
    a(2, 2) = 3.0;
    const SpectralDecomp d = spectral_decompose(a, gram, 1e-7);
    REQUIRE(d.r == 2);
    CHECK(d.block_dim(0) == 2);
    CHECK(check_decomp(d, a, gram).reconstruction <= 1e-9);
  }
  SUBCASE("a generalized metric produces gram-orthonormal blocks") {
    const SpaceSpecd spec = corpus_spec("su2_berger");
    Matd a(3, 3);
    a << 2, 1, 0, 1, 3, 0, 0, 0, 8;
    const SpectralDecomp d = spectral_decompose(a, spec.gram);
    const DecompCheck chk = check_decomp(d, a, spec.gram);
    CHECK(chk.orthonormality <= 1e-12);
    CHECK(chk.reconstruction <= 1e-12);
  }
  SUBCASE("indefinite gram is rejected") {
    Matd bad = Matd::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(spectral_decompose(Matd::Identity(2, 2), bad), StructuralError);
  }
}

TEST_CASE("compatibility condition") {
  const Matd gram = Matd::Identity(3, 3);
  SUBCASE("abelian decompositions are always compatible") {
    const MAlgebrad alg = project_algebra(abelian_spec(3));
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 1, 2, 3;
    CHECK(check_compatibility(alg, gram, spectral_decompose(a, gram)).ok);
  }
  SUBCASE("su(2) axis blocks with lambdas (0,1,-1) violate with residual 3") {
    const MAlgebrad alg = project_algebra(corpus_spec("su2_bi"));
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 0.0, 1.0, -1.0;
    const CompatReport rep = check_compatibility(alg, gram, spectral_decompose(a, gram));
    CHECK_FALSE(rep.ok);
    CHECK(rep.max_residual == doctest::Approx(3.0));
  }
  SUBCASE("heisenberg with the center split off fails on the (1,1,2) triple") {
    const MAlgebrad alg = project_algebra(corpus_spec("heisenberg3"));
    Matd a = Matd::Identity(3, 3);
    a(2, 2) = 2.0;
    const CompatReport rep = check_compatibility(alg, gram, spectral_decompose(a, gram));
    CHECK_FALSE(rep.ok);
    CHECK(rep.max_residual == doctest::Approx(1.0));  // (l1-l2)^2 * <[e1,e2],e3>
  }
}

TEST_CASE("construct_codazzi") {
  SUBCASE("abelian axes with lambdas (1,2)") {
    const SpaceSpecd spec = abelian_spec(2);
    const MAlgebrad alg = project_algebra(spec);
    const Matd a = construct_codazzi(alg, spec.gram, axis_blocks(2), {1.0, 2.0});
    Matd expect = Matd::Zero(2, 2);
    expect.diagonal() << 1, 2;
    CHECK((a - expect).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(codazzi_residual(levi_civita_product(spec), a).value <= 1e-12);
  }
  SUBCASE("incompatible su(2) axes raise with the violating triple") {
    const SpaceSpecd spec = corpus_spec("su2_bi");
    const MAlgebrad alg = project_algebra(spec);
    CHECK_THROWS_AS(construct_codazzi(alg, spec.gram, axis_blocks(3), {1.0, 2.0, 3.0}),
                    CompatibilityError);
    try {
      construct_codazzi(alg, spec.gram, axis_blocks(3), {1.0, 2.0, 3.0});
    } catch (const CompatibilityError& e) {
      CHECK(e.violation.residual > 0.0);
    }
  }
  SUBCASE("repeated lambdas are rejected") {
    const SpaceSpecd spec = abelian_spec(2);
    CHECK_THROWS_AS(
        construct_codazzi(project_algebra(spec), spec.gram, axis_blocks(2), {1.0, 1.0}),
        CodazziError);
  }
  SUBCASE("single block returns lambda * gram") {
    const SpaceSpecd spec = corpus_spec("sphere_s2");
    const MAlgebrad alg = project_algebra(spec);
    const Matd a =
        construct_codazzi(alg, spec.gram, {Matd::Identity(2, 2)}, {5.0});
    CHECK((a - 5.0 * spec.gram).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("squashed su(2): compatible blocks round-trip through the decomposition") {
    const SpaceSpecd spec = corpus_spec("su2_squashed");
    const MAlgebrad alg = project_algebra(spec);
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 0.0, 2.0, 4.0;
    const SpectralDecomp d = spectral_decompose(a, spec.gram);
    REQUIRE(d.r == 3);
    const Matd rebuilt = construct_codazzi(alg, spec.gram, d.blocks, d.lambdas);
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("classification") {
  SUBCASE("the metric itself is parallel everywhere") {
    for (const auto& doc : builtin_corpus()) {
      const SpaceSpecd spec = doc.to_spec();
      const Classification cls = classify(spec.gram, spec, levi_civita_product(spec));
      CHECK(cls.parallel);
      CHECK(cls.criteria_agree);
      CHECK(cls.r == 1);
      CHECK_FALSE(cls.essential);
    }
  }
  SUBCASE("abelian diagonal forms are parallel") {
    const SpaceSpecd spec = abelian_spec(3);
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 1, 2, 3;
    const Classification cls = classify(a, spec, levi_civita_product(spec));
    CHECK(cls.parallel);
    CHECK(cls.r == 3);
    CHECK(cls.criteria_agree);
  }
  SUBCASE("non-solutions are refused") {
    const SpaceSpecd spec = corpus_spec("su2_bi");
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 1, 2, 3;
    CHECK_THROWS_AS(classify(a, spec, levi_civita_product(spec)), CodazziError);
  }
}

TEST_CASE("eigen-formula for mixed products") {
  const SpaceSpecd spec = corpus_spec("su2_squashed");
  const MAlgebrad alg = project_algebra(spec);
  const ProductTabled alpha = levi_civita_product(spec);
  Matd a = Matd::Zero(3, 3);
  a.diagonal() << 0.0, 2.0, 4.0;
  const SpectralDecomp d = spectral_decompose(a, spec.gram);

  SUBCASE("prediction matches the koszul product on mixed blocks") {
    CHECK(eigen_alpha_residual(alg, spec.gram, d, alpha) <= 1e-9);
  }
  SUBCASE("the diagonal pair is rejected") {
    CHECK_THROWS_AS(
        eigen_alpha_pair(alg, d, 1, 1, d.blocks[1].col(0), d.blocks[1].col(0)),
        std::invalid_argument);
  }
  SUBCASE("abelian predictions vanish") {
    const SpaceSpecd ab = abelian_spec(3);
    const MAlgebrad aalg = project_algebra(ab);
    Matd form = Matd::Zero(3, 3);
    form.diagonal() << 1, 2, 3;
    const SpectralDecomp dd = spectral_decompose(form, ab.gram);
    CHECK(eigen_alpha_pair(aalg, dd, 0, 1, dd.blocks[0].col(0), dd.blocks[1].col(0)).norm() ==
          0.0);
    CHECK(eigen_alpha_residual(aalg, ab.gram, dd, levi_civita_product(ab)) == 0.0);
  }
  SUBCASE("incompatible decompositions are rejected") {
    const SpaceSpecd su2 = corpus_spec("su2_bi");
    const MAlgebrad salg = project_algebra(su2);
    Matd form = Matd::Zero(3, 3);
    form.diagonal() << 1, 2, 3;
    const SpectralDecomp dd = spectral_decompose(form, su2.gram);
    CHECK_THROWS_AS(eigen_alpha_residual(salg, su2.gram, dd, levi_civita_product(su2)),
                    CompatibilityError);
  }
}

TEST_CASE("skew representation on the complement") {
  SUBCASE("abelian: trivially skew, zero spectra") {
    const SpaceSpecd ab = abelian_spec(3);
    Matd form = Matd::Zero(3, 3);
    form.diagonal() << 1, 2, 3;
    const SpectralDecomp d = spectral_decompose(form, ab.gram);
    const SkewRepReport rep = skew_representation_check(project_algebra(ab), ab.gram, d, 0);
    CHECK(rep.ok);
    CHECK(rep.skew_residual == 0.0);
    CHECK(rep.max_abs_real == 0.0);
  }
  SUBCASE("r = 1 is vacuous") {
    const SpaceSpecd spec = corpus_spec("su2_bi");
    const SpectralDecomp d = spectral_decompose(spec.gram, spec.gram);
    const SkewRepReport rep = skew_representation_check(project_algebra(spec), spec.gram, d, 0);
    CHECK(rep.ok);
    CHECK(rep.spectrum.empty());
  }
  SUBCASE("squashed su(2): purely imaginary spectra") {
    const SpaceSpecd spec = corpus_spec("su2_squashed");
    Matd a = Matd::Zero(3, 3);
    a.diagonal() << 0.0, 2.0, 4.0;
    const SpectralDecomp d = spectral_decompose(a, spec.gram);
    for (int k = 0; k < d.r; ++k) {
      const SkewRepReport rep =
          skew_representation_check(project_algebra(spec), spec.gram, d, k);
      CHECK(rep.ok);
      CHECK(rep.skew_residual <= 1e-8);
      CHECK(rep.max_abs_real <= 1e-8);
      CHECK(rep.spectrum.size() == 2);
    }
  }
}
