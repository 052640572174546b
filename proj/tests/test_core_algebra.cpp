#include <doctest.h>

#include "rgw/codazzi.hpp"
#include "rgw/document.hpp"
#include "rgw/structure.hpp"

using namespace rgw;

namespace {

SpaceDocument corpus_doc(const std::string& name) {
  for (const auto& d : builtin_corpus())
    if (d.name == name) return d;
  REQUIRE(false);
  return {};
}

SpaceSpecd corpus_spec(const std::string& name) { return corpus_doc(name).to_spec(); }

SpaceSpecd abelian_spec(int n) {
  SpaceSpecd s;
  s.dim_h = 0;
  s.dim_m = n;
  s.structure = Tensor3<double>(n, n, n);
  s.gram = Matd::Identity(n, n);
  return s;
}

}  // namespace

TEST_CASE("validate accepts the hand-built instances with zero residual") {
  for (const char* name : {"abelian_r3", "su2_bi", "su2_berger", "sphere_s2", "sphere_s3"}) {
    const ValidationReport rep = validate_space(corpus_spec(name));
    CHECK(rep.valid);
    CHECK(rep.max_residual == doctest::Approx(0.0));
  }
}

TEST_CASE("validate rejects structural problems") {
  SpaceSpecd bad = abelian_spec(2);
  bad.dim_m = 0;
  CHECK_THROWS_AS(validate_space(bad), StructuralError);

  SpaceSpecd shape = abelian_spec(2);
  shape.gram = Matd::Identity(3, 3);
  CHECK_THROWS_AS(validate_space(shape), StructuralError);
}

TEST_CASE("single-entry perturbations are rejected by the named invariant") {
  const double bump = 10.0 * kDefaultTol;

  SUBCASE("bracket entry breaks antisymmetry") {
    SpaceSpecd s = corpus_spec("su2_bi");
    s.structure(0, 1, 2) += bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.find("antisymmetry")->pass);
  }
  SUBCASE("antisymmetric pair breaks only the Jacobi identity") {
    SpaceSpecd s = corpus_spec("su2_bi");
    s.structure(0, 1, 0) += bump;  // [e1,e2] picks up an e1 component
    s.structure(1, 0, 0) -= bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK(rep.find("antisymmetry")->pass);
    CHECK_FALSE(rep.find("jacobi")->pass);
  }
  SUBCASE("gram diagonal entry breaks ad(h)-invariance on the sphere") {
    SpaceSpecd s = corpus_spec("sphere_s2");
    s.gram(0, 0) += bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK(rep.find("gram_symmetric")->pass);
    CHECK_FALSE(rep.find("gram_ad_invariant")->pass);
  }
  SUBCASE("off-diagonal gram entry breaks symmetry") {
    SpaceSpecd s = corpus_spec("su2_bi");
    s.gram(0, 1) += bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.find("gram_symmetric")->pass);
  }
  SUBCASE("m-component of an h-bracket breaks the subalgebra condition") {
    SpaceSpecd s = corpus_spec("sphere_s3");
    s.structure(0, 1, 4) += bump;
    s.structure(1, 0, 4) -= bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.find("h_subalgebra")->pass);
  }
  SUBCASE("h-component of a mixed bracket breaks reductivity") {
    SpaceSpecd s = corpus_spec("sphere_s3");
    s.structure(0, 4, 1) += bump;
    s.structure(4, 0, 1) -= bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.find("reductivity")->pass);
  }
  SUBCASE("gram eigenvalue pushed below zero breaks definiteness") {
    SpaceSpecd s = abelian_spec(2);
    s.gram(1, 1) = 0.5 * bump;
    CHECK(validate_space(s).valid);
    s.gram(1, 1) -= bump;
    const ValidationReport rep = validate_space(s);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.find("gram_positive_definite")->pass);
  }
}

TEST_CASE("isotropy generators are screened") {
  SpaceSpecd s = corpus_spec("sphere_s2");
  Matd rot(2, 2);
  rot << 0, -1, 1, 0;  // Ad of a quarter turn
  s.isotropy_generators.push_back(rot);
  CHECK(validate_space(s).valid);

  s.isotropy_generators[0] = Matd::Identity(2, 2) * 2.0;  // not an isometry
  const ValidationReport rep = validate_space(s);
  CHECK_FALSE(rep.valid);
  CHECK_FALSE(rep.find("isotropy_generators")->pass);
}

TEST_CASE("project_algebra splits the sphere table as expected") {
  const MAlgebrad alg = project_algebra(corpus_spec("sphere_s2"));
  CHECK(alg.dim == 2);
  CHECK(alg.dim_h == 1);
  for (const auto& v : alg.bracket_m.data()) CHECK(v == 0.0);
  CHECK(alg.bracket_h(0, 1, 0) == 1.0);
  CHECK(alg.bracket_h(1, 0, 0) == -1.0);
  Matd rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK((alg.h_action[0] - rot).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("project_algebra on a Lie group puts everything in the m-table") {
  const MAlgebrad alg = project_algebra(corpus_spec("heisenberg3"));
  CHECK(alg.dim_h == 0);
  CHECK(alg.bracket_m(0, 1, 2) == 1.0);
  CHECK(alg.bracket_m(1, 0, 2) == -1.0);
  CHECK(alg.bracket_h.data().empty());
}

TEST_CASE("killing form values") {
  SUBCASE("abelian is zero") {
    const Matd beta = killing_form(project_algebra(abelian_spec(3)));
    CHECK(beta.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("su(2) gives -2 identity, matching a brute-force trace") {
    const MAlgebrad alg = project_algebra(corpus_spec("su2_bi"));
    const Matd beta = killing_form(alg);
    CHECK((beta + 2.0 * Matd::Identity(3, 3)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Vecd ei = Vecd::Zero(3), ej = Vecd::Zero(3);
        ei(i) = 1.0;
        ej(j) = 1.0;
        CHECK(beta(i, j) == doctest::Approx((alg.ad(ei) * alg.ad(ej)).trace()));
      }
  }
  SUBCASE("heisenberg is zero") {
    const Matd beta = killing_form(project_algebra(corpus_spec("heisenberg3")));
    CHECK(beta.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("killing split on hand-checked decompositions") {
  SUBCASE("su(2), m1 = span{e1}, m2 = span{e2,e3}") {
    const MAlgebrad alg = project_algebra(corpus_spec("su2_bi"));
    const Matd gram = Matd::Identity(3, 3);
    std::vector<Matd> blocks = {Matd::Identity(3, 3).leftCols(1),
                                Matd::Identity(3, 3).rightCols(2)};
    Vecd z = Vecd::Zero(3);
    z(0) = 1.0;
    const KillingSplit ks = killing_split(alg, gram, blocks, 0, z);
    CHECK(ks.beta == doctest::Approx(-2.0));
    CHECK(ks.beta_k == doctest::Approx(0.0));
    CHECK(ks.correction == doctest::Approx(-2.0));
    CHECK(ks.residual() <= 1e-12);
  }
  SUBCASE("heisenberg center block is all zeros") {
    const MAlgebrad alg = project_algebra(corpus_spec("heisenberg3"));
    const Matd gram = Matd::Identity(3, 3);
    std::vector<Matd> blocks = {Matd::Identity(3, 3).leftCols(2),
                                Matd::Identity(3, 3).rightCols(1)};
    Vecd z = Vecd::Zero(3);
    z(2) = 1.0;
    const KillingSplit ks = killing_split(alg, gram, blocks, 1, z);
    CHECK(ks.beta == 0.0);
    CHECK(ks.beta_k == 0.0);
    CHECK(ks.correction == 0.0);
  }
  SUBCASE("block index out of range throws") {
    const MAlgebrad alg = project_algebra(abelian_spec(2));
    std::vector<Matd> blocks = {Matd::Identity(2, 2)};
    CHECK_THROWS_AS(killing_split(alg, Matd::Identity(2, 2), blocks, 1, Vecd::Ones(2)),
                    std::out_of_range);
  }
}

TEST_CASE("nilpotency chain degrees") {
  CHECK(is_nilpotent(project_algebra(abelian_spec(3))) ==
        std::make_pair(true, std::optional<int>(2)));
  CHECK(is_nilpotent(project_algebra(corpus_spec("heisenberg3"))) ==
        std::make_pair(true, std::optional<int>(3)));
  CHECK_FALSE(is_nilpotent(project_algebra(corpus_spec("su2_bi"))).first);
  CHECK_FALSE(is_nilpotent(project_algebra(corpus_spec("solvable_aff"))).first);
}

TEST_CASE("nilpotent algebras have vanishing killing form") {
  for (const char* name : {"abelian_r2", "abelian_r3", "heisenberg3"}) {
    const MAlgebrad alg = project_algebra(corpus_spec(name));
    REQUIRE(is_nilpotent(alg).first);
    CHECK(killing_form(alg).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("split solvability verdicts") {
  SUBCASE("heisenberg: yes, with an exactly verified chain") {
    const MAlgebrad alg = project_algebra(corpus_spec("heisenberg3"));
    const SolvableVerdict v = is_split_solvable(alg);
    REQUIRE(v.result == SolvableVerdict::Result::yes);
    REQUIRE(v.chain.size() == 2);
    CHECK(v.chain[0].cols() == 2);
    CHECK(v.chain[1].cols() == 1);
    CHECK(verify_solvable_chain(alg, v.chain) <= kDefaultTol);
  }
  SUBCASE("solvable affine algebra: yes") {
    const MAlgebrad alg = project_algebra(corpus_spec("solvable_aff"));
    const SolvableVerdict v = is_split_solvable(alg);
    REQUIRE(v.result == SolvableVerdict::Result::yes);
    CHECK(verify_solvable_chain(alg, v.chain) <= kDefaultTol);
  }
  SUBCASE("su(2): no, witnessed by a unit-imaginary ad eigenvalue") {
    const SolvableVerdict v = is_split_solvable(project_algebra(corpus_spec("su2_bi")));
    REQUIRE(v.result == SolvableVerdict::Result::no);
    CHECK(v.witness_kind == SolvableVerdict::WitnessKind::complex_spectrum);
    CHECK(std::abs(v.witness_eigenvalue.imag()) > 0.5);
  }
  SUBCASE("abelian: yes with a full flag") {
    const MAlgebrad alg = project_algebra(abelian_spec(4));
    const SolvableVerdict v = is_split_solvable(alg);
    REQUIRE(v.result == SolvableVerdict::Result::yes);
    CHECK(v.chain.size() == 3);
    CHECK(verify_solvable_chain(alg, v.chain) == 0.0);
  }
}

TEST_CASE("subspace classification") {
  const MAlgebrad heis = project_algebra(corpus_spec("heisenberg3"));
  const MAlgebrad su2 = project_algebra(corpus_spec("su2_bi"));
  const Matd id3 = Matd::Identity(3, 3);

  CHECK(is_ideal(heis, id3.rightCols(1)));       // the center
  CHECK(is_subalgebra(su2, id3.rightCols(1)));   // span{e3}
  CHECK_FALSE(is_ideal(su2, id3.rightCols(1)));  // [e1,e3] = -e2 escapes
  CHECK(is_ideal(su2, id3));                     // the full space
  CHECK(is_abelian(heis, id3.leftCols(1)));
  CHECK_FALSE(is_abelian(su2, id3.leftCols(2)));

  Matd deficient(3, 2);
  deficient.col(0) = id3.col(0);
  deficient.col(1) = 2.0 * id3.col(0);
  CHECK_THROWS_AS(is_ideal(su2, deficient), StructuralError);
}

TEST_CASE("invariant symmetric forms") {
  SUBCASE("trivial isotropy leaves all of Sym^2") {
    CHECK(invariant_symmetric_forms(abelian_spec(3)).size() == 6);
    CHECK(invariant_symmetric_forms(corpus_spec("su2_berger")).size() == 6);
  }
  SUBCASE("the spheres are isotropy-irreducible") {
    for (const char* name : {"sphere_s2", "sphere_s3"}) {
      const auto basis = invariant_symmetric_forms(corpus_spec(name));
      REQUIRE(basis.size() == 1);
      const Matd b = basis[0] / basis[0](0, 0);
      CHECK((b - Matd::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  SUBCASE("a finite generator cuts the space down") {
    SpaceSpecd s = abelian_spec(2);
    Matd rot(2, 2);
    rot << 0, -1, 1, 0;
    s.isotropy_generators.push_back(rot);
    CHECK(invariant_symmetric_forms(s).size() == 1);
  }
  SUBCASE("the metric always lies in the span") {
    for (const auto& doc : builtin_corpus()) {
      const SpaceSpecd s = doc.to_spec();
      CHECK(form_span_distance(invariant_symmetric_forms(s), s.gram) <= kDefaultTol);
    }
  }
}
