#include <doctest.h>

#include "rgw/rational.hpp"

using rgw::Rational;

TEST_CASE("rational arithmetic reduces eagerly") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK((-Rational(2, 4)).str() == "-1/2");
}

TEST_CASE("rational comparison and sign") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5) < Rational(0));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(7, 3).sign() == 1);
  CHECK(abs(Rational(-3, 4)) == Rational(3, 4));
}

TEST_CASE("rational parse round trips") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK(Rational::parse(" 7/2 ") == Rational(7, 2));
  CHECK(Rational::parse("1/2").to_double() == doctest::Approx(0.5));
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational overflow throws instead of losing exactness") {
  const long long big = 3037000499LL;  // ~sqrt(2^63)
  Rational huge(big * big - 1, 1);
  CHECK_THROWS_AS(huge * huge * huge, rgw::ExactOverflow);
}
