#include <doctest.h>

#include <stdexcept>

#include "blc/rational.hpp"

using blc::Rational;

TEST_CASE("normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(Rational(-3, 7).abs() == Rational(3, 7));
  CHECK(Rational(5, 7).reciprocal() == Rational(7, 5));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
}

TEST_CASE("parse and print") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-4).str() == "-4");
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("floor and rounding") {
  CHECK(blc::floor(Rational(7, 2)) == 3);
  CHECK(blc::floor(Rational(-7, 2)) == -4);
  CHECK(blc::round_nearest(Rational(5, 2)) == 3);
  CHECK(blc::round_nearest(Rational(2, 3)) == 1);
  CHECK(blc::round_nearest(Rational(-1, 3)) == 0);
}

TEST_CASE("overflow is reported") {
  Rational big(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(Rational(1).operator/=(Rational(0)), std::domain_error);
}
