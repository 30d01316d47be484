#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <climits>

#include "stm/laurent.hpp"
#include "stm/rational.hpp"

using stm::LaurentPoly;
using stm::Rational;

TEST_CASE("rational basics") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(-2, 3).to_string() == "-2/3");
  CHECK(Rational(7).to_string() == "7");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational promotes on overflow and demotes back") {
  Rational big(LLONG_MAX);
  Rational x = big * big;
  CHECK_FALSE(x.is_small());
  Rational y = x / big;
  CHECK(y == big);
  CHECK(y.is_small());
  Rational z = (big + 1) - 1;
  CHECK(z == big);
  CHECK(z.is_small());
  Rational w = Rational(LLONG_MIN) * Rational(-1);
  CHECK(w.to_string() == "9223372036854775808");
}

TEST_CASE("laurent polynomials") {
  LaurentPoly q = LaurentPoly::monomial(1);
  LaurentPoly p = (LaurentPoly(1) + q) * (LaurentPoly(1) + q);
  CHECK(p.pretty() == "1+2q+q^2");
  CHECK(p.serialize() == "0:1,1:2,2:1");
  CHECK(LaurentPoly::parse(p.serialize()) == p);
  CHECK(p.divide_exact(LaurentPoly(1) + q) == LaurentPoly(1) + q);
  CHECK_THROWS_AS((void)p.divide_exact(LaurentPoly(2) + q), std::domain_error);
  CHECK(q.bar().pretty("v") == "v^-1");
  CHECK(LaurentPoly().serialize().empty());
  CHECK(p.substitute_power(2).pretty() == "1+2q^2+q^4");
}
