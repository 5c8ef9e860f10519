#include "eftcalc/coefficient.hpp"
#include "eftcalc/errors.hpp"
#include "eftcalc/expression.hpp"

#include <doctest.h>

#include <random>

using namespace eftcalc;

TEST_CASE("gaussian arithmetic is exact") {
  const Gaussian a(Rational(1, 3), Rational(2));
  const Gaussian b(Rational(-1, 2), Rational(1, 5));
  CHECK(a * b == Gaussian(Rational(1, 3) * Rational(-1, 2) - 2 * Rational(1, 5),
                          Rational(1, 3) * Rational(1, 5) + 2 * Rational(-1, 2)));
  CHECK((a / b) * b == a);
  CHECK(Gaussian::i() * Gaussian::i() == Gaussian(-1));
  CHECK_THROWS_AS(a / Gaussian(0), DomainError);
}

TEST_CASE("coefficient printing") {
  const Coefficient c = Coefficient::rational(Rational(1, 32)) * Coefficient::symbol("e", 2) *
                        Coefficient::symbol("thetaF") * Coefficient::symbol(kPi, -2);
  CHECK(c.to_string() == "(1/32) * e^2 * thetaF * pi^-2");
  CHECK(Coefficient().to_string() == "1");
  CHECK((-Coefficient::symbol("CF")).to_string() == "-CF");
  CHECK(Coefficient::imaginary_unit().to_string() == "i");
}

TEST_CASE("coefficient monomial algebra") {
  const Coefficient e = Coefficient::symbol("e");
  CHECK((e * e.inverse()).is_number());
  CHECK(e.pow(3).exponent("e") == 3);
  CHECK((e * Coefficient::symbol("e", -1)) == Coefficient());
  CHECK(Coefficient::symbol("a", 2).substitute("a", Coefficient(3)) == Coefficient(9));
  CHECK(Coefficient::symbol("a", -1).substitute("a", Coefficient::symbol("b", 2)) == Coefficient::symbol("b", -2));
  CHECK_THROWS_AS(Coefficient::log_atom(log_four_pi()).inverse(), DomainError);
  CHECK(Coefficient::eps_power(-1).eps_pole() == -1);
  CHECK((Coefficient::eps_power(-1) * Coefficient::eps_power(1)).eps_pole() == 0);
  CHECK(Coefficient::rational(0).is_zero());
}

namespace {

Coefficient random_monomial(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), exp(-2, 2), pick(0, 3);
  Coefficient c(Gaussian(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
  static const char* names[] = {"e", "alpha", "m", "pi"};
  c *= Coefficient::symbol(names[pick(rng)], exp(rng));
  if (pick(rng) == 0) c *= Coefficient::log_atom(log_four_pi());
  if (pick(rng) == 0) c *= Coefficient::eps_power(-1);
  return c;
}

Expression scalar_sum(std::mt19937_64& rng) {
  return Expression::scalar(random_monomial(rng)) + Expression::scalar(random_monomial(rng));
}

}  // namespace

TEST_CASE("ring axioms on random exact inputs") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const Expression a = scalar_sum(rng), b = scalar_sum(rng), c = scalar_sum(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a - a).empty());
  }
}
