#include "eftcalc/errors.hpp"
#include "eftcalc/loop.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace eftcalc;

namespace {

const Coefficient kInvSixteenPi2 = Coefficient::rational(Rational(1, 16)) * Coefficient::symbol(kPi, -2);

Term rank_term(int rank, Scheme scheme = Scheme::DimReg) {
  LoopIntegral l = LoopIntegral::scalar_bubble("m", scheme);
  l.rank = rank;
  Term t{Coefficient(), {}, {}, l};
  static const char* idx[] = {"a", "b", "c"};
  for (int k = 0; k < rank; ++k) t.factors.push_back(TensorFactor::momentum(std::string(kLoopMomentum), idx[k]));
  return t;
}

}  // namespace

TEST_CASE("symmetric reduction") {
  CHECK(symmetric_reduce(rank_term(1)).empty());
  CHECK_THROWS_AS(symmetric_reduce(rank_term(3)), UnsupportedReduction);

  const Expression r2 = symmetric_reduce(rank_term(2));
  REQUIRE(r2.size() == 1);
  const Term& t = r2.terms().front();
  CHECK(t.coeff == Coefficient::symbol(kDim, -1));
  CHECK(t.integral->numerator == Numerator::MomentumSquared);
  CHECK(t.factors == std::vector{TensorFactor::metric("a", "b")});

  // Contracting eta^{ab} recovers the p^2 integral.
  Term traced = t;
  traced.factors = {TensorFactor::metric("a", "a")};
  const Expression back = contract(canonicalize(Expression(traced)));
  REQUIRE(back.size() == 1);
  CHECK(back.terms().front().coeff == Coefficient());
  CHECK(back.terms().front().integral->numerator == Numerator::MomentumSquared);

  CHECK(symmetric_reduce(rank_term(0)) == Expression(rank_term(0)));
}

TEST_CASE("dimreg table") {
  const GammaForm g = evaluate_dimreg(LoopIntegral::scalar_bubble("m"));
  CHECK(g.gamma_offset == 2);
  CHECK(g.prefactor == 1);
  LoopIntegral cubic = LoopIntegral::scalar_bubble("m");
  cubic.n1 = 3;
  CHECK_THROWS_AS(evaluate_dimreg(cubic), NotInTable);
  CHECK_THROWS_AS(evaluate_dimreg(LoopIntegral::scalar_bubble("")), NotInTable);
}

TEST_CASE("laurent expansion of the bubble") {
  const Expression s = laurent_expand(evaluate_dimreg(LoopIntegral::scalar_bubble("m")));
  const Expression expected =
      Expression::scalar(kInvSixteenPi2 * Coefficient(2) * Coefficient::eps_power(-1)) +
      Expression::scalar(kInvSixteenPi2 * Coefficient::log_atom(log_scale_over_mass("m"))) +
      Expression::scalar(kInvSixteenPi2 * Coefficient::log_atom(log_four_pi())) +
      Expression::scalar(-kInvSixteenPi2 * Coefficient::symbol(kEulerGamma));
  CHECK(s == expected);

  CHECK(pole_part(s) == Expression::scalar(kInvSixteenPi2 * Coefficient(2) * Coefficient::eps_power(-1)));
  int poles = 0;
  for (const auto& t : s.terms()) {
    poles += t.coeff.eps_pole() == -1;
    int logs = 0;
    for (const auto& [atom, k] : t.coeff.logs()) logs += k;
    CHECK(logs <= 1);
  }
  CHECK(poles == 1);

  // mu = m removes the scale log.
  Expression finite;
  for (const auto& t : finite_part(s).terms())
    if (!t.coeff.logs().contains(log_scale_over_mass("m"))) finite += Expression(t);
  CHECK(finite == Expression::scalar(kInvSixteenPi2 * Coefficient::log_atom(log_four_pi())) +
                      Expression::scalar(-kInvSixteenPi2 * Coefficient::symbol(kEulerGamma)));
}

TEST_CASE("laurent expansion matches the gamma form numerically") {
  const GammaForm g = evaluate_dimreg(LoopIntegral::scalar_bubble("m"));
  const Expression s = laurent_expand(g);
  const double mu = 2.5, m = 0.7;
  auto remainder = [&](double eps) {
    double series = 0.0;
    for (const auto& t : s.terms()) {
      double v = t.coeff.number().re.convert_to<double>();
      for (const auto& [name, e] : t.coeff.constants())
        v *= std::pow(name == kPi ? std::numbers::pi : std::numbers::egamma, e);
      for (const auto& [atom, k] : t.coeff.logs())
        v *= std::pow(atom == log_four_pi() ? std::log(4 * std::numbers::pi) : std::log(mu * mu / (m * m)), k);
      series += v * std::pow(eps, t.coeff.eps_pole());
    }
    return g.evaluate(4 - eps, mu, m) - series;
  };
  // The truncation error is O(eps): small, and doubling with eps.
  const double r1 = remainder(1e-3), r2 = remainder(2e-3);
  CHECK(std::abs(r1) < 1e-3);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("cutoff evaluation") {
  Term t2 = rank_term(2, Scheme::Cutoff);
  const Expression r = evaluate_cutoff(t2);
  REQUIRE(r.size() == 2);
  // -i [Lambda^2/16pi^2 + (m^2/4pi^2) ln(Lambda/m)] eta_ab
  Coefficient lambda2, logterm;
  for (const auto& t : r.terms()) {
    CHECK(t.factors == std::vector{TensorFactor::metric("a", "b")});
    if (t.coeff.exponent(kCutoff) == 2) lambda2 = t.coeff;
    if (t.coeff.has_logs()) logterm = t.coeff;
  }
  CHECK(lambda2 == Coefficient(Gaussian(0, Rational(-1, 16))) * Coefficient::symbol(kPi, -2) *
                       Coefficient::symbol(kCutoff, 2));
  CHECK(logterm == Coefficient(Gaussian(0, Rational(-1, 4))) * Coefficient::symbol(kPi, -2) *
                       Coefficient::symbol("m", 2) * Coefficient::log_atom(log_cutoff_over_mass("m")));
  CHECK(evaluate_cutoff(rank_term(1, Scheme::Cutoff)).empty());
}

TEST_CASE("pole coefficient equals the cutoff log coefficient") {
  const Expression dim = laurent_expand(evaluate_dimreg(LoopIntegral::scalar_bubble("m")));
  Coefficient pole;
  for (const auto& t : pole_part(dim).terms()) pole = t.coeff;
  const Expression cut = evaluate_cutoff(rank_term(0, Scheme::Cutoff));
  Coefficient log_coeff;
  for (const auto& t : cut.terms())
    if (t.coeff.has_logs()) log_coeff = t.coeff;
  // 2/eps pairs with ln(Lambda^2/m^2) = 2 ln(Lambda/m): equal coefficients.
  const Coefficient stripped = Coefficient(log_coeff.number()) * Coefficient::symbol(kPi, log_coeff.exponent(kPi));
  CHECK(log_coeff.logs().size() == 1);
  CHECK(pole * Coefficient::eps_power(1) == stripped);
  CHECK(stripped == Coefficient::rational(Rational(1, 8)) * Coefficient::symbol(kPi, -2));
}

TEST_CASE("cutoff closed form") {
  const double c = cutoff_scalar_closed_form(1.0, 1.0);
  CHECK(c == doctest::Approx((std::log(2.0) - 0.5) / (16 * std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
}
