#include "eftcalc/loop.hpp"

#include "eftcalc/errors.hpp"

#include <cmath>
#include <numbers>

namespace eftcalc {

namespace {

std::vector<std::size_t> loop_momenta(const Term& t) {
  std::vector<std::size_t> at;
  for (std::size_t n = 0; n < t.factors.size(); ++n)
    if (t.factors[n].kind == FactorKind::Momentum && t.factors[n].name == kLoopMomentum) at.push_back(n);
  return at;
}

const LoopIntegral& require_integral(const Term& t) {
  if (!t.integral) throw StructuralError("term carries no loop integral: " + t.to_string());
  return *t.integral;
}

Coefficient inv_pi2(Rational r) { return Coefficient::rational(std::move(r)) * Coefficient::symbol(kPi, -2); }

Expression exp_series(const std::string& atom, int max_power) {
  // sum_n (eps/2)^n atom^n / n!
  std::vector<Term> out;
  Rational fact = 1;
  for (int n = 0; n <= max_power; ++n) {
    if (n) fact *= n;
    Coefficient c = Coefficient::rational(Rational(1) / (rational_pow(2, n) * fact)) *
                    Coefficient::eps_power(n);
    if (n) c *= Coefficient::log_atom(atom, n);
    out.push_back(Term{c, {}, {}, {}});
  }
  return canonicalize(Expression::from_terms(std::move(out)));
}

Expression keep_through(const Expression& e, int order) {
  std::vector<Term> out;
  for (const auto& t : e.terms())
    if (t.coeff.eps_pole() <= order) out.push_back(t);
  return Expression::from_terms(std::move(out));
}

}  // namespace

Expression symmetric_reduce(const Term& t) {
  const auto& l = require_integral(t);
  if (!l.zero_external) throw UnsupportedReduction("symmetric reduction needs vanishing external momentum");
  if (l.numerator == Numerator::MomentumSquared) return canonicalize(Expression(t));
  auto at = loop_momenta(t);
  if (at.size() > 2)
    throw UnsupportedReduction("numerator rank " + std::to_string(at.size()) + " exceeds 2 in " + t.to_string());
  if (at.size() % 2) return {};
  if (at.empty()) return canonicalize(Expression(t));
  Term r = t;
  const std::string a = t.factors[at[0]].indices[0];
  const std::string b = t.factors[at[1]].indices[0];
  r.factors.erase(r.factors.begin() + static_cast<std::ptrdiff_t>(at[1]));
  r.factors.erase(r.factors.begin() + static_cast<std::ptrdiff_t>(at[0]));
  r.factors.push_back(TensorFactor::metric(a, b));
  r.coeff *= Coefficient::symbol(kDim, -1);
  r.integral->numerator = Numerator::MomentumSquared;
  r.integral->rank = 2;
  return canonicalize(Expression(std::move(r)));
}

std::string GammaForm::to_string() const {
  std::string pre = prefactor == 1 ? "" : Gaussian(prefactor).to_string() + " * ";
  std::string a = std::to_string(gamma_offset);
  return pre + "(4 pi)^(-d/2) * Gamma(" + a + " - d/2) * (mu^2/" + mass + "^2)^(" + a + " - d/2)";
}

double GammaForm::evaluate(double d, double mu, double m) const {
  const double x = gamma_offset - d / 2;
  return static_cast<double>(prefactor) * std::pow(4 * std::numbers::pi, -d / 2) * std::tgamma(x) *
         std::pow(mu * mu / (m * m), x);
}

GammaForm evaluate_dimreg(const LoopIntegral& l) {
  if (l.scheme != Scheme::DimReg) throw NotInTable("evaluate_dimreg called on a cutoff integral " + l.to_string());
  if (!l.is_scalar_bubble())
    throw NotInTable("no dimensional-regularization entry for " + l.to_string() +
                     " (only the k = 0 bubble with n1 + n2 = 2 and scalar numerator)");
  if (l.mass.empty()) throw NotInTable("massless bubble at k = 0 is scaleless");
  return GammaForm{1, 2, l.mass};
}

Expression laurent_expand(const GammaForm& g, int order) {
  if (order != 0) throw DomainError("laurent_expand supports order 0 only");
  const int k = g.gamma_offset - 2;
  if (k < 0) throw DomainError("Gamma(" + std::to_string(k) + " + eps/2) has a higher-order pole");

  // d = 4 - eps:  (4pi)^(-2) (4pi)^(eps/2) Gamma(k + eps/2) (mu^2/m^2)^k (mu^2/m^2)^(eps/2)
  Expression gamma;
  int other_order = order;
  if (k == 0) {
    // Gamma(x) = 1/x - gammaE + O(x), x = eps/2
    gamma = Expression::scalar(Coefficient(2) * Coefficient::eps_power(-1)) +
            Expression::scalar(-Coefficient::symbol(kEulerGamma));
    other_order = order + 1;
  } else {
    Rational fact = 1;
    for (int n = 2; n < k; ++n) fact *= n;
    gamma = Expression::scalar(Coefficient::rational(fact));
  }
  Coefficient lead = inv_pi2(Rational(1, 16)) * Coefficient::rational(g.prefactor);
  if (k) lead *= Coefficient::symbol(kScale, 2 * k) * Coefficient::symbol(g.mass, -2 * k);

  Expression series = Expression::scalar(lead) * gamma * exp_series(log_four_pi(), other_order) *
                      exp_series(log_scale_over_mass(g.mass), other_order);
  return keep_through(series, order);
}

Expression pole_part(const Expression& e) {
  std::vector<Term> out;
  for (const auto& t : e.terms())
    if (t.coeff.eps_pole() < 0) out.push_back(t);
  return Expression::from_terms(std::move(out));
}

Expression finite_part(const Expression& e) {
  std::vector<Term> out;
  for (const auto& t : e.terms())
    if (t.coeff.eps_pole() == 0) out.push_back(t);
  return Expression::from_terms(std::move(out));
}

Expression evaluate_cutoff(const Term& t) {
  const auto& l = require_integral(t);
  if (l.scheme != Scheme::Cutoff) throw NotInTable("evaluate_cutoff called on " + l.to_string());
  if (l.total_power() != 2 || !l.zero_external)
    throw NotInTable("no cutoff entry for " + l.to_string());

  Term rest = t;
  rest.integral.reset();
  const bool massive = !l.mass.empty();

  // Bracket [Lambda^2/16pi^2 + (m^2/4pi^2) ln(Lambda/m)].
  Expression bracket = Expression::scalar(inv_pi2(Rational(1, 16)) * Coefficient::symbol(kCutoff, 2));
  if (massive)
    bracket += Expression::scalar(inv_pi2(Rational(1, 4)) * Coefficient::symbol(l.mass, 2) *
                                  Coefficient::log_atom(log_cutoff_over_mass(l.mass)));
  const Coefficient minus_i(Gaussian(0, -1));

  if (l.numerator == Numerator::MomentumSquared)
    return Expression(rest) * bracket * (minus_i * Coefficient::symbol(kDim));

  auto at = loop_momenta(t);
  if (at.size() != static_cast<std::size_t>(l.rank))
    throw StructuralError("integral rank does not match the loop-momentum factors in " + t.to_string());
  if (at.size() % 2) return {};
  if (at.empty()) {
    if (!massive) throw NotInTable("massless cutoff bubble is infrared divergent");
    Expression leading = Expression::scalar(inv_pi2(Rational(1, 8)) *
                                            Coefficient::log_atom(log_cutoff_over_mass(l.mass))) +
                         Expression::scalar(inv_pi2(Rational(-1, 16)));
    return Expression(rest) * leading;
  }
  if (at.size() != 2) throw NotInTable("no cutoff entry for rank " + std::to_string(at.size()));
  const std::string a = t.factors[at[0]].indices[0];
  const std::string b = t.factors[at[1]].indices[0];
  rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(at[1]));
  rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(at[0]));
  rest.factors.push_back(TensorFactor::metric(a, b));
  return Expression(rest) * bracket * minus_i;
}

double cutoff_scalar_closed_form(double m, double cutoff) {
  const double m2 = m * m;
  const double L2 = cutoff * cutoff;
  return (std::log((L2 + m2) / m2) + m2 / (L2 + m2) - 1.0) / (16 * std::numbers::pi * std::numbers::pi);
}

}  // namespace eftcalc
