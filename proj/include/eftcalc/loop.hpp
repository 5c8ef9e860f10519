#pragma once

#include "eftcalc/expression.hpp"

#include <string>

namespace eftcalc {

/// Symmetric integration at k = 0: odd ranks vanish, p_a p_b becomes
/// (1/d) eta_ab times the p^2-numerator scalar, rank 0 is returned unchanged.
/// Throws UnsupportedReduction for rank > 2 or nonzero external momentum.
Expression symmetric_reduce(const Term& t);

/// Closed dimensional-regularization result
///   prefactor * (4 pi)^(-d/2) * Gamma(a - d/2) * (mu^2/m^2)^(a - d/2)
/// for the bubble marker I0(m) (a = 2, prefactor 1).
struct GammaForm {
  Rational prefactor{1};
  int gamma_offset = 2;
  std::string mass;

  std::string to_string() const;
  double evaluate(double d, double mu, double m) const;
};

/// Only the k = 0 bubble with n1 + n2 = 2 and a scalar numerator is tabulated.
GammaForm evaluate_dimreg(const LoopIntegral& l);

/// Laurent series in eps-hat = 4 - d through O(eps^order); only order 0 is
/// supported. Poles are carried in Coefficient::eps_pole, logs as atoms.
Expression laurent_expand(const GammaForm& g, int order = 0);

/// Terms with a negative eps power.
Expression pole_part(const Expression& e);
/// Terms with zero eps power.
Expression finite_part(const Expression& e);

/// Cutoff evaluation at k = 0 of a term carrying a cutoff-scheme marker.
///   rank 2 (p_a p_b):  \int = [Lambda^2/16pi^2 + (m^2/4pi^2) ln(Lambda/m)] eta_ab
///   p^2 numerator:     d times the bracket
///   rank 1:            0
///   rank 0:            (1/16pi^2) [2 ln(Lambda/m) - 1]   (leading in m/Lambda)
/// The marker is -i \int, so the tensor entries pick up a factor -i.
Expression evaluate_cutoff(const Term& t);

/// Euclidean bubble with hard cutoff in closed form,
///   (1/16pi^2) [ln((Lambda^2 + m^2)/m^2) + m^2/(Lambda^2 + m^2) - 1].
double cutoff_scalar_closed_form(double m, double cutoff);

}  // namespace eftcalc
