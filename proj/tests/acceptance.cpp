// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failures.

#include "eftcalc/app.hpp"
#include "eftcalc/loop.hpp"
#include "eftcalc/oracle.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace eftcalc;

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kQuadratureTolerance = 1e-8;
constexpr double kSlopeTolerance = 0.01;
constexpr std::uint64_t kSuiteSeed = 42;
constexpr std::size_t kSuiteCount = 500;
constexpr std::uint64_t kPeriodicitySeed = 2024;
constexpr int kPeriodicitySamples = 100;

ModelSpec load(const std::string& name) {
  std::ifstream in(std::string(EFTCALC_MODELS_DIR) + "/" + name);
  if (!in) throw ModelError("missing model " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

Coefficient sym(const char* name, int e = 1) { return Coefficient::symbol(name, e); }
Coefficient rat(long long n, long long d = 1) { return Coefficient::rational(Rational(n, d)); }

struct Outcome {
  bool pass;
  std::string detail;
};

/// coeff * eps^{mu nu rho sigma} X Y with X, Y field-strength or derivative factors.
Expression eps_bilinear(const Coefficient& c, TensorFactor x, TensorFactor y,
                        std::optional<LoopIntegral> integral = {}) {
  return canonicalize(Expression(
      Term{c, {TensorFactor::epsilon("mu", "nu", "rho", "sigma"), std::move(x), std::move(y)}, {}, integral}));
}

Outcome theta_term() {
  const ModelSpec model = load("theta_term.eft");
  const EffectiveAction act = compute_action(model);
  const Coefficient fs = sym("e", 2) * sym("thetaF") * rat(1, 32) * sym("pi", -2);
  const Coefficient pot = sym("e", 2) * sym("thetaF") * rat(1, 8) * sym("pi", -2);
  const bool one = act.terms.size() == 1 && act.terms[0].structure == Structure::Epsilon;
  const bool fs_ok = act.to_expression() == eps_bilinear(fs, TensorFactor::field_slot("F", "mu", "nu"),
                                                         TensorFactor::field_slot("F", "rho", "sigma"));
  const bool pot_ok = act.potential_form() == eps_bilinear(pot, TensorFactor::deriv_slot("A", "mu", "nu"),
                                                           TensorFactor::deriv_slot("A", "rho", "sigma"));
  return {one && fs_ok && pot_ok, "field-strength: " + render(act, Form::FieldStrength, Format::Text).substr(0, 39) +
                                      " | potential coefficient " + pot.to_string()};
}

Outcome sigma_vanishes() {
  const ModelSpec model = load("theta_term.eft");
  const Polarization p = polarization(model.flavors[0], "F", "F");
  bool divergent = false;
  for (const auto& t : p.sigma.terms())
    divergent = divergent || (t.integral && t.integral->scheme == Scheme::Cutoff) || t.coeff.exponent(kCutoff) > 0;
  const bool zero = p.sigma_at_four().empty();
  return {divergent && zero && !p.sigma.empty(),
          std::to_string(p.sigma.size()) + " divergent metric-sector terms at symbolic d, " +
              std::to_string(p.sigma_at_four().size()) + " at d=4"};
}

Outcome pi_structure() {
  const ModelSpec model = load("theta_term.eft");
  const Coefficient c = sym("e", 2) * sym("m", 2) * sym("alpha", 2);
  const LoopIntegral i0 = LoopIntegral::scalar_bubble("m");
  const Polarization p = polarization(model.flavors[0], "F", "F");
  const bool pi_ok = p.pi == Expression(Term{c, {TensorFactor::epsilon("mu", "nu", "rho", "sigma")}, {}, i0});
  const EffectiveAction raw = compute_action(model, true);
  const bool act_ok = raw.to_expression() == eps_bilinear(c, TensorFactor::field_slot("F", "mu", "nu"),
                                                          TensorFactor::field_slot("F", "rho", "sigma"), i0);
  return {pi_ok && act_ok, "Pi = " + p.pi.to_string()};
}

Outcome dimreg_chain() {
  const Expression s = laurent_expand(evaluate_dimreg(LoopIntegral::scalar_bubble("m")));
  const Coefficient k = rat(1, 16) * sym("pi", -2);
  const Expression expected = Expression::scalar(k * rat(2) * Coefficient::eps_power(-1)) +
                              Expression::scalar(k * Coefficient::log_atom(log_scale_over_mass("m"))) +
                              Expression::scalar(k * Coefficient::log_atom(log_four_pi())) +
                              Expression::scalar(-k * sym("gammaE"));
  return {s == expected, s.to_string()};
}

Outcome bf_theory() {
  const ModelSpec model = load("bf_theory.eft");
  const EffectiveAction act = compute_action(model);
  const Expression expected =
      eps_bilinear(sym("LambdaF"), TensorFactor::deriv_slot("A", "mu", "nu"), TensorFactor::field_slot("b", "rho", "sigma")) +
      eps_bilinear(sym("LambdaF"), TensorFactor::deriv_slot("a", "mu", "nu"), TensorFactor::field_slot("b", "rho", "sigma")) +
      eps_bilinear(sym("CF"), TensorFactor::deriv_slot("A", "mu", "nu"), TensorFactor::deriv_slot("a", "rho", "sigma"));
  const bool three = act.terms.size() == 3 && act.potential_form() == expected;
  bool no_self = true;
  for (const auto& t : act.terms) no_self = no_self && t.slot_a != t.slot_b;

  // C_F = +/- e^2/8pi must map onto the pair +/- (e^2/8pi) eps dA dA.
  const Coefficient target = sym("e", 2) * rat(1, 8) * sym("pi", -1);
  std::set<std::string> produced;
  std::string mapping;
  bool single = true;
  for (const char* cf : {"e^2/8/pi", "-e^2/8/pi"}) {
    const BfReduction r = reduce_bf_action(model, {{"LambdaF", "1/2/pi"}, {"CF", cf}});
    const Expression pot = r.action.potential_form();
    single = single && r.reduced && pot.size() == 1;
    for (int sign : {1, -1})
      if (pot == eps_bilinear(Coefficient(sign) * target, TensorFactor::deriv_slot("A", "mu", "nu"),
                              TensorFactor::deriv_slot("A", "rho", "sigma")))
        produced.insert(sign > 0 ? "+" : "-");
    mapping += std::string(mapping.empty() ? "" : ", ") + "CF=" + cf + " -> " +
               render(r.action, Form::Potential, Format::Text).substr(0, 26);
  }
  return {three && no_self && single && produced == std::set<std::string>{"+", "-"}, mapping};
}

Outcome oracle_equivalence() {
  const auto random = oracle::randomized_equivalence_suite(kSuiteSeed, kSuiteCount);
  const auto identities = oracle::commutator_identity_suite();
  const bool ok = random.ok() && random.passed == kSuiteCount && random.max_deviation < kTraceTolerance &&
                  identities.ok() && identities.passed == 512;
  std::ostringstream os;
  os << random.passed << "/" << kSuiteCount << " words, max deviation " << random.max_deviation << "; "
     << identities.passed << "/512 identity checks";
  return {ok, os.str()};
}

Outcome integral_oracle() {
  double worst = 0.0;
  for (const auto& [m, cutoff] : integral_grid()) {
    const double q = oracle::euclidean_scalar_integral(m, cutoff);
    const double c = cutoff_scalar_closed_form(m, cutoff);
    worst = std::max(worst, std::abs(q - c) / std::abs(c));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 21;
  for (int k = 0; k < n; ++k) {
    const double x = std::log(1e2) + k * (std::log(1e4) - std::log(1e2)) / (n - 1);
    const double y = oracle::euclidean_scalar_integral(1.0, std::exp(x));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double ratio = slope * 8 * std::numbers::pi * std::numbers::pi;
  std::ostringstream os;
  os << integral_grid().size() << " points, max relative deviation " << worst << "; slope * 8 pi^2 = " << ratio;
  return {worst < kQuadratureTolerance && std::abs(ratio - 1) < kSlopeTolerance, os.str()};
}

Outcome quantization() {
  const bool examples = check_quantization(1, 1).classification == TimeReversal::Nontrivial &&
                        check_quantization(Rational(1, 3), 3).classification == TimeReversal::Nontrivial &&
                        check_quantization(2, 1).classification == TimeReversal::Trivial &&
                        check_quantization(Rational(1, 2), 1).classification == TimeReversal::NotInvariant;
  std::mt19937_64 rng(kPeriodicitySeed);
  std::uniform_int_distribution<int> num(-100, 100), den(1, 24), nf(0, 4);
  int periodic = 0;
  for (int k = 0; k < kPeriodicitySamples; ++k) {
    const Rational theta(num(rng), den(rng));
    const int n = 2 * nf(rng) + 1;
    periodic += check_quantization(theta, n).classification == check_quantization(theta + 2, n).classification;
  }
  return {examples && periodic == kPeriodicitySamples,
          "examples " + std::string(examples ? "ok" : "wrong") + ", periodic " + std::to_string(periodic) + "/" +
              std::to_string(kPeriodicitySamples)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"theta-term reproduction", theta_term},
      {"metric sector vanishes at d=4", sigma_vanishes},
      {"epsilon sector structure", pi_structure},
      {"dimreg chain", dimreg_chain},
      {"BF reproduction", bf_theory},
      {"oracle equivalence", oracle_equivalence},
      {"integral oracle", integral_oracle},
      {"quantization classifier", quantization},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << ". " << criteria[k].first << ": " << o.detail << "\n";
  }
  return failures;
}
