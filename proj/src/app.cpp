#include "eftcalc/app.hpp"

#include "eftcalc/loop.hpp"
#include "eftcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace eftcalc {

EffectiveAction compute_action(const ModelSpec& model, bool keep_divergences) {
  EffectiveAction act = assemble(model);
  if (keep_divergences) return act;
  return renormalize(act, model.absorb);
}

Assignment parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size())
    throw ModelError("expected NAME=VALUE, found '" + std::string(text) + "'");
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return std::string(s);
  };
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

BfReduction reduce_bf_action(const ModelSpec& model, const std::vector<Assignment>& sets,
                             const std::optional<std::string>& keep_potential) {
  EffectiveAction act = compute_action(model);
  std::set<std::string> known;
  for (const auto& c : model.constants) known.insert(c.name);
  for (const auto& a : model.absorb) known.insert(a.finite_name);
  for (const auto& [name, value] : sets) {
    if (!known.contains(name)) throw ModelError("--set: unknown constant '" + name + "'");
    const Coefficient v = parse_monomial(value, [&](const std::string& id) { return known.contains(id); });
    act = substitute_constant(act, name, v);
  }
  return eliminate_bf(act, keep_potential);
}

std::vector<std::pair<double, double>> integral_grid() {
  std::vector<std::pair<double, double>> grid;
  for (double m : {0.1, 0.5, 1.0, 3.0})
    for (double ratio : {1.5, 10.0, 1e2, 1e3, 1e4}) grid.emplace_back(m, m * ratio);
  return grid;
}

SelftestResult selftest(std::uint64_t seed, std::size_t count) {
  SelftestResult out;
  std::ostringstream os;
  const auto random = oracle::randomized_equivalence_suite(seed, count);
  const auto identities = oracle::commutator_identity_suite();
  os << random.to_string() << "\n" << identities.to_string() << "\n";
  out.ok = random.ok() && identities.ok();

  double worst = 0.0;
  for (const auto& [m, cutoff] : integral_grid()) {
    const double q = oracle::euclidean_scalar_integral(m, cutoff);
    const double c = cutoff_scalar_closed_form(m, cutoff);
    worst = std::max(worst, std::abs(q - c) / std::abs(c));
  }
  const bool integral_ok = worst < 1e-8;
  os << "integral oracle: points=" << integral_grid().size() << " max_relative_deviation=" << worst
     << (integral_ok ? " PASS" : " FAIL") << "\n";
  out.ok = out.ok && integral_ok;
  out.report = os.str();
  return out;
}

}  // namespace eftcalc
