#pragma once

#include "eftcalc/model.hpp"
#include "eftcalc/render.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eftcalc {

/// Assembles a model and, unless keep_divergences, renormalizes it with the
/// model's absorb directives.
EffectiveAction compute_action(const ModelSpec& model, bool keep_divergences = false);

/// NAME=monomial assignments applied after renormalization. Identifiers in the
/// monomial must be model constants or finite names.
using Assignment = std::pair<std::string, std::string>;
Assignment parse_assignment(std::string_view text);

BfReduction reduce_bf_action(const ModelSpec& model, const std::vector<Assignment>& sets,
                             const std::optional<std::string>& keep_potential = {});

struct SelftestResult {
  bool ok = true;
  std::string report;
};

/// Randomized trace equivalence, the commutator identities, and quadrature
/// versus closed form on a fixed 20-point (m, Lambda) grid.
SelftestResult selftest(std::uint64_t seed, std::size_t count);

/// (m, Lambda) pairs used by the integral check.
std::vector<std::pair<double, double>> integral_grid();

}  // namespace eftcalc
