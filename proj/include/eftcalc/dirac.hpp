#pragma once

#include "eftcalc/expression.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace eftcalc {

/// Signed sum of slot names, e.g. F - b is {{+1,"F"},{-1,"b"}}.
using SlotCombo = std::vector<std::pair<int, std::string>>;

/// coeff * (1 - i chi g5) * sigma^{mu nu} as gamma5-normalized Dirac words,
/// with sigma^{mu nu} = (i/2)(g^mu g^nu - g^nu g^mu). chirality must be +1 or -1.
Expression vertex_strings(int chirality, const Coefficient& coeff, const std::string& mu,
                          const std::string& nu);

/// vertex_strings summed over the combo, each term carrying
/// FieldSlot(slot, mu, nu) times the combo sign. Slots not in `declared`
/// raise ModelError.
Expression expand_vertex(int chirality, const Coefficient& coeff, const SlotCombo& combo,
                         const std::set<std::string>& declared, const std::string& mu = "mu",
                         const std::string& nu = "nu");

enum class TraceDim {
  Symbolic,  ///< d left symbolic; gamma5 traces refused
  Four,      ///< d = 4 trace algebra, gamma5 allowed
};

/// Trace of a single word as an expression in Metric and Epsilon factors.
/// tr(1) = 4 in both modes. With gamma5, the convention is
/// g5 = i g^0 g^1 g^2 g^3, eps^{0123} = +1, tr(g5 g^a g^b g^c g^d) = -4i eps^{abcd}.
Expression trace_word(const DiracString& s, TraceDim mode);

/// Replaces the Dirac string of every term by its trace. Terms without a
/// string are rejected with StructuralError.
Expression trace(const Expression& e, TraceDim mode);

}  // namespace eftcalc
