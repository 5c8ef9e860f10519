#pragma once

#include "eftcalc/action.hpp"

#include <string>
#include <string_view>

namespace eftcalc {

enum class Form { FieldStrength, Potential };
enum class Format { Text, Latex, Structured };

/// Renders an action. Text: one line per term. Latex: a display-math block.
/// Structured: JSON with a versioned `schema` field. An empty action renders
/// as empty text/latex output.
std::string render(const EffectiveAction& act, Form form, Format format);

/// Display form of a single term: dummies renamed mu nu rho sigma ... by first
/// appearance, slots ordered by declaration with fundamental slots last.
std::string render_term_text(const Term& t, const std::vector<SlotSpec>& slots);

/// Inverse of render(..., Format::Structured). Throws ModelError on malformed
/// input.
EffectiveAction parse_structured(std::string_view json_text);

}  // namespace eftcalc
