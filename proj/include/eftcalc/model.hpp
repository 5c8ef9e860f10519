#pragma once

#include "eftcalc/action.hpp"
#include "eftcalc/errors.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace eftcalc {

enum class DiagCode {
  Syntax,
  UnknownDirective,
  UnsupportedDimension,
  ReservedName,
  UndeclaredConstant,
  DuplicateDeclaration,
  UnknownSlot,
  DuplicateFlavor,
  BadAbsorb,
};

std::string_view code_name(DiagCode c);

struct Diagnostic {
  int line = 0;
  DiagCode code = DiagCode::Syntax;
  std::string message;

  /// "line 3: error[unknown-slot]: ..."
  std::string to_string() const;
};

/// Parse failure of a model file; what() is the formatted diagnostic.
class ModelDiagnostic : public ModelError {
 public:
  explicit ModelDiagnostic(Diagnostic d) : ModelError(d.to_string()), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// Names a model may not declare.
bool is_reserved_name(std::string_view name);

/// Parses the line-oriented model format:
///
///   dim 4
///   constant <name> [real] [positive]
///   slot <name> exact <potential> | slot <name> fundamental
///   flavor <name> mass <sym|0> chirality +|- coeff <monomial> combo <signed slot sum>
///   absorb <constant>^2 as <name> [scale <rational>/pi^<k>]
///
/// Constants must be declared before use; slot references resolve at the end.
ModelSpec parse_model(std::string_view text);

/// Parses a monomial such as "e*alpha/2" or "-e^2/8/pi". `known` decides
/// which identifiers are acceptable besides "pi". Throws ModelDiagnostic with
/// line 0 on failure.
Coefficient parse_monomial(std::string_view text, const std::function<bool(const std::string&)>& known);

/// Parses an angle written as a rational multiple of pi: "pi", "2pi",
/// "1/3pi", "pi/3", "-pi/2", "0". Returns theta / pi.
Rational parse_theta(std::string_view text);

}  // namespace eftcalc
