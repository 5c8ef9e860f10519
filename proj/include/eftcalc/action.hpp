#pragma once

#include "eftcalc/dirac.hpp"
#include "eftcalc/expression.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eftcalc {

struct SlotSpec {
  enum class Kind { Exact, Fundamental };

  std::string name;
  Kind kind = Kind::Fundamental;
  std::string potential;  // set for exact slots: the slot is d(potential)

  bool is_exact() const { return kind == Kind::Exact; }
  friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

/// psi-bar [ i dslash + coeff (1 - i chirality g5) sigma^{mu nu} X_{mu nu} - mass ] psi
/// with X the signed slot sum `combo`. An empty mass means massless.
struct FlavorSpec {
  std::string name;
  std::string mass;
  int chirality = 1;
  Coefficient coeff;
  SlotCombo combo;

  /// Net combo weight of a slot (0 if absent).
  int weight(const std::string& slot) const;
  /// Distinct slots in order of first appearance.
  std::vector<std::string> distinct_slots() const;
};

/// Absorb coupling^2 m^2 I0(m) into finite_name * scale.
struct AbsorbDirective {
  std::string coupling;
  std::string finite_name;
  Coefficient scale;
};

struct ConstantSpec {
  std::string name;
  bool real = false;
  bool positive = false;
};

struct ModelSpec {
  int dimension = 4;
  std::vector<ConstantSpec> constants;
  std::vector<SlotSpec> slots;
  std::vector<FlavorSpec> flavors;
  std::vector<AbsorbDirective> absorb;

  const SlotSpec* find_slot(const std::string& name) const;
};

/// One-loop two-point function at k = 0, split into the metric sector
/// (cutoff integral times a trace that carries d) and the epsilon sector
/// (dimensionally regularized bubble). Free indices mu nu rho sigma.
struct Polarization {
  Expression sigma;
  Expression pi;

  Expression sigma_at_four() const { return substitute_dimension(sigma, 4); }
};

/// (i/2) tr[V^{mu nu} S(p) V^{rho sigma} S(p)] with the vertex restricted to
/// slot s1 (first) and s2 (second), including their combo weights.
Polarization polarization(const FlavorSpec& f, const std::string& s1, const std::string& s2);

enum class Structure { Epsilon, Metric };

/// coeff * [integral] * eps^{mu nu rho sigma} A_{mu nu} B_{rho sigma}    (Epsilon)
/// coeff * [integral] * A_{mu nu} B^{mu nu}                              (Metric)
/// in field-strength form.
struct ActionTerm {
  Coefficient coeff;
  std::optional<LoopIntegral> integral;
  Structure structure = Structure::Epsilon;
  std::string slot_a;
  std::string slot_b;

  Term to_term() const;
  bool is_divergent() const;
};

struct EffectiveAction {
  std::vector<SlotSpec> slots;
  std::vector<ActionTerm> terms;
  std::vector<ActionTerm> residual;  // divergent terms left by a lenient renormalize

  const SlotSpec* find_slot(const std::string& name) const;
  Expression to_expression() const;
  /// Exact slots rewritten as d_mu V_nu - d_nu V_mu.
  Expression potential_form() const;
};

/// Regroups a canonical expression of slot bilinears into action terms
/// (merged, ordered by slot declaration). Throws StructuralError on terms
/// that are not a slot bilinear.
std::vector<ActionTerm> classify_terms(const Expression& e, const std::vector<SlotSpec>& slots);

EffectiveAction assemble(const ModelSpec& model);

/// Replaces coupling^2 m^2 I0(m) bundles by the directive's finite constant.
/// With strict = false unmatched divergent terms move to `residual`;
/// otherwise they raise RenormalizationIncomplete.
EffectiveAction renormalize(const EffectiveAction& act, const std::vector<AbsorbDirective>& directives,
                            bool strict = true);

/// Replaces name^k in every coefficient.
EffectiveAction substitute_constant(const EffectiveAction& act, const std::string& name,
                                    const Coefficient& value);

struct BfReduction {
  EffectiveAction action;
  bool reduced = false;
  std::string notice;
};

/// Integrates out a fundamental slot entering linearly against a sum of two
/// exact slots: that sum of potentials is pure gauge, so the eliminated
/// potential equals minus the kept one times the coefficient ratio. The kept
/// potential defaults to the first declared one.
BfReduction eliminate_bf(const EffectiveAction& act, const std::optional<std::string>& keep_potential = {});

enum class TimeReversal { Nontrivial, Trivial, NotInvariant };

struct QuantizationResult {
  TimeReversal classification;
  Rational phase_over_pi;  // theta Nf^2 / pi
  std::string to_string() const;
};

/// theta = theta_over_pi * pi; topological charge quantized as N Nf^2.
QuantizationResult check_quantization(const Rational& theta_over_pi, int nf);

}  // namespace eftcalc
