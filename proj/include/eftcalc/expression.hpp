#pragma once

#include "eftcalc/coefficient.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eftcalc {

// Variant order doubles as the canonical factor order.
enum class FactorKind { Metric, Epsilon, Momentum, FieldSlot, DerivSlot };

/// One tensor factor of a term. Index labels are plain strings; a label that
/// occurs twice in a term is a dummy (summed), once is free. Labels with a
/// leading underscore are reserved for canonical dummies.
struct TensorFactor {
  FactorKind kind;
  std::string name;  // slot / potential / momentum name; empty for Metric and Epsilon
  std::vector<std::string> indices;

  static TensorFactor metric(std::string i, std::string j);
  static TensorFactor epsilon(std::string i, std::string j, std::string k, std::string l);
  static TensorFactor momentum(std::string name, std::string i);
  static TensorFactor field_slot(std::string slot, std::string i, std::string j);
  /// d_i V_j for a potential V.
  static TensorFactor deriv_slot(std::string potential, std::string i, std::string j);

  std::size_t expected_arity() const;
  std::string to_string() const;

  friend auto operator<=>(const TensorFactor&, const TensorFactor&) = default;
};

/// Element of a Dirac word: gamma^index, or gamma5 when `index` is empty.
struct DiracSymbol {
  std::string index;

  static DiracSymbol gamma(std::string i) { return {std::move(i)}; }
  static DiracSymbol gamma5() { return {}; }
  bool is_gamma5() const { return index.empty(); }

  friend auto operator<=>(const DiracSymbol&, const DiracSymbol&) = default;
};

/// Ordered product of gamma matrices inside a single spinor trace. An empty
/// word is the unit matrix.
struct DiracString {
  std::vector<DiracSymbol> word;

  bool has_gamma5() const;
  std::size_t gamma_count() const;
  std::string to_string() const;

  friend auto operator<=>(const DiracString&, const DiracString&) = default;
};

/// Moves every gamma5 to the right end using {g5, g^mu} = 0 and g5^2 = 1.
/// Returns the accumulated sign (+1 or -1).
int normalize_gamma5(DiracString& s);

enum class Scheme { DimReg, Cutoff };
enum class Numerator { Tensor, MomentumSquared };

/// Marker for the one-loop integral
///   -i mu^(4-d) \int d^d p / (2 pi)^d  N(p) / [(p^2 - m^2)^n1 ((p - k)^2 - m^2)^n2]
/// at vanishing external momentum k. With Numerator::Tensor the numerator is
/// the product of the term's Momentum("p", .) factors and `rank` counts
/// them; with Numerator::MomentumSquared the numerator is the scalar p^2.
/// In the cutoff scheme the mu factor is absent and |p_E| < Lambda.
struct LoopIntegral {
  int n1 = 2;
  int n2 = 0;
  int rank = 0;
  Numerator numerator = Numerator::Tensor;
  std::string mass;
  Scheme scheme = Scheme::DimReg;
  bool zero_external = true;

  static LoopIntegral scalar_bubble(std::string mass, Scheme scheme = Scheme::DimReg);

  int total_power() const { return n1 + n2; }
  bool is_scalar_bubble() const;
  std::string to_string() const;

  friend auto operator<=>(const LoopIntegral&, const LoopIntegral&) = default;
};

inline constexpr std::string_view kLoopMomentum = "p";

struct Term {
  Coefficient coeff;
  std::vector<TensorFactor> factors;
  std::optional<DiracString> dirac;
  std::optional<LoopIntegral> integral;

  /// Every label occurrence, in factor order then Dirac word order.
  std::vector<std::string> index_occurrences() const;
  std::vector<std::string> dummy_indices() const;
  std::vector<std::string> free_indices() const;

  /// Key of everything except the Gaussian number; terms with equal keys merge.
  std::string structure_key() const;
  std::string to_string() const;
};

/// Sum of terms. Arithmetic operators return canonical results;
/// `from_terms` stores its input verbatim.
class Expression {
 public:
  Expression() = default;
  Expression(Term t);

  static Expression from_terms(std::vector<Term> terms);
  static Expression scalar(Coefficient c);

  const std::vector<Term>& terms() const& { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const Expression& o);
  Expression& operator*=(const Coefficient& c);

  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(Expression a, const Expression& b) { return a *= b; }
  friend Expression operator*(Expression a, const Coefficient& c) { return a *= c; }
  friend Expression operator*(const Coefficient& c, Expression a) { return a *= c; }
  Expression operator-() const;

  /// Structural equality after canonicalization of both sides.
  friend bool operator==(const Expression& a, const Expression& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Canonical form: Dirac words gamma5-normalized, dummies renamed to _1, _2,
/// ... (minimal over relabelings), Epsilon and FieldSlot indices sorted with
/// sign, Metric indices sorted, factors ordered, like terms merged, zero terms
/// dropped. Idempotent. Throws StructuralError on arity violations or an index
/// used more than twice.
Expression canonicalize(const Expression& e);

/// Canonical form of a single term; nullopt when the term vanishes.
std::optional<Term> canonicalize_term(const Term& t);

/// Absorbs every Metric factor carrying a dummy index. Metric(i,i) with i
/// dummy becomes the symbolic dimension d.
Expression contract(const Expression& e);

/// Replaces d^k by value^k.
Expression substitute_dimension(const Expression& e, const Rational& value);

/// Replaces name^k by value^k in every coefficient.
Expression substitute_constant(const Expression& e, std::string_view name, const Coefficient& value);

/// Product of two terms with the dummies of `b` renamed apart from `a`.
Term multiply_terms(const Term& a, const Term& b);

/// Applies a label map to every index of the term.
Term relabel(const Term& t, const std::vector<std::pair<std::string, std::string>>& map);

}  // namespace eftcalc
