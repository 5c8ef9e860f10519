#pragma once

#include "eftcalc/expression.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace eftcalc::oracle {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

/// Marks gamma5 in a concrete word; 0..3 are gamma^0..gamma^3.
inline constexpr int kGamma5 = 5;

/// Dirac representation, metric (+,-,-,-), gamma5 = i g0 g1 g2 g3.
struct GammaRep {
  std::array<Matrix4c, 4> gamma;
  Matrix4c gamma5;

  static const GammaRep& dirac();
};

/// eta^{mu nu} = diag(1, -1, -1, -1).
double metric(int mu, int nu);
/// eps^{abcd} with eps^{0123} = +1.
int levi_civita(int a, int b, int c, int d);

Complex numeric_trace(std::span<const int> word);

/// Values used when evaluating a symbolic expression numerically.
struct NumericContext {
  std::map<std::string, int> indices;  // free index -> 0..3
  std::map<std::string, double> constants{{"d", 4.0}};
  std::map<std::string, double> logs;
  double eps = 0.0;
  /// Components of FieldSlot / DerivSlot / Momentum factors (upper indices).
  std::function<Complex(const TensorFactor&, std::span<const int>)> tensor;
  /// Value of a loop-integral marker.
  std::function<Complex(const LoopIntegral&)> integral;
};

/// Evaluates with upper-index components, summing dummies with eta_{xx}.
/// Dirac strings are replaced by their numeric trace.
Complex evaluate(const Expression& e, const NumericContext& ctx);
Complex evaluate(const Coefficient& c, const NumericContext& ctx);

using SymbolicTrace = std::function<Expression(const DiracString&)>;

struct EquivalenceReport {
  std::string name = "trace equivalence";
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  double max_deviation = 0.0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

inline constexpr double kTraceTolerance = 1e-10;

/// Random words (length <= 8 over g0..g3 and g5) traced symbolically in
/// four-dimensional mode and numerically; deviation is
/// |symbolic - numeric| / max(1, |numeric|). Deterministic in `seed`.
EquivalenceReport randomized_equivalence_suite(std::uint64_t seed, std::size_t count,
                                               const SymbolicTrace& symbolic = {});

/// The two commutator identities over all 256 index 4-tuples (a,b,c,d):
///   eta_{xy} tr([g^a,g^b] g^x [g^c,g^d] g^y) = 0 at d = 4,
///   tr([g^a,g^b][g^c,g^d] g5) = -16 i eps^{abcd}.
/// Each is checked three ways: the symbolic form is exactly the expected
/// expression, its evaluation matches the matrix trace, and the matrix trace
/// matches the expected value. count = 512.
EquivalenceReport commutator_identity_suite(const SymbolicTrace& symbolic = {});

/// (1/16 pi^2) \int_0^{Lambda^2} du u / (u + m^2)^2 by adaptive quadrature.
/// Requires cutoff > m > 0.
double euclidean_scalar_integral(double m, double cutoff);

}  // namespace eftcalc::oracle
