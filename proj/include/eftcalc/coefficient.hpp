#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace eftcalc {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number a + b i with rational parts.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  Gaussian(int r) : re(r) {}

  static Gaussian i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Gaussian conj() const { return {re, -im}; }
  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  /// Throws DomainError on division by zero.
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;

  std::string to_string() const;
};

// Reserved symbol names. User constants may not take these.
inline constexpr std::string_view kPi = "pi";
inline constexpr std::string_view kDim = "d";
inline constexpr std::string_view kEulerGamma = "gammaE";
inline constexpr std::string_view kRenormZ = "Z";
inline constexpr std::string_view kCutoff = "Lambda";
inline constexpr std::string_view kScale = "mu";

/// Formal logarithm atoms.
std::string log_scale_over_mass(std::string_view mass);   // ln(mu^2/m^2)
std::string log_four_pi();                                 // ln(4pi)
std::string log_cutoff_over_mass(std::string_view mass);  // ln(Lambda/m)

/// A coefficient monomial: Gaussian rational times a product of named
/// constants with integer exponents, a multiset of formal log atoms and an
/// integer power of eps-hat = 4 - d. Default-constructed value is 1.
///
/// Sums of monomials with different symbolic parts are not representable
/// here; they live in Expression as separate terms.
class Coefficient {
 public:
  Coefficient() : number_(1) {}
  Coefficient(Gaussian g) : number_(std::move(g)) {}
  Coefficient(int n) : number_(n) {}

  static Coefficient rational(Rational r) { return Coefficient(Gaussian(std::move(r))); }
  static Coefficient imaginary_unit() { return Coefficient(Gaussian::i()); }
  static Coefficient symbol(std::string_view name, int exponent = 1);
  static Coefficient log_atom(std::string_view atom, int multiplicity = 1);
  static Coefficient eps_power(int power);

  const Gaussian& number() const { return number_; }
  const std::map<std::string, int>& constants() const { return constants_; }
  const std::map<std::string, int>& logs() const { return logs_; }
  int eps_pole() const { return eps_pole_; }

  int exponent(std::string_view name) const;
  bool has_logs() const { return !logs_.empty(); }
  bool is_zero() const { return number_.is_zero(); }
  bool is_number() const { return constants_.empty() && logs_.empty() && eps_pole_ == 0; }

  /// Same symbolic part (constants, logs, eps power); numbers may differ.
  bool same_monomial(const Coefficient& o) const {
    return constants_ == o.constants_ && logs_ == o.logs_ && eps_pole_ == o.eps_pole_;
  }
  std::string monomial_key() const;

  Coefficient with_number(Gaussian g) const {
    Coefficient c = *this;
    c.number_ = std::move(g);
    return c;
  }
  Coefficient symbolic_part() const { return with_number(Gaussian(1)); }

  Coefficient& operator*=(const Coefficient& o);
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  Coefficient operator-() const { return with_number(-number_); }

  /// Multiplicative inverse. Log atoms are not invertible; throws DomainError.
  Coefficient inverse() const;
  Coefficient pow(int k) const;
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b) { return a * b.inverse(); }

  /// Replace name^k by value^k.
  Coefficient substitute(std::string_view name, const Coefficient& value) const;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  /// e.g. "(1/32) * e^2 * thetaF * pi^-2"; the unit monomial prints "1".
  std::string to_string() const;

 private:
  void normalize();

  Gaussian number_;
  std::map<std::string, int> constants_;
  std::map<std::string, int> logs_;
  int eps_pole_ = 0;
};

Rational rational_pow(const Rational& base, int k);

}  // namespace eftcalc
