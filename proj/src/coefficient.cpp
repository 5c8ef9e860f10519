#include "eftcalc/coefficient.hpp"

#include "eftcalc/errors.hpp"

#include <sstream>
#include <vector>

namespace eftcalc {

namespace {

std::string rational_magnitude(const Rational& r) {
  Rational a = abs(r);
  if (denominator(a) == 1) return numerator(a).str();
  return "(" + numerator(a).str() + "/" + denominator(a).str() + ")";
}

void erase_zeros(std::map<std::string, int>& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational norm = o.re * o.re + o.im * o.im;
  if (norm == 0) throw DomainError("division by zero coefficient");
  *this *= o.conj();
  re /= norm;
  im /= norm;
  return *this;
}

std::string Gaussian::to_string() const {
  auto plain = [](const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
  };
  if (im == 0) return plain(re);
  std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : plain(im) + " i";
  if (re == 0) return imag;
  return plain(re) + (im > 0 ? " + " : " - ") +
         ((abs(im) == 1) ? std::string("i") : plain(abs(im)) + " i");
}

std::string log_scale_over_mass(std::string_view mass) {
  return "ln(" + std::string(kScale) + "^2/" + std::string(mass) + "^2)";
}
std::string log_four_pi() { return "ln(4pi)"; }
std::string log_cutoff_over_mass(std::string_view mass) {
  return "ln(" + std::string(kCutoff) + "/" + std::string(mass) + ")";
}

Rational rational_pow(const Rational& base, int k) {
  if (k < 0) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    return rational_pow(Rational(1) / base, -k);
  }
  Rational r = 1;
  for (int n = 0; n < k; ++n) r *= base;
  return r;
}

Coefficient Coefficient::symbol(std::string_view name, int exponent) {
  Coefficient c;
  c.constants_[std::string(name)] = exponent;
  c.normalize();
  return c;
}

Coefficient Coefficient::log_atom(std::string_view atom, int multiplicity) {
  if (multiplicity < 0) throw DomainError("log atoms carry non-negative multiplicity");
  Coefficient c;
  c.logs_[std::string(atom)] = multiplicity;
  c.normalize();
  return c;
}

Coefficient Coefficient::eps_power(int power) {
  Coefficient c;
  c.eps_pole_ = power;
  return c;
}

int Coefficient::exponent(std::string_view name) const {
  auto it = constants_.find(std::string(name));
  return it == constants_.end() ? 0 : it->second;
}

void Coefficient::normalize() {
  erase_zeros(constants_);
  erase_zeros(logs_);
}

std::string Coefficient::monomial_key() const {
  std::ostringstream os;
  for (const auto& [name, e] : constants_) os << name << '^' << e << ';';
  os << '|';
  for (const auto& [atom, e] : logs_) os << atom << '^' << e << ';';
  os << "|eps^" << eps_pole_;
  return os.str();
}

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  number_ *= o.number_;
  for (const auto& [name, e] : o.constants_) constants_[name] += e;
  for (const auto& [atom, e] : o.logs_) logs_[atom] += e;
  eps_pole_ += o.eps_pole_;
  normalize();
  return *this;
}

Coefficient Coefficient::inverse() const {
  if (!logs_.empty()) throw DomainError("cannot invert a coefficient containing log atoms");
  Coefficient c;
  c.number_ = Gaussian(1) / number_;
  for (const auto& [name, e] : constants_) c.constants_[name] = -e;
  c.eps_pole_ = -eps_pole_;
  return c;
}

Coefficient Coefficient::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Coefficient r;
  for (int n = 0; n < k; ++n) r *= *this;
  return r;
}

Coefficient Coefficient::substitute(std::string_view name, const Coefficient& value) const {
  int k = exponent(name);
  if (k == 0) return *this;
  Coefficient rest = *this;
  rest.constants_.erase(std::string(name));
  return rest * value.pow(k);
}

std::string Coefficient::to_string() const {
  std::vector<std::string> parts;
  bool negative = false;
  if (number_.is_real() || number_.re == 0) {
    const Rational& mag = number_.is_real() ? number_.re : number_.im;
    negative = mag < 0;
    if (abs(mag) != 1) parts.push_back(rational_magnitude(mag));
    if (!number_.is_real()) parts.push_back("i");
  } else {
    parts.push_back("(" + number_.to_string() + ")");
  }
  auto power = [](const std::string& base, int e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
  };
  for (const auto& [name, e] : constants_)
    if (name != kPi) parts.push_back(power(name, e));
  if (int e = exponent(kPi); e != 0) parts.push_back(power(std::string(kPi), e));
  for (const auto& [atom, e] : logs_) parts.push_back(power(atom, e));
  if (eps_pole_ != 0) parts.push_back(power("eps", eps_pole_));

  std::string out = negative ? "-" : "";
  if (parts.empty()) return out + "1";
  for (std::size_t n = 0; n < parts.size(); ++n) {
    if (n) out += " * ";
    out += parts[n];
  }
  return out;
}

}  // namespace eftcalc
