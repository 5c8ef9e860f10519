#include "eftcalc/oracle.hpp"

#include "eftcalc/dirac.hpp"
#include "eftcalc/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace eftcalc::oracle {

const GammaRep& GammaRep::dirac() {
  static const GammaRep rep = [] {
    using namespace std::complex_literals;
    GammaRep r;
    const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd zero = Eigen::Matrix2cd::Zero();
    std::array<Eigen::Matrix2cd, 3> pauli;
    pauli[0] << 0, 1, 1, 0;
    pauli[1] << 0, -1i, 1i, 0;
    pauli[2] << 1, 0, 0, -1;
    r.gamma[0] << one, zero, zero, -one;
    for (int k = 0; k < 3; ++k) r.gamma[k + 1] << zero, pauli[k], -pauli[k], zero;
    r.gamma5 = 1i * r.gamma[0] * r.gamma[1] * r.gamma[2] * r.gamma[3];
    return r;
  }();
  return rep;
}

double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

int levi_civita(int a, int b, int c, int d) {
  std::array<int, 4> p{a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

Complex numeric_trace(std::span<const int> word) {
  const auto& rep = GammaRep::dirac();
  Matrix4c m = Matrix4c::Identity();
  for (int g : word) m = m * (g == kGamma5 ? rep.gamma5 : rep.gamma.at(static_cast<std::size_t>(g)));
  return m.trace();
}

Complex evaluate(const Coefficient& c, const NumericContext& ctx) {
  Complex v(static_cast<double>(c.number().re), static_cast<double>(c.number().im));
  for (const auto& [name, e] : c.constants()) {
    double x;
    if (name == kPi) {
      x = std::numbers::pi;
    } else if (name == kEulerGamma) {
      x = std::numbers::egamma;
    } else if (auto it = ctx.constants.find(name); it != ctx.constants.end()) {
      x = it->second;
    } else {
      throw DomainError("no numeric value for constant '" + name + "'");
    }
    v *= std::pow(x, e);
  }
  for (const auto& [atom, e] : c.logs()) {
    double x;
    if (atom == log_four_pi()) {
      x = std::log(4 * std::numbers::pi);
    } else if (auto it = ctx.logs.find(atom); it != ctx.logs.end()) {
      x = it->second;
    } else {
      throw DomainError("no numeric value for log atom '" + atom + "'");
    }
    v *= std::pow(x, e);
  }
  if (c.eps_pole() != 0) v *= std::pow(ctx.eps, c.eps_pole());
  return v;
}

namespace {

Complex evaluate_term(const Term& t, const NumericContext& ctx) {
  const auto dummies = t.dummy_indices();
  std::map<std::string, int> values = ctx.indices;
  for (const auto& l : t.free_indices())
    if (!values.contains(l)) throw DomainError("free index '" + l + "' has no numeric value");

  const Complex scale = evaluate(t.coeff, ctx) * (t.integral ? (ctx.integral ? ctx.integral(*t.integral)
                                                                             : throw DomainError("no value for " + t.integral->to_string()))
                                                             : Complex(1.0));
  Complex sum = 0.0;
  std::vector<int> at(dummies.size(), 0);
  while (true) {
    Complex prod = 1.0;
    for (std::size_t n = 0; n < dummies.size(); ++n) {
      values[dummies[n]] = at[n];
      prod *= metric(at[n], at[n]);  // one index of each pair lowered
    }
    std::vector<int> ix;
    for (const auto& f : t.factors) {
      ix.clear();
      for (const auto& l : f.indices) ix.push_back(values.at(l));
      switch (f.kind) {
        case FactorKind::Metric: prod *= metric(ix[0], ix[1]); break;
        case FactorKind::Epsilon: prod *= static_cast<double>(levi_civita(ix[0], ix[1], ix[2], ix[3])); break;
        default:
          if (!ctx.tensor) throw DomainError("no numeric components for " + f.to_string());
          prod *= ctx.tensor(f, ix);
      }
      if (prod == Complex(0.0)) break;
    }
    if (prod != Complex(0.0) && t.dirac) {
      std::vector<int> word;
      for (const auto& s : t.dirac->word) word.push_back(s.is_gamma5() ? kGamma5 : values.at(s.index));
      prod *= numeric_trace(word);
    }
    sum += prod;
    std::size_t k = 0;
    while (k < at.size() && ++at[k] == 4) at[k++] = 0;
    if (k == at.size()) break;
  }
  return scale * sum;
}

}  // namespace

Complex evaluate(const Expression& e, const NumericContext& ctx) {
  Complex sum = 0.0;
  for (const auto& t : e.terms()) sum += evaluate_term(t, ctx);
  return sum;
}

std::string EquivalenceReport::to_string() const {
  std::ostringstream os;
  os << name << ": seed=" << seed << " count=" << count << " passed=" << passed
     << " max_deviation=" << max_deviation << (ok() ? " PASS" : " FAIL");
  for (const auto& f : failures) os << "\n  failed: " << f;
  return os.str();
}

EquivalenceReport randomized_equivalence_suite(std::uint64_t seed, std::size_t count, const SymbolicTrace& symbolic) {
  const SymbolicTrace tracer = symbolic ? symbolic : [](const DiracString& s) { return trace_word(s, TraceDim::Four); };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(0, 8);
  std::uniform_int_distribution<int> symbol(0, 4);  // 4 -> gamma5
  EquivalenceReport report;
  report.seed = seed;
  report.count = count;
  for (std::size_t n = 0; n < count; ++n) {
    const int len = length(rng);
    DiracString word;
    std::vector<int> concrete;
    NumericContext ctx;
    std::string shown;
    for (int k = 0; k < len; ++k) {
      const int s = symbol(rng);
      if (s == 4) {
        word.word.push_back(DiracSymbol::gamma5());
        concrete.push_back(kGamma5);
        shown += "g5 ";
      } else {
        std::string label = "i" + std::to_string(k);
        word.word.push_back(DiracSymbol::gamma(label));
        ctx.indices[label] = s;
        concrete.push_back(s);
        shown += "g" + std::to_string(s) + " ";
      }
    }
    const Complex num = numeric_trace(concrete);
    const Complex sym = evaluate(tracer(word), ctx);
    const double dev = std::abs(sym - num) / std::max(1.0, std::abs(num));
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > kTraceTolerance) {
      std::ostringstream os;
      os << "tr(" << shown << ") symbolic=" << sym << " numeric=" << num;
      report.failures.push_back(os.str());
    } else {
      ++report.passed;
    }
  }
  return report;
}

namespace {

/// Sum over the four sign choices of [g^a,g^b] mid [g^c,g^d] tail.
Expression commutator_product(const std::vector<DiracSymbol>& mid, const std::vector<DiracSymbol>& tail) {
  std::vector<Term> terms;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      DiracString w;
      const std::string a = s1 ? "nu" : "mu", b = s1 ? "mu" : "nu";
      const std::string c = s2 ? "sigma" : "rho", d = s2 ? "rho" : "sigma";
      w.word = {DiracSymbol::gamma(a), DiracSymbol::gamma(b)};
      w.word.insert(w.word.end(), mid.begin(), mid.end());
      w.word.push_back(DiracSymbol::gamma(c));
      w.word.push_back(DiracSymbol::gamma(d));
      w.word.insert(w.word.end(), tail.begin(), tail.end());
      terms.push_back(Term{Coefficient((s1 + s2) % 2 ? -1 : 1), {}, w, {}});
    }
  return Expression::from_terms(std::move(terms));
}

Matrix4c commutator(int a, int b) {
  const auto& g = GammaRep::dirac().gamma;
  return g[a] * g[b] - g[b] * g[a];
}

}  // namespace

EquivalenceReport commutator_identity_suite(const SymbolicTrace& symbolic) {
  const SymbolicTrace tracer = symbolic ? symbolic : [](const DiracString& s) { return trace_word(s, TraceDim::Four); };
  auto trace_all = [&](const Expression& e) {
    Expression out;
    for (const auto& t : e.terms()) {
      Expression piece = tracer(*t.dirac);
      piece *= t.coeff;
      out += piece;
    }
    return out;
  };

  // eta_{xy} g^x ... g^y with a contracted dummy pair.
  const Expression contracted = substitute_dimension(
      contract(trace_all(commutator_product({DiracSymbol::gamma("x")}, {DiracSymbol::gamma("x")}))), 4);
  const Expression chiral = trace_all(commutator_product({}, {DiracSymbol::gamma5()}));
  const Expression chiral_expected(Term{Coefficient(Gaussian(0, -16)), {TensorFactor::epsilon("mu", "nu", "rho", "sigma")}, {}, {}});

  EquivalenceReport report;
  report.name = "commutator identities";
  report.count = 512;
  if (!contracted.empty()) report.failures.push_back("contracted commutator trace is not identically zero: " + contracted.to_string());
  if (!(chiral == chiral_expected)) report.failures.push_back("chiral commutator trace: " + chiral.to_string());

  const auto& rep = GammaRep::dirac();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          NumericContext ctx;
          ctx.indices = {{"mu", a}, {"nu", b}, {"rho", c}, {"sigma", d}};
          const Matrix4c ab = commutator(a, b), cd = commutator(c, d);
          Complex contracted_num = 0;
          for (int x = 0; x < 4; ++x) contracted_num += metric(x, x) * (ab * rep.gamma[x] * cd * rep.gamma[x]).trace();
          const Complex chiral_num = (ab * cd * rep.gamma5).trace();
          const Complex chiral_ref(0, -16.0 * levi_civita(a, b, c, d));

          const std::string tuple =
              "(" + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d) + ")";
          const double dev1 = std::max(std::abs(contracted_num), std::abs(evaluate(contracted, ctx) - contracted_num));
          const double dev2 = std::max(std::abs(chiral_num - chiral_ref), std::abs(evaluate(chiral, ctx) - chiral_num)) /
                              std::max(1.0, std::abs(chiral_num));
          report.max_deviation = std::max({report.max_deviation, dev1, dev2});
          if (dev1 > kTraceTolerance) {
            report.failures.push_back("contracted commutator trace " + tuple + " deviates by " + std::to_string(dev1));
          } else {
            ++report.passed;
          }
          if (dev2 > kTraceTolerance) {
            report.failures.push_back("chiral commutator trace " + tuple + " deviates by " + std::to_string(dev2));
          } else {
            ++report.passed;
          }
        }
  return report;
}

double euclidean_scalar_integral(double m, double cutoff) {
  if (!(m > 0) || !(cutoff > m)) throw DomainError("euclidean_scalar_integral needs cutoff > m > 0");
  using boost::math::quadrature::gauss_kronrod;
  const double m2 = m * m;
  const double upper = cutoff * cutoff;
  auto f = [m2](double u) { return u / ((u + m2) * (u + m2)); };
  // Split at m^2 * 4^k so each panel spans a bounded dynamic range.
  double sum = 0.0;
  double a = 0.0;
  double b = std::min(m2, upper);
  while (a < upper) {
    sum += gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
    a = b;
    b = std::min(b * 4, upper);
  }
  return sum / (16 * std::numbers::pi * std::numbers::pi);
}

}  // namespace eftcalc::oracle
