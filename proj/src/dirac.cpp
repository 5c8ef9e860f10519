#include "eftcalc/dirac.hpp"

#include "eftcalc/errors.hpp"

#include <set>

namespace eftcalc {

namespace {

Term word_term(Coefficient c, std::vector<DiracSymbol> word) {
  return Term{std::move(c), {}, DiracString{std::move(word)}, {}};
}

// Plain (gamma5-free) trace by expansion along the first gamma:
//   tr(g1 g2 ... gn) = sum_j (-1)^j eta(g1 gj) tr(rest).
std::vector<Term> plain_trace(const std::vector<std::string>& ix) {
  if (ix.empty()) return {Term{Coefficient(4), {}, {}, {}}};
  if (ix.size() % 2) return {};
  std::vector<Term> out;
  for (std::size_t j = 1; j < ix.size(); ++j) {
    std::vector<std::string> rest;
    for (std::size_t n = 1; n < ix.size(); ++n)
      if (n != j) rest.push_back(ix[n]);
    const bool negative = (j % 2) == 0;
    for (auto& t : plain_trace(rest)) {
      t.factors.push_back(TensorFactor::metric(ix[0], ix[j]));
      if (negative) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::string fresh_label(const std::set<std::string>& taken, std::size_t& counter) {
  std::string l;
  do l = "_t" + std::to_string(counter++);
  while (taken.contains(l));
  return l;
}

// tr(g^{ix[0]} ... g^{ix[n-1]} g5) for gamma5-normalized words. Longer words
// are reduced with
//   g^a g^b g^c = eta^{ab} g^c - eta^{ac} g^b + eta^{bc} g^a + i eps^{abcs} g_s g5
// and g5 W g5 = -W for the odd-length remainder W.
std::vector<Term> chiral_trace(const std::vector<std::string>& ix, std::set<std::string>& taken,
                               std::size_t& counter) {
  if (ix.size() % 2 || ix.size() < 4) return {};
  if (ix.size() == 4)
    return {Term{Coefficient(Gaussian(0, -4)), {TensorFactor::epsilon(ix[0], ix[1], ix[2], ix[3])}, {}, {}}};

  const std::vector<std::string> tail(ix.begin() + 3, ix.end());
  std::vector<Term> out;
  auto with_head = [&](const std::string& head, const std::string& a, const std::string& b, int sign) {
    std::vector<std::string> w{head};
    w.insert(w.end(), tail.begin(), tail.end());
    for (auto& t : chiral_trace(w, taken, counter)) {
      t.factors.push_back(TensorFactor::metric(a, b));
      if (sign < 0) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    }
  };
  with_head(ix[2], ix[0], ix[1], +1);
  with_head(ix[1], ix[0], ix[2], -1);
  with_head(ix[0], ix[1], ix[2], +1);

  // i eps^{abcs} tr(g_s g5 W g5) = -i eps^{abcs} tr(g_s W)
  const std::string s = fresh_label(taken, counter);
  taken.insert(s);
  std::vector<std::string> w{s};
  w.insert(w.end(), tail.begin(), tail.end());
  for (auto& t : plain_trace(w)) {
    t.factors.push_back(TensorFactor::epsilon(ix[0], ix[1], ix[2], s));
    t.coeff *= Coefficient(Gaussian(0, -1));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Expression vertex_strings(int chirality, const Coefficient& coeff, const std::string& mu,
                          const std::string& nu) {
  if (chirality != 1 && chirality != -1)
    throw ModelError("chirality must be +1 or -1, got " + std::to_string(chirality));
  const auto g = [](const std::string& i) { return DiracSymbol::gamma(i); };
  const auto g5 = DiracSymbol::gamma5();
  // (i/2) coeff for the unit part of the projector, (-i chi)(i/2) coeff = (chi/2) coeff for g5.
  const Coefficient unit = coeff * Coefficient(Gaussian(0, Rational(1, 2)));
  const Coefficient chiral = coeff * Coefficient::rational(Rational(chirality, 2));
  std::vector<Term> terms{
      word_term(unit, {g(mu), g(nu)}),
      word_term(-unit, {g(nu), g(mu)}),
      word_term(chiral, {g5, g(mu), g(nu)}),
      word_term(-chiral, {g5, g(nu), g(mu)}),
  };
  return canonicalize(Expression::from_terms(std::move(terms)));
}

Expression expand_vertex(int chirality, const Coefficient& coeff, const SlotCombo& combo,
                         const std::set<std::string>& declared, const std::string& mu,
                         const std::string& nu) {
  Expression out;
  for (const auto& [sign, slot] : combo) {
    if (!declared.contains(slot)) throw ModelError("unknown slot '" + slot + "' in vertex combo");
    Expression slot_factor(Term{Coefficient(sign), {TensorFactor::field_slot(slot, mu, nu)}, {}, {}});
    out += vertex_strings(chirality, coeff, mu, nu) * slot_factor;
  }
  return out;
}

Expression trace_word(const DiracString& s, TraceDim mode) {
  DiracString w = s;
  const int sign = normalize_gamma5(w);
  const bool chiral = w.has_gamma5();
  if (chiral && mode == TraceDim::Symbolic)
    throw SchemeError("gamma5 trace " + s.to_string() +
                      " requested at symbolic d; gamma5 traces are evaluated in four dimensions only");
  std::vector<std::string> ix;
  std::set<std::string> taken;
  for (const auto& x : w.word)
    if (!x.is_gamma5()) {
      ix.push_back(x.index);
      taken.insert(x.index);
    }
  std::size_t counter = 0;
  auto terms = chiral ? chiral_trace(ix, taken, counter) : plain_trace(ix);
  if (sign < 0)
    for (auto& t : terms) t.coeff = -t.coeff;
  return contract(Expression::from_terms(std::move(terms)));
}

Expression trace(const Expression& e, TraceDim mode) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    if (!t.dirac) throw StructuralError("trace of a term without a Dirac string: " + t.to_string());
    Term rest = t;
    rest.dirac.reset();
    for (const auto& tr : trace_word(*t.dirac, mode).terms()) out.push_back(multiply_terms(rest, tr));
  }
  return contract(Expression::from_terms(std::move(out)));
}

}  // namespace eftcalc
