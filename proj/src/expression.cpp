#include "eftcalc/expression.hpp"

#include "eftcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace eftcalc {

// ---------------------------------------------------------------- factors

TensorFactor TensorFactor::metric(std::string i, std::string j) {
  return {FactorKind::Metric, {}, {std::move(i), std::move(j)}};
}
TensorFactor TensorFactor::epsilon(std::string i, std::string j, std::string k, std::string l) {
  return {FactorKind::Epsilon, {}, {std::move(i), std::move(j), std::move(k), std::move(l)}};
}
TensorFactor TensorFactor::momentum(std::string name, std::string i) {
  return {FactorKind::Momentum, std::move(name), {std::move(i)}};
}
TensorFactor TensorFactor::field_slot(std::string slot, std::string i, std::string j) {
  return {FactorKind::FieldSlot, std::move(slot), {std::move(i), std::move(j)}};
}
TensorFactor TensorFactor::deriv_slot(std::string potential, std::string i, std::string j) {
  return {FactorKind::DerivSlot, std::move(potential), {std::move(i), std::move(j)}};
}

std::size_t TensorFactor::expected_arity() const {
  switch (kind) {
    case FactorKind::Metric: return 2;
    case FactorKind::Epsilon: return 4;
    case FactorKind::Momentum: return 1;
    case FactorKind::FieldSlot: return 2;
    case FactorKind::DerivSlot: return 2;
  }
  return 0;
}

std::string TensorFactor::to_string() const {
  std::string head;
  switch (kind) {
    case FactorKind::Metric: head = "eta"; break;
    case FactorKind::Epsilon: head = "eps"; break;
    case FactorKind::Momentum: head = name; break;
    case FactorKind::FieldSlot: head = name; break;
    case FactorKind::DerivSlot: head = "d" + name; break;
  }
  std::string out = head + "[";
  for (std::size_t n = 0; n < indices.size(); ++n) out += (n ? " " : "") + indices[n];
  return out + "]";
}

// ------------------------------------------------------------------ Dirac

bool DiracString::has_gamma5() const {
  return std::ranges::any_of(word, [](const DiracSymbol& s) { return s.is_gamma5(); });
}

std::size_t DiracString::gamma_count() const {
  return std::ranges::count_if(word, [](const DiracSymbol& s) { return !s.is_gamma5(); });
}

std::string DiracString::to_string() const {
  std::string out = "g[";
  for (std::size_t n = 0; n < word.size(); ++n) {
    if (n) out += ' ';
    out += word[n].is_gamma5() ? "5" : word[n].index;
  }
  return out + "]";
}

int normalize_gamma5(DiracString& s) {
  int sign = 1;
  int fives = 0;
  std::size_t to_right = 0;
  for (auto it = s.word.rbegin(); it != s.word.rend(); ++it) {
    if (it->is_gamma5()) {
      ++fives;
      if (to_right % 2) sign = -sign;
    } else {
      ++to_right;
    }
  }
  std::erase_if(s.word, [](const DiracSymbol& x) { return x.is_gamma5(); });
  if (fives % 2) s.word.push_back(DiracSymbol::gamma5());
  return sign;
}

// ----------------------------------------------------------- LoopIntegral

LoopIntegral LoopIntegral::scalar_bubble(std::string mass, Scheme scheme) {
  LoopIntegral l;
  l.mass = std::move(mass);
  l.scheme = scheme;
  return l;
}

bool LoopIntegral::is_scalar_bubble() const {
  return total_power() == 2 && rank == 0 && numerator == Numerator::Tensor && zero_external;
}

std::string LoopIntegral::to_string() const {
  if (scheme == Scheme::DimReg && is_scalar_bubble()) return "I0(" + mass + ")";
  std::ostringstream os;
  os << "L[" << (scheme == Scheme::DimReg ? "dimreg" : "cutoff") << ";" << n1 << "," << n2 << ";"
     << (numerator == Numerator::MomentumSquared ? std::string("p^2")
                                                 : "rank" + std::to_string(rank))
     << ";" << mass << (zero_external ? "" : ";k") << "]";
  return os.str();
}

// ------------------------------------------------------------------- Term

std::vector<std::string> Term::index_occurrences() const {
  std::vector<std::string> out;
  for (const auto& f : factors) out.insert(out.end(), f.indices.begin(), f.indices.end());
  if (dirac)
    for (const auto& s : dirac->word)
      if (!s.is_gamma5()) out.push_back(s.index);
  return out;
}

namespace {

std::vector<std::string> labels_with_count(const Term& t, int wanted) {
  std::map<std::string, int> count;
  auto occ = t.index_occurrences();
  for (const auto& l : occ) ++count[l];
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& l : occ)
    if (count[l] == wanted && seen.insert(l).second) out.push_back(l);
  return out;
}

}  // namespace

std::vector<std::string> Term::dummy_indices() const { return labels_with_count(*this, 2); }
std::vector<std::string> Term::free_indices() const { return labels_with_count(*this, 1); }

std::string Term::structure_key() const {
  std::ostringstream os;
  for (const auto& f : factors) {
    os << static_cast<int>(f.kind) << f.name << '(';
    for (const auto& i : f.indices) os << i << ',';
    os << ')';
  }
  os << '|';
  if (dirac) {
    os << '[';
    for (const auto& s : dirac->word) os << (s.is_gamma5() ? std::string("#5") : s.index) << ',';
    os << ']';
  } else {
    os << '-';
  }
  os << '|' << (integral ? integral->to_string() : std::string("-")) << '|' << coeff.monomial_key();
  return os.str();
}

std::string Term::to_string() const {
  std::string out = coeff.to_string();
  for (const auto& f : factors) out += " * " + f.to_string();
  if (dirac) out += " * " + dirac->to_string();
  if (integral) out += " * " + integral->to_string();
  return out;
}

// --------------------------------------------------------- canonical form

namespace {

void validate(const Term& t) {
  for (const auto& f : t.factors) {
    if (f.indices.size() != f.expected_arity())
      throw StructuralError("malformed index arity in factor " + f.to_string() + " of term " +
                            t.to_string());
    for (const auto& i : f.indices)
      if (i.empty()) throw StructuralError("empty index label in term " + t.to_string());
  }
  std::map<std::string, int> count;
  for (const auto& l : t.index_occurrences()) {
    if (++count[l] > 2)
      throw StructuralError("index '" + l + "' occurs more than twice in term " + t.to_string());
  }
}

// Sorts the factor's indices according to its symmetry. Returns the sign of
// the permutation, or 0 when the factor vanishes identically.
int canonical_factor(TensorFactor& f) {
  auto& ix = f.indices;
  switch (f.kind) {
    case FactorKind::Metric:
      if (ix[1] < ix[0]) std::swap(ix[0], ix[1]);
      return 1;
    case FactorKind::FieldSlot:
      if (ix[0] == ix[1]) return 0;
      if (ix[1] < ix[0]) {
        std::swap(ix[0], ix[1]);
        return -1;
      }
      return 1;
    case FactorKind::Epsilon: {
      int sign = 1;
      for (std::size_t a = 0; a < ix.size(); ++a)
        for (std::size_t b = 0; b + 1 < ix.size() - a; ++b) {
          if (ix[b] == ix[b + 1]) return 0;
          if (ix[b + 1] < ix[b]) {
            std::swap(ix[b], ix[b + 1]);
            sign = -sign;
          }
        }
      for (std::size_t b = 0; b + 1 < ix.size(); ++b)
        if (ix[b] == ix[b + 1]) return 0;
      return sign;
    }
    case FactorKind::Momentum:
    case FactorKind::DerivSlot:
      return 1;
  }
  return 1;
}

struct Candidate {
  Term term;
  std::string key;
  int sign = 1;
};

// Relabels, canonicalizes each factor and sorts; sign 0 means vanishing.
Candidate arrange(const Term& t, const std::vector<std::pair<std::string, std::string>>& map) {
  Candidate c{relabel(t, map), {}, 1};
  for (auto& f : c.term.factors) {
    c.sign *= canonical_factor(f);
    if (c.sign == 0) return c;
  }
  std::sort(c.term.factors.begin(), c.term.factors.end());
  c.key = c.term.structure_key();
  return c;
}

std::string canonical_dummy(std::size_t n) { return "_" + std::to_string(n + 1); }

constexpr std::size_t kExhaustiveDummyLimit = 7;

}  // namespace

Term relabel(const Term& t, const std::vector<std::pair<std::string, std::string>>& map) {
  if (map.empty()) return t;
  auto apply = [&](std::string& label) {
    for (const auto& [from, to] : map)
      if (label == from) {
        label = to;
        return;
      }
  };
  Term r = t;
  for (auto& f : r.factors)
    for (auto& i : f.indices) apply(i);
  if (r.dirac)
    for (auto& s : r.dirac->word)
      if (!s.is_gamma5()) apply(s.index);
  return r;
}

std::optional<Term> canonicalize_term(const Term& in) {
  if (in.coeff.is_zero()) return std::nullopt;
  validate(in);
  Term t = in;
  int sign = 1;
  if (t.dirac) sign *= normalize_gamma5(*t.dirac);

  auto dummies = t.dummy_indices();
  // Canonical names skip any free label that already looks like one.
  std::vector<std::string> names;
  {
    auto free = t.free_indices();
    std::set<std::string> taken(free.begin(), free.end());
    for (std::size_t n = 0; names.size() < dummies.size(); ++n)
      if (!taken.contains(canonical_dummy(n))) names.push_back(canonical_dummy(n));
  }

  std::optional<Candidate> best;
  bool antisymmetric = false;
  auto consider = [&](Candidate c) {
    if (c.sign == 0) {
      antisymmetric = true;
      return;
    }
    if (!best || c.key < best->key) {
      best = std::move(c);
    } else if (c.key == best->key && c.sign != best->sign) {
      antisymmetric = true;
    }
  };

  if (dummies.size() <= kExhaustiveDummyLimit) {
    std::vector<std::size_t> perm(dummies.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::pair<std::string, std::string>> map;
      for (std::size_t n = 0; n < dummies.size(); ++n)
        map.emplace_back(dummies[n], names[perm[n]]);
      consider(arrange(t, map));
      if (antisymmetric) return std::nullopt;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    // Iterated first-appearance relabeling; not guaranteed minimal.
    Candidate c{t, t.structure_key(), 1};
    for (int round = 0; round < 8; ++round) {
      auto order = c.term.dummy_indices();
      std::vector<std::pair<std::string, std::string>> map;
      for (std::size_t n = 0; n < order.size(); ++n) map.emplace_back(order[n], names[n]);
      Candidate next = arrange(c.term, map);
      if (next.sign == 0) return std::nullopt;
      next.sign *= c.sign;
      bool stable = next.key == c.key;
      c = std::move(next);
      if (stable) break;
    }
    consider(std::move(c));
  }
  if (antisymmetric || !best) return std::nullopt;
  Term out = std::move(best->term);
  if (sign * best->sign < 0) out.coeff = -out.coeff;
  return out;
}

Expression canonicalize(const Expression& e) {
  std::map<std::string, Term> merged;
  for (const auto& t : e.terms()) {
    auto c = canonicalize_term(t);
    if (!c) continue;
    auto key = c->structure_key();
    auto [it, inserted] = merged.try_emplace(key, *c);
    if (!inserted) it->second.coeff = it->second.coeff.with_number(it->second.coeff.number() + c->coeff.number());
  }
  std::vector<Term> out;
  out.reserve(merged.size());
  for (auto& [key, t] : merged)
    if (!t.coeff.is_zero()) out.push_back(std::move(t));
  return Expression::from_terms(std::move(out));
}

// ------------------------------------------------------------- Expression

Expression::Expression(Term t) : terms_{std::move(t)} {}

Expression Expression::from_terms(std::vector<Term> terms) {
  Expression e;
  e.terms_ = std::move(terms);
  return e;
}

Expression Expression::scalar(Coefficient c) { return canonicalize(Expression(Term{std::move(c), {}, {}, {}})); }

Expression& Expression::operator+=(const Expression& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  *this = canonicalize(*this);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) { return *this += -o; }

Expression Expression::operator-() const {
  Expression r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Term multiply_terms(const Term& a, const Term& b) {
  std::set<std::string> taken;
  for (const auto& l : a.index_occurrences()) taken.insert(l);
  for (const auto& l : b.index_occurrences()) taken.insert(l);
  std::vector<std::pair<std::string, std::string>> map;
  std::size_t next = 0;
  for (const auto& d : b.dummy_indices()) {
    std::string fresh;
    do fresh = "_m" + std::to_string(next++);
    while (taken.contains(fresh));
    taken.insert(fresh);
    map.emplace_back(d, fresh);
  }
  Term rb = relabel(b, map);
  if (a.integral && rb.integral)
    throw StructuralError("product of two loop integrals: " + a.to_string() + " and " + b.to_string());
  Term r = a;
  r.coeff *= rb.coeff;
  r.factors.insert(r.factors.end(), rb.factors.begin(), rb.factors.end());
  if (rb.dirac) {
    if (!r.dirac) r.dirac = DiracString{};
    r.dirac->word.insert(r.dirac->word.end(), rb.dirac->word.begin(), rb.dirac->word.end());
  }
  if (rb.integral) r.integral = rb.integral;
  return r;
}

Expression& Expression::operator*=(const Expression& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.push_back(multiply_terms(a, b));
  *this = canonicalize(from_terms(std::move(out)));
  return *this;
}

Expression& Expression::operator*=(const Coefficient& c) {
  for (auto& t : terms_) t.coeff *= c;
  *this = canonicalize(*this);
  return *this;
}

bool operator==(const Expression& a, const Expression& b) {
  auto ca = canonicalize(a);
  auto cb = canonicalize(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t n = 0; n < ca.size(); ++n) {
    if (ca.terms_[n].structure_key() != cb.terms_[n].structure_key()) return false;
    if (!(ca.terms_[n].coeff.number() == cb.terms_[n].coeff.number())) return false;
  }
  return true;
}

std::string Expression::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t n = 0; n < terms_.size(); ++n) {
    std::string t = terms_[n].to_string();
    if (n == 0) {
      out = t;
    } else if (!t.empty() && t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

// ------------------------------------------------------------ contraction

namespace {

// Replaces the occurrence of `label` outside factor `skip`.
bool replace_other_occurrence(Term& t, std::size_t skip, const std::string& label,
                              const std::string& with) {
  for (std::size_t n = 0; n < t.factors.size(); ++n) {
    if (n == skip) continue;
    for (auto& i : t.factors[n].indices)
      if (i == label) {
        i = with;
        return true;
      }
  }
  if (t.dirac)
    for (auto& s : t.dirac->word)
      if (!s.is_gamma5() && s.index == label) {
        s.index = with;
        return true;
      }
  return false;
}

Term contract_term(Term t) {
  bool progress = true;
  while (progress) {
    progress = false;
    auto dummies = t.dummy_indices();
    std::set<std::string> dummy_set(dummies.begin(), dummies.end());
    for (std::size_t n = 0; n < t.factors.size() && !progress; ++n) {
      auto& f = t.factors[n];
      if (f.kind != FactorKind::Metric) continue;
      if (f.indices[0] == f.indices[1]) {
        t.factors.erase(t.factors.begin() + static_cast<std::ptrdiff_t>(n));
        t.coeff *= Coefficient::symbol(kDim);
        progress = true;
        break;
      }
      for (int slot = 0; slot < 2 && !progress; ++slot) {
        const std::string x = f.indices[slot];
        const std::string keep = f.indices[1 - slot];
        if (!dummy_set.contains(x)) continue;
        Term candidate = t;
        candidate.factors.erase(candidate.factors.begin() + static_cast<std::ptrdiff_t>(n));
        // Erasing shifted positions; search everything except nothing.
        if (replace_other_occurrence(candidate, candidate.factors.size(), x, keep)) {
          t = std::move(candidate);
          progress = true;
        }
      }
    }
  }
  return t;
}

}  // namespace

Expression contract(const Expression& e) {
  std::vector<Term> out;
  for (const auto& t : canonicalize(e).terms()) out.push_back(contract_term(t));
  return canonicalize(Expression::from_terms(std::move(out)));
}

Expression substitute_dimension(const Expression& e, const Rational& value) {
  return substitute_constant(e, kDim, Coefficient::rational(value));
}

Expression substitute_constant(const Expression& e, std::string_view name, const Coefficient& value) {
  std::vector<Term> out = e.terms();
  for (auto& t : out) t.coeff = t.coeff.substitute(name, value);
  return canonicalize(Expression::from_terms(std::move(out)));
}

}  // namespace eftcalc
