#include "eftcalc/action.hpp"

#include "eftcalc/errors.hpp"
#include "eftcalc/loop.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

namespace eftcalc {

// ------------------------------------------------------------------ specs

int FlavorSpec::weight(const std::string& slot) const {
  int w = 0;
  for (const auto& [sign, name] : combo)
    if (name == slot) w += sign;
  return w;
}

std::vector<std::string> FlavorSpec::distinct_slots() const {
  std::vector<std::string> out;
  for (const auto& [sign, name] : combo)
    if (std::ranges::find(out, name) == out.end()) out.push_back(name);
  return out;
}

const SlotSpec* ModelSpec::find_slot(const std::string& name) const {
  auto it = std::ranges::find(slots, name, &SlotSpec::name);
  return it == slots.end() ? nullptr : &*it;
}

const SlotSpec* EffectiveAction::find_slot(const std::string& name) const {
  auto it = std::ranges::find(slots, name, &SlotSpec::name);
  return it == slots.end() ? nullptr : &*it;
}

// ----------------------------------------------------------- polarization

namespace {

// i (gamma.p + m) without the 1/(p^2 - m^2), the i folded into the prefactor.
Expression propagator_numerator(const std::string& index, const std::string& mass) {
  std::vector<Term> terms{
      Term{Coefficient(1), {TensorFactor::momentum(std::string(kLoopMomentum), index)},
           DiracString{{DiracSymbol::gamma(index)}}, {}},
  };
  if (!mass.empty()) terms.push_back(Term{Coefficient::symbol(mass), {}, DiracString{}, {}});
  return canonicalize(Expression::from_terms(std::move(terms)));
}

Expression attach_integrals(const Expression& numerator, const std::string& mass) {
  std::vector<Term> out;
  for (auto t : numerator.terms()) {
    int rank = 0;
    for (const auto& f : t.factors)
      if (f.kind == FactorKind::Momentum && f.name == kLoopMomentum) ++rank;
    LoopIntegral l;
    l.n1 = 1;
    l.n2 = 1;
    l.rank = rank;
    l.mass = mass;
    // Metric sector is cut off as a 4-d integral; the scalar bubble is continued in d.
    l.scheme = rank == 0 ? Scheme::DimReg : Scheme::Cutoff;
    t.integral = l;
    out.push_back(std::move(t));
  }
  return canonicalize(Expression::from_terms(std::move(out)));
}

Polarization unit_polarization(const FlavorSpec& f) {
  const Expression v1 = vertex_strings(f.chirality, f.coeff, "mu", "nu");
  const Expression v2 = vertex_strings(f.chirality, f.coeff, "rho", "sigma");
  // (i/2) * i^2 from the two propagators * i from \int = i * marker.
  const Coefficient prefactor = Coefficient::rational(Rational(1, 2));
  Expression numerator = v1 * propagator_numerator("alpha", f.mass) * v2 *
                         propagator_numerator("beta", f.mass) * prefactor;
  Expression traced = trace(attach_integrals(numerator, f.mass), TraceDim::Four);

  Polarization out;
  for (const auto& t : traced.terms()) {
    if (t.integral->scheme == Scheme::Cutoff) {
      out.sigma += contract(evaluate_cutoff(t));
    } else {
      out.pi += symmetric_reduce(t);
    }
  }
  return out;
}

}  // namespace

Polarization polarization(const FlavorSpec& f, const std::string& s1, const std::string& s2) {
  const int w = f.weight(s1) * f.weight(s2);
  if (w == 0) return {};
  Polarization p = unit_polarization(f);
  p.sigma *= Coefficient(w);
  p.pi *= Coefficient(w);
  return p;
}

// ----------------------------------------------------------- action terms

Term ActionTerm::to_term() const {
  Term t{coeff, {}, {}, integral};
  if (structure == Structure::Epsilon) {
    t.factors = {TensorFactor::epsilon("mu", "nu", "rho", "sigma"), TensorFactor::field_slot(slot_a, "mu", "nu"),
                 TensorFactor::field_slot(slot_b, "rho", "sigma")};
  } else {
    t.factors = {TensorFactor::field_slot(slot_a, "mu", "nu"), TensorFactor::field_slot(slot_b, "mu", "nu")};
  }
  auto c = canonicalize_term(t);
  if (!c) {
    t.coeff = t.coeff.with_number(0);
    return t;
  }
  return *c;
}

bool ActionTerm::is_divergent() const {
  return integral.has_value() || coeff.exponent(kCutoff) > 0 || coeff.eps_pole() < 0;
}

namespace {

std::size_t slot_rank(const std::vector<SlotSpec>& slots, const std::string& name) {
  auto it = std::ranges::find(slots, name, &SlotSpec::name);
  return static_cast<std::size_t>(it - slots.begin());
}

}  // namespace

std::vector<ActionTerm> classify_terms(const Expression& e, const std::vector<SlotSpec>& slots) {
  std::vector<ActionTerm> out;
  for (const auto& t : canonicalize(e).terms()) {
    std::vector<std::string> names;
    int epsilons = 0;
    for (const auto& f : t.factors) {
      if (f.kind == FactorKind::FieldSlot)
        names.push_back(f.name);
      else if (f.kind == FactorKind::Epsilon)
        ++epsilons;
      else
        throw StructuralError("not a slot bilinear: " + t.to_string());
    }
    if (names.size() != 2 || epsilons > 1 || t.dirac)
      throw StructuralError("not a slot bilinear: " + t.to_string());
    std::ranges::sort(names, [&](const std::string& a, const std::string& b) {
      return std::pair(slot_rank(slots, a), a) < std::pair(slot_rank(slots, b), b);
    });
    ActionTerm a{Coefficient(1), t.integral, epsilons ? Structure::Epsilon : Structure::Metric, names[0], names[1]};
    Term tmpl = a.to_term();
    if (tmpl.coeff.is_zero() || tmpl.factors != t.factors)
      throw StructuralError("unrecognized slot structure: " + t.to_string());
    a.coeff = t.coeff * tmpl.coeff.inverse();
    out.push_back(std::move(a));
  }
  std::ranges::stable_sort(out, [&](const ActionTerm& x, const ActionTerm& y) {
    auto key = [&](const ActionTerm& t) {
      return std::tuple(slot_rank(slots, t.slot_a), slot_rank(slots, t.slot_b), t.structure,
                        t.integral.has_value(), t.coeff.monomial_key());
    };
    return key(x) < key(y);
  });
  return out;
}

Expression EffectiveAction::to_expression() const {
  std::vector<Term> out;
  for (const auto& t : terms) out.push_back(t.to_term());
  return canonicalize(Expression::from_terms(std::move(out)));
}

Expression EffectiveAction::potential_form() const {
  Expression out;
  for (const auto& t : to_expression().terms()) {
    Expression acc(Term{t.coeff, {}, {}, t.integral});
    for (const auto& f : t.factors) {
      const SlotSpec* s = f.kind == FactorKind::FieldSlot ? find_slot(f.name) : nullptr;
      Expression piece;
      if (s && s->is_exact()) {
        const auto& i = f.indices[0];
        const auto& j = f.indices[1];
        piece = Expression::from_terms({Term{Coefficient(1), {TensorFactor::deriv_slot(s->potential, i, j)}, {}, {}},
                                        Term{Coefficient(-1), {TensorFactor::deriv_slot(s->potential, j, i)}, {}, {}}});
      } else {
        piece = Expression(Term{Coefficient(1), {f}, {}, {}});
      }
      // Indices are shared across factors here, so splice terms directly.
      std::vector<Term> next;
      for (const auto& x : acc.terms())
        for (const auto& y : piece.terms()) {
          Term z = x;
          z.coeff *= y.coeff;
          z.factors.insert(z.factors.end(), y.factors.begin(), y.factors.end());
          next.push_back(std::move(z));
        }
      acc = Expression::from_terms(std::move(next));
    }
    out += canonicalize(acc);
  }
  return out;
}

// --------------------------------------------------------------- assemble

EffectiveAction assemble(const ModelSpec& model) {
  if (model.dimension != 4) throw ModelError("unsupported dimension " + std::to_string(model.dimension));
  for (const auto& f : model.flavors)
    for (const auto& [sign, slot] : f.combo)
      if (!model.find_slot(slot)) throw ModelError("flavor '" + f.name + "' uses unknown slot '" + slot + "'");

  std::vector<std::future<Expression>> jobs;
  for (const auto& f : model.flavors) {
    jobs.push_back(std::async(std::launch::async, [&f] {
      Polarization unit = unit_polarization(f);
      Expression pi = unit.sigma_at_four() + unit.pi;
      Expression sum;
      for (const auto& s1 : f.distinct_slots())
        for (const auto& s2 : f.distinct_slots()) {
          const int w = f.weight(s1) * f.weight(s2);
          if (w == 0) continue;
          Expression slots(Term{Coefficient(w),
                                {TensorFactor::field_slot(s1, "mu", "nu"), TensorFactor::field_slot(s2, "rho", "sigma")},
                                {},
                                {}});
          sum += pi * slots;
        }
      return sum;
    }));
  }
  Expression total;
  for (auto& j : jobs) total += j.get();

  EffectiveAction act;
  act.slots = model.slots;
  act.terms = classify_terms(total, act.slots);
  return act;
}

// ----------------------------------------------------------- renormalize

namespace {

std::optional<ActionTerm> absorb(const ActionTerm& t, const std::vector<AbsorbDirective>& directives) {
  if (!t.integral || t.integral->scheme != Scheme::DimReg || !t.integral->is_scalar_bubble()) return std::nullopt;
  const std::string& mass = t.integral->mass;
  if (t.coeff.exponent(mass) < 2) return std::nullopt;
  const AbsorbDirective* match = nullptr;
  for (const auto& d : directives) {
    if (t.coeff.exponent(d.coupling) != 2) continue;
    if (match) return std::nullopt;  // ambiguous
    match = &d;
  }
  if (!match) return std::nullopt;
  ActionTerm r = t;
  r.integral.reset();
  r.coeff = t.coeff * Coefficient::symbol(match->coupling, -2) * Coefficient::symbol(mass, -2) *
            Coefficient::symbol(match->finite_name) * match->scale;
  return r;
}

std::vector<ActionTerm> merged(const std::vector<ActionTerm>& terms, const std::vector<SlotSpec>& slots) {
  EffectiveAction tmp;
  tmp.slots = slots;
  tmp.terms = terms;
  return classify_terms(tmp.to_expression(), slots);
}

}  // namespace

EffectiveAction renormalize(const EffectiveAction& act, const std::vector<AbsorbDirective>& directives, bool strict) {
  EffectiveAction out;
  out.slots = act.slots;
  out.residual = act.residual;
  std::vector<ActionTerm> kept;
  std::vector<ActionTerm> unmatched;
  for (const auto& t : act.terms) {
    if (!t.is_divergent()) {
      kept.push_back(t);
    } else if (auto r = absorb(t, directives)) {
      kept.push_back(*r);
    } else {
      unmatched.push_back(t);
    }
  }
  if (!unmatched.empty() && strict) {
    std::string msg = "renormalization incomplete; unabsorbed divergent terms:";
    for (const auto& t : unmatched) msg += "\n  " + t.to_term().to_string();
    throw RenormalizationIncomplete(msg);
  }
  out.terms = merged(kept, out.slots);
  out.residual.insert(out.residual.end(), unmatched.begin(), unmatched.end());
  return out;
}

EffectiveAction substitute_constant(const EffectiveAction& act, const std::string& name, const Coefficient& value) {
  EffectiveAction out = act;
  for (auto& t : out.terms) t.coeff = t.coeff.substitute(name, value);
  for (auto& t : out.residual) t.coeff = t.coeff.substitute(name, value);
  out.terms = merged(out.terms, out.slots);
  return out;
}

// ------------------------------------------------------------ BF reduction

BfReduction eliminate_bf(const EffectiveAction& act, const std::optional<std::string>& keep_potential) {
  std::vector<std::string> fundamentals;
  for (const auto& s : act.slots) {
    if (s.is_exact()) continue;
    bool used = std::ranges::any_of(act.terms, [&](const ActionTerm& t) { return t.slot_a == s.name || t.slot_b == s.name; });
    if (used) fundamentals.push_back(s.name);
  }
  if (fundamentals.empty()) return {act, false, "no fundamental slot in the action; nothing to eliminate"};
  if (fundamentals.size() > 1) throw NotReducible("more than one fundamental slot; only a single 2-form multiplier is supported");
  const std::string b = fundamentals.front();

  std::vector<std::pair<std::string, Coefficient>> constraint;
  std::vector<ActionTerm> rest;
  for (const auto& t : act.terms) {
    const bool has_b = t.slot_a == b || t.slot_b == b;
    if (!has_b) {
      rest.push_back(t);
      continue;
    }
    if (t.slot_a == b && t.slot_b == b) throw NotReducible("slot '" + b + "' appears quadratically");
    if (t.structure != Structure::Epsilon) throw NotReducible("slot '" + b + "' enters a metric-sector term");
    if (t.integral) throw NotReducible("action still carries loop integrals; renormalize first");
    const std::string other = t.slot_a == b ? t.slot_b : t.slot_a;
    const SlotSpec* s = act.find_slot(other);
    if (!s || !s->is_exact()) throw NotReducible("slot '" + b + "' multiplies non-exact slot '" + other + "'");
    auto it = std::ranges::find(constraint, other, &std::pair<std::string, Coefficient>::first);
    if (it != constraint.end()) throw NotReducible("slot '" + b + "' pairs with '" + other + "' in several monomials");
    constraint.emplace_back(other, t.coeff);
  }
  if (constraint.size() != 2)
    throw NotReducible("the multiplier '" + b + "' must pair with exactly two exact slots, found " +
                       std::to_string(constraint.size()));

  auto potential_of = [&](const std::string& slot) { return act.find_slot(slot)->potential; };
  std::size_t keep = 0;
  if (keep_potential) {
    if (potential_of(constraint[0].first) == *keep_potential) {
      keep = 0;
    } else if (potential_of(constraint[1].first) == *keep_potential) {
      keep = 1;
    } else {
      throw NotReducible("potential '" + *keep_potential + "' does not enter the constraint");
    }
  } else if (slot_rank(act.slots, constraint[1].first) < slot_rank(act.slots, constraint[0].first)) {
    keep = 1;
  }
  const auto& [kept_slot, c_keep] = constraint[keep];
  const auto& [gone_slot, c_gone] = constraint[1 - keep];

  Coefficient ratio;
  try {
    ratio = -(c_keep / c_gone);
  } catch (const DomainError& e) {
    throw NotReducible(std::string("constraint coefficients are not invertible: ") + e.what());
  }

  for (auto& t : rest) {
    if (t.slot_a == gone_slot) {
      t.slot_a = kept_slot;
      t.coeff *= ratio;
    }
    if (t.slot_b == gone_slot) {
      t.slot_b = kept_slot;
      t.coeff *= ratio;
    }
  }
  EffectiveAction out;
  for (const auto& s : act.slots)
    if (s.name != b && s.name != gone_slot) out.slots.push_back(s);
  out.terms = merged(rest, out.slots);
  out.residual = act.residual;
  std::ostringstream notice;
  const std::string r = ratio.to_string();
  notice << "eliminated '" << b << "'; " << potential_of(gone_slot) << " = "
         << (r == "1" ? "" : r == "-1" ? "-" : r + " * ") << potential_of(kept_slot) << " up to a gauge transformation";
  return {out, true, notice.str()};
}

// ------------------------------------------------------------ quantization

std::string QuantizationResult::to_string() const {
  switch (classification) {
    case TimeReversal::Nontrivial: return "TRI-nontrivial";
    case TimeReversal::Trivial: return "TRI-trivial";
    case TimeReversal::NotInvariant: return "not-TRI";
  }
  return {};
}

QuantizationResult check_quantization(const Rational& theta_over_pi, int nf) {
  if (nf <= 0 || nf % 2 == 0) throw DomainError("Nf must be a positive odd integer, got " + std::to_string(nf));
  Rational phase = theta_over_pi * nf * nf;
  if (denominator(phase) != 1) return {TimeReversal::NotInvariant, phase};
  const bool odd = (numerator(phase) % 2) != 0;
  return {odd ? TimeReversal::Nontrivial : TimeReversal::Trivial, phase};
}

}  // namespace eftcalc
