#include "eftcalc/render.hpp"

#include "eftcalc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace eftcalc {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 10> kDisplayIndices{"mu",  "nu",    "rho",   "sigma",  "alpha",
                                                           "beta", "kappa", "lambda", "tau",   "omega"};

std::size_t slot_display_rank(const std::vector<SlotSpec>& slots, const TensorFactor& f) {
  // Exact slots keep declaration order, fundamental slots follow.
  for (std::size_t pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& s = slots[i];
      if (s.is_exact() != (pass == 0)) continue;
      const bool hit = f.kind == FactorKind::DerivSlot ? (s.is_exact() && s.potential == f.name) : s.name == f.name;
      if (hit) return pass * slots.size() + i;
    }
  return 2 * slots.size();
}

int permutation_sign(std::vector<std::size_t> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  return sign;
}

struct DisplayTerm {
  Coefficient coeff;
  std::optional<LoopIntegral> integral;
  std::vector<TensorFactor> factors;  // epsilon first
};

DisplayTerm display(const Term& t, const std::vector<SlotSpec>& slots) {
  DisplayTerm out{t.coeff, t.integral, {}};
  std::optional<TensorFactor> eps;
  std::vector<TensorFactor> rest;
  for (const auto& f : t.factors) {
    if (f.kind == FactorKind::Epsilon && !eps) {
      eps = f;
    } else {
      rest.push_back(f);
    }
  }
  std::ranges::stable_sort(rest, [&](const TensorFactor& a, const TensorFactor& b) {
    auto key = [&](const TensorFactor& f) {
      const bool slot = f.kind == FactorKind::FieldSlot || f.kind == FactorKind::DerivSlot;
      return std::tuple(!slot, slot ? slot_display_rank(slots, f) : 0, f.kind);
    };
    return key(a) < key(b);
  });

  const auto dummies = t.dummy_indices();
  std::map<std::string, std::string> rename;
  std::size_t next = 0;
  auto visit = [&](const TensorFactor& f) {
    for (const auto& i : f.indices)
      if (!rename.contains(i) && std::ranges::find(dummies, i) != dummies.end())
        rename[i] = next < kDisplayIndices.size() ? std::string(kDisplayIndices[next++]) : "i" + std::to_string(next++);
  };
  for (const auto& f : rest) visit(f);
  if (eps) visit(*eps);
  auto apply = [&](TensorFactor f) {
    for (auto& i : f.indices)
      if (auto it = rename.find(i); it != rename.end()) i = it->second;
    return f;
  };

  if (eps) {
    TensorFactor e = apply(*eps);
    auto rank = [](const std::string& s) {
      auto it = std::ranges::find(kDisplayIndices, s);
      return std::pair(static_cast<std::size_t>(it - kDisplayIndices.begin()), s);
    };
    std::vector<std::size_t> order(e.indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return rank(e.indices[a]) < rank(e.indices[b]); });
    std::vector<std::string> sorted;
    for (auto k : order) sorted.push_back(e.indices[k]);
    if (permutation_sign(order) < 0) out.coeff = -out.coeff;
    e.indices = std::move(sorted);
    out.factors.push_back(std::move(e));
  }
  for (const auto& f : rest) out.factors.push_back(apply(f));
  return out;
}

std::string text_line(const DisplayTerm& d) {
  std::string coeff = d.coeff.to_string();
  if (d.integral) coeff = (coeff == "1" ? "" : coeff == "-1" ? "-" : coeff + " * ") + d.integral->to_string();
  std::string tensors;
  for (const auto& f : d.factors) tensors += (tensors.empty() ? "" : " ") + f.to_string();
  if (tensors.empty()) return coeff;
  if (coeff == "1") return tensors;
  if (coeff == "-1") return "-" + tensors;
  return coeff + " * " + tensors;
}

// --- LaTeX -------------------------------------------------------------

constexpr std::array<std::string_view, 24> kGreek{"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",
                                                  "eta",   "theta", "iota",  "kappa", "lambda",  "mu",
                                                  "nu",    "xi",    "pi",    "rho",   "sigma",   "tau",
                                                  "upsilon", "phi", "chi",   "psi",   "omega",   "varepsilon"};

std::string latex_name(const std::string& name) {
  for (auto g : kGreek) {
    std::string cap(g);
    cap[0] = static_cast<char>(std::toupper(cap[0]));
    for (const auto& cand : {std::string(g), cap}) {
      if (name.rfind(cand, 0) != 0) continue;
      std::string rest = name.substr(cand.size());
      const std::string head = "\\" + cand;
      if (rest.empty()) return head;
      if (std::isalpha(static_cast<unsigned char>(rest[0])) && std::islower(static_cast<unsigned char>(rest[0])))
        continue;
      return head + "_{" + rest + "}";
    }
  }
  if (name.size() > 1 && std::ranges::all_of(name.substr(1), [](char c) { return std::isupper(c) || std::isdigit(c); }))
    return name.substr(0, 1) + "_{" + name.substr(1) + "}";
  if (name.size() > 1) return "\\mathrm{" + name + "}";
  return name;
}

std::string latex_power(const std::string& base, int e) {
  return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
}

std::string latex_log(const std::string& atom) {
  if (atom == log_four_pi()) return "\\ln(4\\pi)";
  if (atom.rfind("ln(mu^2/", 0) == 0) {
    const std::string m = atom.substr(8, atom.size() - 8 - 3);
    return "\\ln\\frac{\\mu^{2}}{" + latex_name(m) + "^{2}}";
  }
  if (atom.rfind("ln(Lambda/", 0) == 0) {
    const std::string m = atom.substr(10, atom.size() - 10 - 1);
    return "\\ln\\frac{\\Lambda}{" + latex_name(m) + "}";
  }
  return "\\mathrm{" + atom + "}";
}

std::string latex_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return "\\frac{" + numerator(r).str() + "}{" + denominator(r).str() + "}";
}

/// Returns {sign, body} so terms can be joined with + / -.
std::pair<bool, std::string> latex_coefficient(const Coefficient& c) {
  const Gaussian& g = c.number();
  std::vector<std::string> parts;
  bool negative = false;
  if (g.re != 0 && g.im != 0) {
    parts.push_back("\\left(" + latex_rational(g.re) + (g.im < 0 ? " - " : " + ") + latex_rational(abs(g.im)) + "i\\right)");
  } else {
    const Rational r = g.re != 0 ? g.re : g.im;
    negative = r < 0;
    if (abs(r) != 1) parts.push_back(latex_rational(abs(r)));
    if (g.im != 0) parts.push_back("i");
  }
  int pi_exp = 0;
  for (const auto& [name, e] : c.constants()) {
    if (name == kPi) {
      pi_exp = e;
      continue;
    }
    parts.push_back(latex_power(latex_name(name), e));
  }
  if (pi_exp != 0) parts.push_back(latex_power("\\pi", pi_exp));
  for (const auto& [atom, k] : c.logs()) parts.push_back(latex_power(latex_log(atom), k));
  if (c.eps_pole() != 0) parts.push_back(latex_power("\\hat\\varepsilon", c.eps_pole()));
  std::string body;
  for (const auto& p : parts) body += (body.empty() ? "" : "\\,") + p;
  return {negative, body};
}

std::string latex_indices(const std::vector<std::string>& idx) {
  std::string s;
  for (const auto& i : idx) s += std::ranges::find(kDisplayIndices, i) != kDisplayIndices.end() ? "\\" + i : i;
  return s;
}

std::string latex_factor(const TensorFactor& f) {
  switch (f.kind) {
    case FactorKind::Metric: return "\\eta_{" + latex_indices(f.indices) + "}";
    case FactorKind::Epsilon: return "\\epsilon^{" + latex_indices(f.indices) + "}";
    case FactorKind::Momentum: return latex_name(f.name) + "_{" + latex_indices(f.indices) + "}";
    case FactorKind::FieldSlot: return latex_name(f.name) + "_{" + latex_indices(f.indices) + "}";
    case FactorKind::DerivSlot:
      return "\\partial_{" + latex_indices({f.indices[0]}) + "}" + latex_name(f.name) + "_{" +
             latex_indices({f.indices[1]}) + "}";
  }
  return {};
}

std::string latex_term(const DisplayTerm& d, bool first) {
  auto [negative, body] = latex_coefficient(d.coeff);
  if (d.integral) {
    std::string marker = d.integral->is_scalar_bubble() ? "I_{0}(" + latex_name(d.integral->mass) + ")"
                                                        : "\\mathrm{" + d.integral->to_string() + "}";
    body += (body.empty() ? "" : "\\,") + marker;
  }
  for (const auto& f : d.factors) body += (body.empty() ? "" : "\\,") + latex_factor(f);
  if (body.empty()) body = "1";
  if (first) return (negative ? "-" : "") + body;
  return (negative ? " - " : " + ") + body;
}

// --- structured ----------------------------------------------------------

json big_int(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

boost::multiprecision::cpp_int read_int(const json& j) {
  if (j.is_number_integer()) return boost::multiprecision::cpp_int(j.get<long long>());
  if (j.is_string()) return boost::multiprecision::cpp_int(j.get<std::string>());
  throw ModelError("structured: expected integer, found " + j.dump());
}

std::vector<json> coefficient_entries(const Coefficient& c) {
  std::vector<json> out;
  auto emit = [&](const Rational& r, int i_power) {
    json j;
    j["num"] = big_int(numerator(r));
    j["den"] = big_int(denominator(r));
    j["i_power"] = i_power;
    j["pi_power"] = c.exponent(std::string(kPi));
    json consts = json::object();
    for (const auto& [name, e] : c.constants())
      if (name != kPi) consts[name] = e;
    j["constants"] = consts;
    if (!c.logs().empty()) {
      json logs = json::object();
      for (const auto& [atom, k] : c.logs()) logs[atom] = k;
      j["logs"] = logs;
    }
    if (c.eps_pole() != 0) j["eps_pole"] = c.eps_pole();
    out.push_back(std::move(j));
  };
  if (c.number().re != 0 || c.number().im == 0) emit(c.number().re, 0);
  if (c.number().im != 0) emit(c.number().im, 1);
  return out;
}

Coefficient read_coefficient(const json& j) {
  Rational r(read_int(j.at("num")), read_int(j.at("den")));
  Coefficient c = Coefficient::rational(r);
  const int ip = j.value("i_power", 0);
  if (ip < 0 || ip > 1) throw ModelError("structured: i_power must be 0 or 1");
  if (ip == 1) c *= Coefficient::imaginary_unit();
  if (int p = j.value("pi_power", 0); p != 0) c *= Coefficient::symbol(kPi, p);
  const json consts = j.value("constants", json::object());
  for (const auto& [name, e] : consts.items()) c *= Coefficient::symbol(name, e.get<int>());
  const json logs = j.value("logs", json::object());
  for (const auto& [atom, k] : logs.items()) c *= Coefficient::log_atom(atom, k.get<int>());
  if (int e = j.value("eps_pole", 0); e != 0) c *= Coefficient::eps_power(e);
  return c;
}

std::string_view scheme_name(Scheme s) { return s == Scheme::DimReg ? "dimreg" : "cutoff"; }

json integral_json(const LoopIntegral& l) {
  return json{{"n1", l.n1},
              {"n2", l.n2},
              {"rank", l.rank},
              {"numerator", l.numerator == Numerator::Tensor ? "tensor" : "p2"},
              {"mass", l.mass},
              {"scheme", scheme_name(l.scheme)},
              {"zero_external", l.zero_external}};
}

LoopIntegral read_integral(const json& j) {
  LoopIntegral l;
  l.n1 = j.at("n1").get<int>();
  l.n2 = j.at("n2").get<int>();
  l.rank = j.at("rank").get<int>();
  l.numerator = j.at("numerator").get<std::string>() == "p2" ? Numerator::MomentumSquared : Numerator::Tensor;
  l.mass = j.at("mass").get<std::string>();
  l.scheme = j.at("scheme").get<std::string>() == "cutoff" ? Scheme::Cutoff : Scheme::DimReg;
  l.zero_external = j.at("zero_external").get<bool>();
  return l;
}

int exact_count(const EffectiveAction& act, const ActionTerm& t) {
  int n = 0;
  for (const auto* name : {&t.slot_a, &t.slot_b})
    if (const SlotSpec* s = act.find_slot(*name); s && s->is_exact()) ++n;
  return n;
}

std::vector<json> terms_json(const EffectiveAction& act, const std::vector<ActionTerm>& terms, Form form) {
  std::vector<json> out;
  for (const auto& t : terms) {
    Coefficient c = t.coeff;
    // d_mu V_nu - d_nu V_mu doubles each exact slot under the antisymmetric contraction.
    if (form == Form::Potential) c *= Coefficient::rational(Rational(1 << exact_count(act, t)));
    for (auto& entry : coefficient_entries(c)) {
      json j;
      j["coefficient"] = std::move(entry);
      if (t.integral) j["integral"] = integral_json(*t.integral);
      j["tensor"] = t.structure == Structure::Epsilon ? "epsilon" : "metric";
      j["slots"] = {t.slot_a, t.slot_b};
      j["form"] = form == Form::FieldStrength ? "field-strength" : "potential";
      out.push_back(std::move(j));
    }
  }
  return out;
}

std::vector<Term> display_terms(const EffectiveAction& act, const std::vector<ActionTerm>& terms, Form form) {
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (form == Form::FieldStrength) {
      out.push_back(t.to_term());
    } else {
      EffectiveAction single{act.slots, {t}, {}};
      for (auto& x : single.potential_form().terms()) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

std::string render_term_text(const Term& t, const std::vector<SlotSpec>& slots) { return text_line(display(t, slots)); }

std::string render(const EffectiveAction& act, Form form, Format format) {
  if (format == Format::Structured) {
    json j;
    j["schema"] = 1;
    j["form"] = form == Form::FieldStrength ? "field-strength" : "potential";
    json slots = json::array();
    for (const auto& s : act.slots) {
      json js{{"name", s.name}, {"kind", s.is_exact() ? "exact" : "fundamental"}};
      if (s.is_exact()) js["potential"] = s.potential;
      slots.push_back(std::move(js));
    }
    j["slots"] = slots;
    j["terms"] = terms_json(act, act.terms, form);
    if (!act.residual.empty()) j["residual"] = terms_json(act, act.residual, form);
    return j.dump(2) + "\n";
  }

  const auto main = display_terms(act, act.terms, form);
  const auto residual = display_terms(act, act.residual, form);
  std::ostringstream os;
  if (format == Format::Text) {
    for (const auto& t : main) os << render_term_text(t, act.slots) << "\n";
    for (const auto& t : residual) os << "residual: " << render_term_text(t, act.slots) << "\n";
    return os.str();
  }
  if (main.empty() && residual.empty()) return {};
  auto block = [&](const std::vector<Term>& terms) {
    std::string body;
    for (std::size_t i = 0; i < terms.size(); ++i) body += latex_term(display(terms[i], act.slots), i == 0);
    return body;
  };
  os << "\\[\n  S_{\\mathrm{eff}} = \\int d^{4}x\\,\\Big[" << (main.empty() ? "0" : block(main)) << "\\Big]\n\\]\n";
  if (!residual.empty()) os << "\\[\n  S_{\\mathrm{div}} = \\int d^{4}x\\,\\Big[" << block(residual) << "\\Big]\n\\]\n";
  return os.str();
}

EffectiveAction parse_structured(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("structured: ") + e.what());
  }
  try {
    if (j.at("schema").get<int>() != 1) throw ModelError("structured: unsupported schema " + j.at("schema").dump());
    const bool potential = j.at("form").get<std::string>() == "potential";
    EffectiveAction act;
    for (const auto& s : j.at("slots")) {
      SlotSpec spec;
      spec.name = s.at("name").get<std::string>();
      if (s.at("kind").get<std::string>() == "exact") {
        spec.kind = SlotSpec::Kind::Exact;
        spec.potential = s.at("potential").get<std::string>();
      }
      act.slots.push_back(std::move(spec));
    }
    auto read_terms = [&](const json& arr) {
      std::vector<Term> terms;
      for (const auto& t : arr) {
        ActionTerm a;
        a.coeff = read_coefficient(t.at("coefficient"));
        if (t.contains("integral")) a.integral = read_integral(t.at("integral"));
        a.structure = t.at("tensor").get<std::string>() == "metric" ? Structure::Metric : Structure::Epsilon;
        const auto& slots = t.at("slots");
        a.slot_a = slots.at(0).get<std::string>();
        a.slot_b = slots.at(1).get<std::string>();
        if (!act.find_slot(a.slot_a) || !act.find_slot(a.slot_b)) throw ModelError("structured: unknown slot in term");
        if (potential) a.coeff *= Coefficient::rational(Rational(1, 1 << exact_count(act, a)));
        terms.push_back(a.to_term());
      }
      return classify_terms(canonicalize(Expression::from_terms(std::move(terms))), act.slots);
    };
    act.terms = read_terms(j.at("terms"));
    if (j.contains("residual")) act.residual = read_terms(j.at("residual"));
    return act;
  } catch (const json::exception& e) {
    throw ModelError(std::string("structured: ") + e.what());
  }
}

}  // namespace eftcalc
