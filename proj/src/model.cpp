#include "eftcalc/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace eftcalc {

std::string_view code_name(DiagCode c) {
  switch (c) {
    case DiagCode::Syntax: return "syntax";
    case DiagCode::UnknownDirective: return "unknown-directive";
    case DiagCode::UnsupportedDimension: return "unsupported-dimension";
    case DiagCode::ReservedName: return "reserved-name";
    case DiagCode::UndeclaredConstant: return "undeclared-constant";
    case DiagCode::DuplicateDeclaration: return "duplicate-declaration";
    case DiagCode::UnknownSlot: return "unknown-slot";
    case DiagCode::DuplicateFlavor: return "duplicate-flavor";
    case DiagCode::BadAbsorb: return "bad-absorb";
  }
  return "unknown";
}

std::string Diagnostic::to_string() const {
  return "line " + std::to_string(line) + ": error[" + std::string(code_name(code)) + "]: " + message;
}

bool is_reserved_name(std::string_view name) {
  static constexpr std::array<std::string_view, 6> reserved{"pi", "I0", "Z", "d", "eps", "gammaE"};
  return std::ranges::find(reserved, name) != reserved.end();
}

namespace {

enum class Tok { Ident, Int, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
};

[[noreturn]] void fail(int line, DiagCode code, std::string msg) {
  throw ModelDiagnostic(Diagnostic{line, code, std::move(msg)});
}

std::vector<Token> tokenize(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c)});
      ++i;
    } else {
      fail(line, DiagCode::Syntax, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of line";
    case Tok::Int: return "integer '" + t.text + "'";
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::Symbol: return "'" + t.text + "'";
  }
  return {};
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  int line() const { return line_; }

  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept_symbol(std::string_view s) {
    if (peek().kind == Tok::Symbol && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    if (peek().kind == Tok::Ident && peek().text == w) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) expected(what);
    return next().text;
  }
  long long expect_int(std::string_view what) {
    if (peek().kind != Tok::Int) expected(what);
    return std::stoll(next().text);
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) expected("'" + std::string(w) + "'");
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) expected("'" + std::string(s) + "'");
  }
  void expect_end() {
    if (!at_end()) expected("end of line");
  }

  [[noreturn]] void expected(std::string_view what) const {
    fail(line_, DiagCode::Syntax, "expected " + std::string(what) + ", found " + describe(peek()));
  }

  /// ['-'] factor (('*'|'/') factor)* ; stops at `stop` or end of line.
  Coefficient monomial(const std::function<void(const std::string&)>& check, std::string_view stop = {}) {
    Coefficient c;
    if (accept_symbol("-")) c = -c;
    bool divide = false;
    while (true) {
      Coefficient f;
      if (peek().kind == Tok::Int) {
        f = Coefficient::rational(Rational(expect_int("integer")));
      } else if (peek().kind == Tok::Ident && (stop.empty() || peek().text != stop)) {
        std::string name = next().text;
        check(name);
        int power = 1;
        if (accept_symbol("^")) {
          const bool neg = accept_symbol("-");
          power = static_cast<int>(expect_int("integer exponent"));
          if (neg) power = -power;
        }
        f = Coefficient::symbol(name, power);
      } else {
        expected("constant or integer");
      }
      if (divide) {
        if (f.is_zero()) fail(line_, DiagCode::Syntax, "division by zero in monomial");
        f = f.inverse();
      }
      c *= f;
      if (accept_symbol("*")) {
        divide = false;
      } else if (accept_symbol("/")) {
        divide = true;
      } else {
        break;
      }
    }
    return c;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

struct SlotRef {
  std::string slot;
  int line;
};

}  // namespace

ModelSpec parse_model(std::string_view text) {
  ModelSpec model;
  std::set<std::string> constants;
  std::set<std::string> finite_names;
  std::vector<SlotRef> slot_refs;
  std::map<std::string, int> flavor_lines;
  std::optional<int> dim_line;

  auto check_constant = [&](int line) {
    return [&, line](const std::string& name) {
      if (name == kPi) return;
      if (is_reserved_name(name)) fail(line, DiagCode::ReservedName, "'" + name + "' is reserved");
      if (!constants.contains(name))
        fail(line, DiagCode::UndeclaredConstant, "constant '" + name + "' used before declaration");
    };
  };
  auto check_new_name = [&](int line, const std::string& name, std::string_view what) {
    if (is_reserved_name(name)) fail(line, DiagCode::ReservedName, "'" + name + "' is reserved and cannot name a " + std::string(what));
    if (constants.contains(name) || finite_names.contains(name) || model.find_slot(name))
      fail(line, DiagCode::DuplicateDeclaration, "'" + name + "' is already declared");
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    LineParser p(tokenize(raw, line_no), line_no);
    if (p.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string head = p.expect_ident("directive");

    if (head == "dim") {
      const long long d = p.expect_int("dimension");
      p.expect_end();
      if (d != 4) fail(line_no, DiagCode::UnsupportedDimension, "unsupported dimension " + std::to_string(d) + "; only 4 is supported");
      if (dim_line) fail(line_no, DiagCode::DuplicateDeclaration, "dimension already set on line " + std::to_string(*dim_line));
      dim_line = line_no;
      model.dimension = 4;
    } else if (head == "constant") {
      ConstantSpec c{p.expect_ident("constant name")};
      check_new_name(line_no, c.name, "constant");
      while (!p.at_end()) {
        if (p.accept_word("real")) {
          c.real = true;
        } else if (p.accept_word("positive")) {
          c.positive = true;
        } else {
          p.expected("'real', 'positive' or end of line");
        }
      }
      constants.insert(c.name);
      model.constants.push_back(std::move(c));
    } else if (head == "slot") {
      SlotSpec s;
      s.name = p.expect_ident("slot name");
      check_new_name(line_no, s.name, "slot");
      if (p.accept_word("exact")) {
        s.kind = SlotSpec::Kind::Exact;
        s.potential = p.expect_ident("potential name");
      } else if (p.accept_word("fundamental")) {
        s.kind = SlotSpec::Kind::Fundamental;
      } else {
        p.expected("'exact' or 'fundamental'");
      }
      p.expect_end();
      model.slots.push_back(std::move(s));
    } else if (head == "flavor") {
      FlavorSpec f;
      f.name = p.expect_ident("flavor name");
      if (auto [it, inserted] = flavor_lines.emplace(f.name, line_no); !inserted)
        fail(line_no, DiagCode::DuplicateFlavor, "flavor '" + f.name + "' already defined on line " + std::to_string(it->second));
      p.expect_word("mass");
      if (p.peek().kind == Tok::Int) {
        if (p.expect_int("mass") != 0) p.expected("mass symbol or 0");
      } else {
        f.mass = p.expect_ident("mass symbol or 0");
        check_constant(line_no)(f.mass);
        if (f.mass == kPi) fail(line_no, DiagCode::ReservedName, "'pi' cannot be a mass");
      }
      p.expect_word("chirality");
      if (p.accept_symbol("+")) {
        f.chirality = 1;
      } else if (p.accept_symbol("-")) {
        f.chirality = -1;
      } else {
        p.expected("'+' or '-'");
      }
      p.expect_word("coeff");
      f.coeff = p.monomial(check_constant(line_no), "combo");
      p.expect_word("combo");
      int sign = p.accept_symbol("-") ? -1 : (p.accept_symbol("+"), 1);
      while (true) {
        std::string slot = p.expect_ident("slot name");
        f.combo.emplace_back(sign, slot);
        slot_refs.push_back({slot, line_no});
        if (p.accept_symbol("+")) {
          sign = 1;
        } else if (p.accept_symbol("-")) {
          sign = -1;
        } else {
          break;
        }
      }
      p.expect_end();
      model.flavors.push_back(std::move(f));
    } else if (head == "absorb") {
      AbsorbDirective a;
      a.coupling = p.expect_ident("coupling constant");
      check_constant(line_no)(a.coupling);
      p.expect_symbol("^");
      if (p.expect_int("exponent 2") != 2) fail(line_no, DiagCode::BadAbsorb, "only squared couplings can be absorbed");
      p.expect_word("as");
      a.finite_name = p.expect_ident("finite constant name");
      check_new_name(line_no, a.finite_name, "finite constant");
      if (p.accept_word("scale")) {
        a.scale = p.monomial([&](const std::string& name) {
          if (name != kPi) fail(line_no, DiagCode::BadAbsorb, "scale must be a rational times a power of pi, found '" + name + "'");
        });
      }
      p.expect_end();
      if (std::ranges::any_of(model.absorb, [&](const AbsorbDirective& d) { return d.coupling == a.coupling; }))
        fail(line_no, DiagCode::DuplicateDeclaration, "coupling '" + a.coupling + "' is already absorbed");
      finite_names.insert(a.finite_name);
      model.absorb.push_back(std::move(a));
    } else {
      fail(line_no, DiagCode::UnknownDirective, "unknown directive '" + head + "'");
    }
    if (end == text.size()) break;
  }

  for (const auto& ref : slot_refs) {
    if (model.find_slot(ref.slot)) continue;
    std::string known;
    for (const auto& s : model.slots) known += (known.empty() ? "" : ", ") + s.name;
    fail(ref.line, DiagCode::UnknownSlot,
         "unknown slot '" + ref.slot + "' in combo" + (known.empty() ? "" : "; declared slots: " + known));
  }
  return model;
}

Coefficient parse_monomial(std::string_view text, const std::function<bool(const std::string&)>& known) {
  LineParser p(tokenize(text, 0), 0);
  Coefficient c = p.monomial([&](const std::string& name) {
    if (name == kPi) return;
    if (!known(name)) fail(0, DiagCode::UndeclaredConstant, "unknown constant '" + name + "'");
  });
  p.expect_end();
  return c;
}

Rational parse_theta(std::string_view text) {
  LineParser p(tokenize(text, 0), 0);
  Rational sign = p.accept_symbol("-") ? -1 : 1;
  Rational value = 1;
  bool have_pi = false;
  if (p.peek().kind == Tok::Int) {
    value = Rational(p.expect_int("integer"));
    if (p.accept_symbol("/")) {
      const long long den = p.expect_int("denominator");
      if (den == 0) fail(0, DiagCode::Syntax, "zero denominator");
      value /= den;
    }
    p.accept_symbol("*");
  }
  if (p.accept_word("pi")) {
    have_pi = true;
    if (p.accept_symbol("/")) {
      const long long den = p.expect_int("denominator");
      if (den == 0) fail(0, DiagCode::Syntax, "zero denominator");
      value /= den;
    }
  }
  p.expect_end();
  if (!have_pi && value != 0) fail(0, DiagCode::Syntax, "theta must be written as a rational multiple of pi, e.g. 1/3pi");
  return sign * value;
}

}  // namespace eftcalc
