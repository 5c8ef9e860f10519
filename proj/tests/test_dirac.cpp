#include "eftcalc/dirac.hpp"
#include "eftcalc/errors.hpp"
#include "eftcalc/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace eftcalc;

namespace {

DiracString word(std::initializer_list<const char*> labels) {
  DiracString s;
  for (const char* l : labels) s.word.push_back(std::string(l) == "5" ? DiracSymbol::gamma5() : DiracSymbol::gamma(l));
  return s;
}

Expression tensor(TensorFactor f, Coefficient c) { return Expression(Term{c, {std::move(f)}, {}, {}}); }

}  // namespace

TEST_CASE("gamma5 normalization") {
  DiracString s = word({"5", "mu", "nu", "rho"});
  CHECK(normalize_gamma5(s) == -1);
  CHECK(s.to_string() == "g[mu nu rho 5]");

  DiracString t = word({"5", "mu", "5"});
  CHECK(normalize_gamma5(t) == -1);
  CHECK(t.to_string() == "g[mu]");
}

TEST_CASE("basic traces") {
  CHECK(trace_word(word({}), TraceDim::Symbolic) == Expression::scalar(Coefficient(4)));
  CHECK(trace_word(word({"mu", "nu"}), TraceDim::Symbolic) == tensor(TensorFactor::metric("mu", "nu"), Coefficient(4)));
  CHECK(trace_word(word({"mu", "nu", "rho"}), TraceDim::Symbolic).empty());
  CHECK(trace_word(word({"5"}), TraceDim::Four).empty());
  CHECK(trace_word(word({"mu", "nu", "5"}), TraceDim::Four).empty());
  CHECK(trace_word(word({"5", "mu", "nu", "rho", "sigma"}), TraceDim::Four) ==
        tensor(TensorFactor::epsilon("mu", "nu", "rho", "sigma"), Coefficient(Gaussian(0, -4))));
}

TEST_CASE("gamma5 at symbolic dimension is refused") {
  CHECK_THROWS_AS(trace_word(word({"5", "mu", "nu", "rho", "sigma"}), TraceDim::Symbolic), SchemeError);
}

TEST_CASE("four-gamma trace") {
  const Expression expected = Expression::from_terms({
      Term{Coefficient(4), {TensorFactor::metric("a", "b"), TensorFactor::metric("c", "d")}, {}, {}},
      Term{Coefficient(-4), {TensorFactor::metric("a", "c"), TensorFactor::metric("b", "d")}, {}, {}},
      Term{Coefficient(4), {TensorFactor::metric("a", "d"), TensorFactor::metric("b", "c")}, {}, {}},
  });
  CHECK(trace_word(word({"a", "b", "c", "d"}), TraceDim::Symbolic) == expected);
}

TEST_CASE("commutator traces") {
  const auto report = oracle::commutator_identity_suite();
  INFO(report.to_string());
  CHECK(report.ok());
  CHECK(report.passed == 512);
}

namespace {

DiracString random_word(std::mt19937_64& rng, int max_len, bool allow_g5) {
  std::uniform_int_distribution<int> len(0, max_len), sym(0, allow_g5 ? 4 : 3);
  static const char* labels[] = {"a", "b", "c", "d"};
  DiracString s;
  const int n = len(rng);
  for (int k = 0; k < n; ++k) {
    const int v = sym(rng);
    // Distinct labels per position keep every index free.
    s.word.push_back(v == 4 ? DiracSymbol::gamma5() : DiracSymbol::gamma(std::string(labels[v]) + std::to_string(k)));
  }
  return s;
}

}  // namespace

TEST_CASE("odd traces vanish") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    DiracString s = random_word(rng, 9, false);
    if (s.word.size() % 2 == 0) s.word.push_back(DiracSymbol::gamma("z"));
    REQUIRE(trace_word(s, TraceDim::Symbolic).empty());
  }
}

TEST_CASE("trace cyclicity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> component(0, 3);
  for (int n = 0; n < 200; ++n) {
    const DiracString s = random_word(rng, 8, true);
    if (s.word.empty()) continue;
    DiracString r = s;
    std::rotate(r.word.begin(), r.word.begin() + 1, r.word.end());
    const Expression a = trace_word(s, TraceDim::Four), b = trace_word(r, TraceDim::Four);
    INFO(s.to_string());
    if (!s.has_gamma5()) {
      REQUIRE(a == b);
      continue;
    }
    // eps-eta products are only unique up to the Schouten identity; compare values.
    for (int k = 0; k < 16; ++k) {
      oracle::NumericContext ctx;
      for (const auto& sym : s.word)
        if (!sym.is_gamma5()) ctx.indices[sym.index] = component(rng);
      REQUIRE(std::abs(oracle::evaluate(a, ctx) - oracle::evaluate(b, ctx)) < 1e-10);
    }
  }
}

TEST_CASE("vertex expansion") {
  const Coefficient c = Coefficient::symbol("e") * Coefficient::symbol("alpha") * Coefficient::rational(Rational(1, 2));
  const Expression v = vertex_strings(1, c, "mu", "nu");
  // coeff (i/2) [g^mu g^nu - g^nu g^mu] + coeff (1/2) [g^mu g^nu - g^nu g^mu] g5.
  const Coefficient half_i = c * Coefficient(Gaussian(0, Rational(1, 2)));
  const Coefficient half = c * Coefficient::rational(Rational(1, 2));
  const Expression expected = canonicalize(Expression::from_terms({
      Term{half_i, {}, word({"mu", "nu"}), {}},
      Term{-half_i, {}, word({"nu", "mu"}), {}},
      Term{half, {}, word({"mu", "nu", "5"}), {}},
      Term{-half, {}, word({"nu", "mu", "5"}), {}},
  }));
  CHECK(v == expected);

  // Flipping chirality flips only the gamma5 part.
  const Expression flipped = vertex_strings(-1, c, "mu", "nu");
  Expression plain, chiral;
  for (const auto& t : v.terms()) (t.dirac->has_gamma5() ? chiral : plain) += Expression(t);
  CHECK(flipped == plain - chiral);
}

TEST_CASE("vertex over a slot combination") {
  const std::set<std::string> declared{"F", "b"};
  const SlotCombo combo{{1, "F"}, {-1, "b"}};
  const Expression v = expand_vertex(1, Coefficient(1), combo, declared);
  // Each slot gives a plain and a gamma5 word once mu nu are contracted with the slot.
  CHECK(v.size() == 4);
  CHECK(expand_vertex(1, Coefficient(1), {}, declared).empty());
  CHECK_THROWS_AS(expand_vertex(1, Coefficient(1), {{1, "G"}}, declared), ModelError);
}
