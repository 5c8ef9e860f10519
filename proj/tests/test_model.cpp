#include "eftcalc/model.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace eftcalc;

namespace {

std::string read_model(const std::string& name) {
  std::ifstream in(std::string(EFTCALC_MODELS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagnostic diagnose(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ModelDiagnostic& d) {
    return d.diagnostic();
  }
  FAIL("no diagnostic for:\n" << text);
  return {};
}

const std::string kHeader = "dim 4\nconstant e\nconstant m\nslot F exact A\n";

}  // namespace

TEST_CASE("theta model file") {
  const ModelSpec m = parse_model(read_model("theta_term.eft"));
  CHECK(m.dimension == 4);
  REQUIRE(m.slots.size() == 1);
  CHECK(m.slots[0].is_exact());
  CHECK(m.slots[0].potential == "A");
  REQUIRE(m.flavors.size() == 1);
  const FlavorSpec& f = m.flavors[0];
  CHECK(f.mass == "m");
  CHECK(f.chirality == 1);
  CHECK(f.coeff == Coefficient::symbol("e") * Coefficient::symbol("alpha") * Coefficient::rational(Rational(1, 2)));
  CHECK(f.combo == SlotCombo{{1, "F"}});
  REQUIRE(m.absorb.size() == 1);
  CHECK(m.absorb[0].coupling == "alpha");
  CHECK(m.absorb[0].finite_name == "thetaF");
  CHECK(m.absorb[0].scale == Coefficient::rational(Rational(1, 32)) * Coefficient::symbol(kPi, -2));
}

TEST_CASE("bf model file") {
  const ModelSpec m = parse_model(read_model("bf_theory.eft"));
  CHECK(m.flavors.size() == 6);
  CHECK(m.slots.size() == 3);
  CHECK(m.find_slot("b")->kind == SlotSpec::Kind::Fundamental);
  CHECK(m.flavors[1].combo == SlotCombo{{1, "F"}, {-1, "b"}});
  CHECK(m.flavors[1].chirality == -1);
  CHECK(m.flavors[2].coeff == Coefficient::symbol("beta") * Coefficient::rational(Rational(1, 4)));
  REQUIRE(m.absorb.size() == 2);
  CHECK(m.absorb[1].finite_name == "CF");
}

TEST_CASE("directive order only matters for constants") {
  const std::string a =
      "constant e\nconstant m\nflavor x mass m chirality - coeff e combo F\nslot F exact A\ndim 4\n";
  const std::string b = "dim 4\nslot F exact A\nconstant e\nconstant m\nflavor x mass m chirality - coeff e combo F\n";
  const ModelSpec ma = parse_model(a), mb = parse_model(b);
  CHECK(ma.flavors[0].combo == mb.flavors[0].combo);
  CHECK(ma.slots == mb.slots);
}

TEST_CASE("diagnostics carry codes and lines") {
  auto d = diagnose("dim 5\n");
  CHECK(d.code == DiagCode::UnsupportedDimension);
  CHECK(d.line == 1);
  CHECK(d.to_string().find("unsupported dimension") != std::string::npos);

  d = diagnose(kHeader + "flavor x mass m chirality + coeff e combo F + G\n");
  CHECK(d.code == DiagCode::UnknownSlot);
  CHECK(d.line == 5);

  d = diagnose(kHeader + "flavor x mass m chirality + coeff e combo F\nflavor x mass m chirality - coeff e combo F\n");
  CHECK(d.code == DiagCode::DuplicateFlavor);
  CHECK(d.line == 6);

  for (const char* name : {"pi", "I0", "Z", "d", "eps", "gammaE"}) {
    d = diagnose(std::string("constant ") + name + "\n");
    CHECK(d.code == DiagCode::ReservedName);
  }

  d = diagnose("dim 4\nslot F exact A\nflavor x mass 0 chirality + coeff g combo F\n");
  CHECK(d.code == DiagCode::UndeclaredConstant);
  CHECK(d.line == 3);

  d = diagnose("constant e\nconstant e\n");
  CHECK(d.code == DiagCode::DuplicateDeclaration);
  CHECK(d.line == 2);

  d = diagnose("frobnicate 3\n");
  CHECK(d.code == DiagCode::UnknownDirective);

  d = diagnose(kHeader + "flavor x mass m chirality ? coeff e combo F\n");
  CHECK(d.code == DiagCode::Syntax);
  CHECK(d.message.find("unexpected character") != std::string::npos);

  d = diagnose(kHeader + "flavor x mass m chirality + coeff e\n");
  CHECK(d.code == DiagCode::Syntax);
  CHECK(d.message.find("expected 'combo'") != std::string::npos);

  d = diagnose(kHeader + "absorb e^2 as T scale 1/m\n");
  CHECK(d.code == DiagCode::BadAbsorb);

  d = diagnose(kHeader + "absorb e^3 as T\n");
  CHECK(d.code == DiagCode::BadAbsorb);
}

TEST_CASE("comments and blank lines") {
  const ModelSpec m = parse_model("# header\n\n  dim 4 # trailing\nconstant g real positive\n");
  REQUIRE(m.constants.size() == 1);
  CHECK(m.constants[0].real);
  CHECK(m.constants[0].positive);
}

TEST_CASE("monomial and angle parsing") {
  auto any = [](const std::string&) { return true; };
  CHECK(parse_monomial("-e^2/8/pi", any) ==
        -(Coefficient::symbol("e", 2) * Coefficient::rational(Rational(1, 8)) * Coefficient::symbol(kPi, -1)));
  CHECK(parse_monomial("3*x^-2", any) == Coefficient(3) * Coefficient::symbol("x", -2));
  CHECK_THROWS_AS(parse_monomial("y", [](const std::string&) { return false; }), ModelDiagnostic);
  CHECK_THROWS_AS(parse_monomial("1/0", any), ModelDiagnostic);

  CHECK(parse_theta("pi") == 1);
  CHECK(parse_theta("1/3pi") == Rational(1, 3));
  CHECK(parse_theta("pi/2") == Rational(1, 2));
  CHECK(parse_theta("-2pi") == -2);
  CHECK(parse_theta("3*pi/4") == Rational(3, 4));
  CHECK(parse_theta("0") == 0);
  CHECK_THROWS_AS(parse_theta("3"), ModelDiagnostic);
}
