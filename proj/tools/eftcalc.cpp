#include "eftcalc/app.hpp"
#include "eftcalc/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

enum Exit : int { kOk = 0, kDiagnostics = 1, kRenormalization = 2, kOracle = 3 };

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw eftcalc::ModelError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::map<std::string, eftcalc::Form> kForms{{"fs", eftcalc::Form::FieldStrength},
                                                  {"potential", eftcalc::Form::Potential}};
const std::map<std::string, eftcalc::Format> kFormats{{"text", eftcalc::Format::Text},
                                                      {"latex", eftcalc::Format::Latex},
                                                      {"structured", eftcalc::Format::Structured}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-loop effective actions of dipole-coupled neutral fermions"};
  app.require_subcommand(1);

  std::string file;
  eftcalc::Form form = eftcalc::Form::FieldStrength;
  eftcalc::Format format = eftcalc::Format::Text;
  bool keep_divergences = false;

  auto* compute = app.add_subcommand("compute", "Assemble and renormalize the effective action of a model");
  compute->add_option("file", file, "Model file ('-' for stdin)")->required();
  compute->add_option("--form", form, "fs or potential")->transform(CLI::CheckedTransformer(kForms));
  compute->add_option("--format", format, "text, latex or structured")->transform(CLI::CheckedTransformer(kFormats));
  compute->add_flag("--keep-divergences", keep_divergences, "Skip renormalization");

  std::vector<std::string> sets;
  std::string keep;
  auto* reduce = app.add_subcommand("reduce-bf", "Compute, then integrate out the fundamental slot");
  reduce->add_option("file", file, "Model file ('-' for stdin)")->required();
  reduce->add_option("--set", sets, "NAME=monomial substitution after renormalization");
  reduce->add_option("--keep", keep, "Potential kept after elimination");
  reduce->add_option("--form", form, "fs or potential")->transform(CLI::CheckedTransformer(kForms));
  reduce->add_option("--format", format, "text, latex or structured")->transform(CLI::CheckedTransformer(kFormats));

  std::string theta;
  int nf = 1;
  auto* quant = app.add_subcommand("check-quantization", "Classify a theta angle for fractional charge e/Nf");
  quant->add_option("--theta", theta, "Angle as a rational multiple of pi, e.g. 1/3pi")->required();
  quant->add_option("--nf", nf, "Odd parton number")->required();

  std::uint64_t seed = 42;
  std::size_t count = 500;
  auto* self = app.add_subcommand("selftest", "Compare symbolic results against the numeric oracle");
  self->add_option("--seed", seed, "Master seed");
  self->add_option("--count", count, "Random words to trace");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      const auto model = eftcalc::parse_model(read_file(file));
      std::cout << eftcalc::render(eftcalc::compute_action(model, keep_divergences), form, format);
      return kOk;
    }
    if (*reduce) {
      const auto model = eftcalc::parse_model(read_file(file));
      std::vector<eftcalc::Assignment> parsed;
      for (const auto& s : sets) parsed.push_back(eftcalc::parse_assignment(s));
      const auto r = eftcalc::reduce_bf_action(model, parsed, keep.empty() ? std::nullopt : std::optional(keep));
      std::cerr << r.notice << "\n";
      std::cout << eftcalc::render(r.action, form, format);
      return kOk;
    }
    if (*quant) {
      const auto result = eftcalc::check_quantization(eftcalc::parse_theta(theta), nf);
      std::cout << result.to_string() << "\n";
      return kOk;
    }
    if (*self) {
      const auto result = eftcalc::selftest(seed, count);
      std::cout << result.report;
      return result.ok ? kOk : kOracle;
    }
  } catch (const eftcalc::RenormalizationIncomplete& e) {
    std::cerr << "renormalization incomplete: " << e.what() << "\n";
    return kRenormalization;
  } catch (const eftcalc::ModelDiagnostic& e) {
    std::cerr << e.what() << "\n";
    return kDiagnostics;
  } catch (const eftcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  }
  return kOk;
}
