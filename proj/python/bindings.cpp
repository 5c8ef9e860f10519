#include "eftcalc/app.hpp"
#include "eftcalc/dirac.hpp"
#include "eftcalc/errors.hpp"
#include "eftcalc/loop.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace eftcalc;

namespace {

Form parse_form(const std::string& s) {
  if (s == "fs") return Form::FieldStrength;
  if (s == "potential") return Form::Potential;
  throw ModelError("form must be 'fs' or 'potential', got '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "latex") return Format::Latex;
  if (s == "structured") return Format::Structured;
  throw ModelError("format must be 'text', 'latex' or 'structured', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-loop effective actions of dipole-coupled neutral fermions";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<RenormalizationIncomplete>(m, "RenormalizationIncomplete", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SchemeError>(m, "SchemeError", base.ptr());
  py::register_exception<NotReducible>(m, "NotReducible", base.ptr());

  m.def(
      "compute",
      [](const std::string& model, const std::string& form, const std::string& format, bool keep_divergences) {
        return render(compute_action(parse_model(model), keep_divergences), parse_form(form), parse_format(format));
      },
      py::arg("model"), py::arg("form") = "fs", py::arg("format") = "text", py::arg("keep_divergences") = false,
      "Render the (renormalized) effective action of a model given as text.");

  m.def(
      "reduce_bf",
      [](const std::string& model, const std::map<std::string, std::string>& values, std::optional<std::string> keep,
         const std::string& form, const std::string& format) {
        std::vector<Assignment> sets(values.begin(), values.end());
        const BfReduction r = reduce_bf_action(parse_model(model), sets, keep);
        return py::make_tuple(render(r.action, parse_form(form), parse_format(format)), r.notice);
      },
      py::arg("model"), py::arg("values") = std::map<std::string, std::string>{}, py::arg("keep") = py::none(),
      py::arg("form") = "potential", py::arg("format") = "text",
      "Eliminate the fundamental slot; returns (rendered action, notice).");

  m.def(
      "check_quantization",
      [](const std::string& theta, int nf) { return check_quantization(parse_theta(theta), nf).to_string(); },
      py::arg("theta"), py::arg("nf"), "Classify theta (e.g. '1/3pi') for parton number nf.");

  m.def(
      "selftest",
      [](std::uint64_t seed, std::size_t count) {
        const SelftestResult r = selftest(seed, count);
        return py::make_tuple(r.ok, r.report);
      },
      py::arg("seed") = 42, py::arg("count") = 500, "Run the numeric-oracle suites; returns (ok, report).");

  m.def(
      "trace",
      [](const std::vector<std::string>& word, bool four) {
        DiracString s;
        for (const auto& w : word) s.word.push_back(w == "5" ? DiracSymbol::gamma5() : DiracSymbol::gamma(w));
        return trace_word(s, four ? TraceDim::Four : TraceDim::Symbolic).to_string();
      },
      py::arg("word"), py::arg("four") = true, "Trace of a gamma word; '5' denotes gamma5.");

  m.def(
      "bubble_laurent",
      [](const std::string& mass) {
        return laurent_expand(evaluate_dimreg(LoopIntegral::scalar_bubble(mass))).to_string();
      },
      py::arg("mass") = "m", "Laurent expansion of the dimensionally regularized bubble I0.");
}
