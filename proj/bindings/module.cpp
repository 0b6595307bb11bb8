// Python extension. The surface mirrors the command-line driver: text in,
// JSON document out, one function per pipeline stage. The python package
// wrapping this module decodes the documents into plain dicts.

#include <pybind11/pybind11.h>

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "monlog/checker.hpp"

namespace py = pybind11;
using nlohmann::ordered_json;

namespace {

ordered_json signature_json(const monlog::Signature& sig) {
  return ordered_json{{"constants", sig.constants},
                      {"functions", sig.functions},
                      {"predicates", sig.predicates}};
}

ordered_json bounds_json(const monlog::Bounds& b) {
  return ordered_json{{"max_extra_roots", b.max_extra_roots},
                      {"max_extra_nonroots", b.max_extra_nonroots},
                      {"max_prefix", b.max_prefix},
                      {"max_period", b.max_period},
                      {"max_multiplicity", b.max_multiplicity},
                      {"granularity", b.granularity},
                      {"budget_seconds", b.budget_seconds}};
}

ordered_json verdict_json(const monlog::Verdict& v) {
  ordered_json doc;
  doc["verdict"] = v.sat ? "sat" : "no_model_within_bounds";
  doc["candidates"] = v.candidates;
  doc["budget_exhausted"] = v.budget_exhausted;
  if (v.budget_exhausted) doc["frontier"] = v.frontier;
  if (v.witness) doc["witness"] = monlog::model_to_json(*v.witness);
  doc["bounds"] = bounds_json(v.bounds);
  return doc;
}

std::optional<monlog::Signature> maybe_language(const std::string& language) {
  if (language.empty()) return std::nullopt;
  return monlog::parse_language(language);
}

std::string complete_doc(const std::string& program, const std::string& language,
                         int cet_depth) {
  monlog::ParsedProgram parsed = monlog::parse_program(program, maybe_language(language));
  const monlog::Signature& sig = parsed.signature;
  monlog::CompletionSet defs = monlog::completion_defs(parsed.program, sig);
  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc["head_variable"] = defs.head_var;
  doc["definitions"] = ordered_json::array();
  for (int l = 0; l < sig.num_predicates(); ++l)
    doc["definitions"].push_back(
        ordered_json{{"predicate", sig.predicates[l]},
                     {"formula", monlog::print_formula(defs.definitions[l], sig)}});
  if (cet_depth >= 0) {
    doc["cet_depth"] = cet_depth;
    doc["cet"] = ordered_json::array();
    for (const auto& axiom : monlog::cet_axioms(sig, cet_depth))
      doc["cet"].push_back(monlog::print_formula(axiom, sig));
  }
  return doc.dump();
}

std::string simplify_doc(const std::string& formula, const std::string& language) {
  monlog::Signature sig = monlog::parse_language(language);
  monlog::FormulaPtr f = monlog::parse_formula(formula, sig);
  monlog::FormulaPtr simple = monlog::normalize(monlog::flatten(f).formula());
  return ordered_json{{"language", signature_json(sig)},
                      {"formula", monlog::print_formula(simple, sig)}}
      .dump();
}

std::string emit_sns_doc(const std::string& formula, const std::string& language) {
  monlog::Signature sig = monlog::parse_language(language);
  monlog::FormulaPtr f = monlog::parse_formula(formula, sig);
  return ordered_json{{"language", signature_json(sig)},
                      {"sentence", monlog::emit(monlog::assemble_sentence(f, sig))}}
      .dump();
}

std::string check_domain_doc(const std::string& model) {
  monlog::ModelPresentation m = monlog::model_from_text(model);
  monlog::validate(m);
  bool holds = monlog::check_domain(monlog::embed(m), m.sig);
  return ordered_json{{"language", signature_json(m.sig)}, {"domain_holds", holds}}
      .dump();
}

std::string eval_doc(const std::string& model, const std::string& formula) {
  monlog::ModelPresentation m = monlog::model_from_text(model);
  monlog::validate(m);
  monlog::FormulaPtr f = monlog::parse_formula(formula, m.sig);
  return ordered_json{{"language", signature_json(m.sig)},
                      {"value", monlog::eval_sentence(m, f)}}
      .dump();
}

std::string solve_doc(const std::string& formula, const std::string& language,
                      const monlog::Bounds& bounds) {
  monlog::Signature sig = monlog::parse_language(language);
  monlog::FormulaPtr f = monlog::parse_formula(formula, sig);
  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc.update(verdict_json(monlog::solve(f, sig, bounds)));
  return doc.dump();
}

std::string entail_doc(const std::string& program, const std::string& query,
                       const std::string& language, const monlog::Bounds& bounds) {
  monlog::ParsedProgram parsed = monlog::parse_program(program, maybe_language(language));
  const monlog::Signature& sig = parsed.signature;
  monlog::Query q = monlog::parse_query(query, sig);
  monlog::EntailReport report = monlog::entail(parsed.program, q, sig, bounds);
  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc["query"] = monlog::print_query(q, sig);
  doc["against_query"] = verdict_json(report.against_query);
  doc["against_negation"] = verdict_json(report.against_negation);
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_monlog, m) {
  m.doc() = "monadic logic programs under completion semantics";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const monlog::Error& e) {
      std::string message =
          std::string(monlog::error_code_name(e.code())) + ": " + e.what();
      if (e.code() == monlog::ErrorCode::ParseError)
        PyErr_SetString(PyExc_ValueError, message.c_str());
      else
        PyErr_SetString(PyExc_RuntimeError, message.c_str());
    }
  });

  py::class_<monlog::Bounds>(m, "Bounds")
      .def(py::init<>())
      .def_readwrite("max_extra_roots", &monlog::Bounds::max_extra_roots)
      .def_readwrite("max_extra_nonroots", &monlog::Bounds::max_extra_nonroots)
      .def_readwrite("max_prefix", &monlog::Bounds::max_prefix)
      .def_readwrite("max_period", &monlog::Bounds::max_period)
      .def_readwrite("max_multiplicity", &monlog::Bounds::max_multiplicity)
      .def_readwrite("granularity", &monlog::Bounds::granularity)
      .def_readwrite("budget_seconds", &monlog::Bounds::budget_seconds);

  m.def("complete_doc", &complete_doc, py::arg("program"), py::arg("language") = "",
        py::arg("cet_depth") = -1,
        "Predicate completion of a program, as a JSON document string.");
  m.def("simplify_doc", &simplify_doc, py::arg("formula"), py::arg("language"),
        "Flattened and normalized formula, as a JSON document string.");
  m.def("emit_sns_doc", &emit_sns_doc, py::arg("formula"), py::arg("language"),
        "Successor-logic translation of a sentence, as a JSON document string.");
  m.def("check_domain_doc", &check_domain_doc, py::arg("model"),
        "Domain condition of a model file, as a JSON document string.");
  m.def("eval_doc", &eval_doc, py::arg("model"), py::arg("formula"),
        "Truth of a sentence in a presented model, as a JSON document string.");
  m.def("solve_doc", &solve_doc, py::arg("formula"), py::arg("language"),
        py::arg("bounds") = monlog::Bounds{},
        "Bounded model search verdict, as a JSON document string.");
  m.def("entail_doc", &entail_doc, py::arg("program"), py::arg("query"),
        py::arg("language") = "", py::arg("bounds") = monlog::Bounds{},
        "Countermodel search for a query and its negation, as a JSON document string.");
}
