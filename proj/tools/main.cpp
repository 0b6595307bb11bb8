// Command-line driver. Each subcommand reads its inputs, runs one library
// pipeline, and prints a single document on standard output; diagnostics and
// optional automata dumps go to standard error. Verdicts are data, not exit
// codes: a run that parses and validates exits 0 whatever the engine found.
// Exit code 2 flags a parse error in some input, 3 any other library error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monlog/checker.hpp"

namespace {

using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw monlog::Error(monlog::ErrorCode::PreconditionViolation,
                        "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

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

const char* verdict_name(const monlog::Verdict& v) {
  return v.sat ? "sat" : "no_model_within_bounds";
}

ordered_json verdict_json(const monlog::Verdict& v) {
  ordered_json doc;
  doc["verdict"] = verdict_name(v);
  doc["candidates"] = v.candidates;
  doc["budget_exhausted"] = v.budget_exhausted;
  if (v.budget_exhausted) doc["frontier"] = v.frontier;
  if (v.witness) doc["witness"] = monlog::model_to_json(*v.witness);
  doc["bounds"] = bounds_json(v.bounds);
  return doc;
}

void write_indented(std::ostream& out, const std::string& text,
                    const std::string& indent) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) out << indent << line << "\n";
}

void verdict_text(std::ostream& out, const monlog::Verdict& v,
                  const std::string& indent) {
  out << indent << "verdict: " << verdict_name(v) << "\n";
  out << indent << "candidates: " << v.candidates << "\n";
  if (v.budget_exhausted) {
    out << indent << "budget_exhausted: true\n";
    out << indent << "frontier: " << v.frontier << "\n";
  }
  if (v.witness) {
    out << indent << "witness:\n";
    write_indented(out, monlog::model_to_text(*v.witness), indent + "  ");
  }
}

void dump_presentation(const monlog::ModelPresentation& m) {
  monlog::RegularSet d = monlog::embed(m);
  std::cerr << "domain:\n" << monlog::dump(d);
  for (const auto& [name, set] : monlog::colorings(m, d))
    std::cerr << "coloring " << name << ":\n" << monlog::dump(set);
}

// Inputs shared across subcommands; unset paths stay empty.
struct Inputs {
  std::string program, query, formula, model, language;
  std::string format = "text";
  bool dump_automata = false;
  int cet_depth = -1;
  monlog::Bounds bounds;
};

std::optional<monlog::Signature> language_of(const Inputs& in) {
  if (in.language.empty()) return std::nullopt;
  return monlog::parse_language(slurp(in.language));
}

monlog::Signature required_language(const Inputs& in) {
  // The subcommand declared --language required, so the path is set.
  return monlog::parse_language(slurp(in.language));
}

void print_doc(const Inputs& in, const ordered_json& doc,
               const std::string& text) {
  if (in.format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

int run_complete(const Inputs& in) {
  monlog::ParsedProgram parsed =
      monlog::parse_program(slurp(in.program), language_of(in));
  const monlog::Signature& sig = parsed.signature;
  monlog::CompletionSet defs = monlog::completion_defs(parsed.program, sig);
  std::vector<monlog::FormulaPtr> cet;
  if (in.cet_depth >= 0) cet = monlog::cet_axioms(sig, in.cet_depth);

  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc["head_variable"] = defs.head_var;
  doc["definitions"] = ordered_json::array();
  for (int l = 0; l < sig.num_predicates(); ++l)
    doc["definitions"].push_back(
        ordered_json{{"predicate", sig.predicates[l]},
                     {"formula", monlog::print_formula(defs.definitions[l], sig)}});
  std::ostringstream text;
  for (const auto& def : defs.definitions)
    text << monlog::print_formula(def, sig) << "\n";
  if (in.cet_depth >= 0) {
    doc["cet_depth"] = in.cet_depth;
    doc["cet"] = ordered_json::array();
    text << "% freeness axioms to depth " << in.cet_depth << "\n";
    for (const auto& axiom : cet) {
      doc["cet"].push_back(monlog::print_formula(axiom, sig));
      text << monlog::print_formula(axiom, sig) << "\n";
    }
  }
  print_doc(in, doc, text.str());
  return 0;
}

int run_simplify(const Inputs& in) {
  monlog::Signature sig = required_language(in);
  monlog::FormulaPtr f = monlog::parse_formula(slurp(in.formula), sig);
  monlog::FormulaPtr simple = monlog::normalize(monlog::flatten(f).formula());
  std::string rendered = monlog::print_formula(simple, sig);
  print_doc(in,
            ordered_json{{"language", signature_json(sig)}, {"formula", rendered}},
            rendered + "\n");
  return 0;
}

int run_emit_sns(const Inputs& in) {
  monlog::Signature sig = required_language(in);
  monlog::FormulaPtr f = monlog::parse_formula(slurp(in.formula), sig);
  std::string sentence = monlog::emit(monlog::assemble_sentence(f, sig));
  print_doc(in,
            ordered_json{{"language", signature_json(sig)}, {"sentence", sentence}},
            sentence + "\n");
  return 0;
}

int run_check_domain(const Inputs& in) {
  monlog::ModelPresentation m = monlog::model_from_text(slurp(in.model));
  monlog::validate(m);
  monlog::RegularSet d = monlog::embed(m);
  bool holds = monlog::check_domain(d, m.sig);
  if (in.dump_automata) std::cerr << "domain:\n" << monlog::dump(d);
  print_doc(in,
            ordered_json{{"language", signature_json(m.sig)}, {"domain_holds", holds}},
            std::string(holds ? "true" : "false") + "\n");
  return 0;
}

int run_eval(const Inputs& in) {
  monlog::ModelPresentation m = monlog::model_from_text(slurp(in.model));
  monlog::validate(m);
  monlog::FormulaPtr f = monlog::parse_formula(slurp(in.formula), m.sig);
  bool value = monlog::eval_sentence(m, f);
  if (in.dump_automata) dump_presentation(m);
  print_doc(in,
            ordered_json{{"language", signature_json(m.sig)}, {"value", value}},
            std::string(value ? "true" : "false") + "\n");
  return 0;
}

int run_solve(const Inputs& in) {
  monlog::Signature sig = required_language(in);
  monlog::FormulaPtr f = monlog::parse_formula(slurp(in.formula), sig);
  monlog::Verdict v = monlog::solve(f, sig, in.bounds);
  if (in.dump_automata && v.witness) dump_presentation(*v.witness);
  std::ostringstream text;
  verdict_text(text, v, "");
  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc.update(verdict_json(v));
  print_doc(in, doc, text.str());
  return 0;
}

int run_entail(const Inputs& in) {
  monlog::ParsedProgram parsed =
      monlog::parse_program(slurp(in.program), language_of(in));
  const monlog::Signature& sig = parsed.signature;
  monlog::Query q;
  try {
    q = monlog::parse_query(slurp(in.query), sig);
  } catch (const monlog::Error& e) {
    if (!in.language.empty()) throw;
    throw monlog::Error(e.code(),
                        std::string(e.what()) +
                            " (language inferred from the program; pass "
                            "--language to declare symbols the program does "
                            "not mention)");
  }
  monlog::EntailReport report = monlog::entail(parsed.program, q, sig, in.bounds);
  if (in.dump_automata) {
    if (report.against_query.witness) dump_presentation(*report.against_query.witness);
    if (report.against_negation.witness)
      dump_presentation(*report.against_negation.witness);
  }
  ordered_json doc;
  doc["language"] = signature_json(sig);
  doc["query"] = monlog::print_query(q, sig);
  doc["against_query"] = verdict_json(report.against_query);
  doc["against_negation"] = verdict_json(report.against_negation);
  std::ostringstream text;
  text << "query: " << monlog::print_query(q, sig) << "\n";
  text << "against query:\n";
  verdict_text(text, report.against_query, "  ");
  text << "against negation:\n";
  verdict_text(text, report.against_negation, "  ");
  print_doc(in, doc, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monadic logic programs under completion semantics: predicate "
               "completion, successor-logic translation, and bounded model "
               "search over finitely presented structures"};
  app.require_subcommand(1);

  Inputs in;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", in.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    return sub;
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--max-extra-roots", in.bounds.max_extra_roots,
                    "extra root components to try")
        ->capture_default_str();
    sub->add_option("--max-extra-nonroots", in.bounds.max_extra_nonroots,
                    "extra non-root components to try")
        ->capture_default_str();
    sub->add_option("--max-prefix", in.bounds.max_prefix,
                    "longest non-root spine prefix")
        ->capture_default_str();
    sub->add_option("--max-period", in.bounds.max_period,
                    "longest non-root spine period")
        ->capture_default_str();
    sub->add_option("--max-multiplicity", in.bounds.max_multiplicity,
                    "copies of one non-root shape")
        ->capture_default_str();
    sub->add_option("--granularity", in.bounds.granularity,
                    "depth resolution of candidate colorings")
        ->capture_default_str();
    sub->add_option("--budget-seconds", in.bounds.budget_seconds,
                    "wall-clock budget for the search")
        ->capture_default_str();
    sub->add_flag("--dump-automata", in.dump_automata,
                  "dump witness automata to standard error");
    return sub;
  };

  CLI::App* complete =
      add_common(app.add_subcommand("complete", "print the predicate completion of a program"));
  complete->add_option("--program", in.program, "program file ('-' for standard input)")
      ->required();
  complete->add_option("--language", in.language, "language directives file");
  complete->add_option("--cet-depth", in.cet_depth,
                       "also print freeness axioms for function words up to this length")
      ->check(CLI::NonNegativeNumber);

  CLI::App* simplify =
      add_common(app.add_subcommand("simplify", "flatten and normalize a formula"));
  simplify->add_option("--formula", in.formula, "formula file ('-' for standard input)")
      ->required();
  simplify->add_option("--language", in.language, "language directives file")->required();

  CLI::App* emit_sns = add_common(
      app.add_subcommand("emit-sns", "translate a sentence into successor logic"));
  emit_sns->add_option("--formula", in.formula, "formula file ('-' for standard input)")
      ->required();
  emit_sns->add_option("--language", in.language, "language directives file")->required();

  CLI::App* check_domain = add_common(
      app.add_subcommand("check-domain", "test the domain condition of a model file"));
  check_domain->add_option("--model", in.model, "model file ('-' for standard input)")
      ->required();
  check_domain->add_flag("--dump-automata", in.dump_automata,
                         "dump the domain automaton to standard error");

  CLI::App* eval =
      add_common(app.add_subcommand("eval", "evaluate a sentence in a presented model"));
  eval->add_option("--model", in.model, "model file ('-' for standard input)")->required();
  eval->add_option("--formula", in.formula, "formula file")->required();
  eval->add_flag("--dump-automata", in.dump_automata,
                 "dump the domain and coloring automata to standard error");

  CLI::App* solve = add_bounds(add_common(
      app.add_subcommand("solve", "search for a model of a sentence within bounds")));
  solve->add_option("--formula", in.formula, "formula file ('-' for standard input)")
      ->required();
  solve->add_option("--language", in.language, "language directives file")->required();

  CLI::App* entail = add_bounds(add_common(app.add_subcommand(
      "entail", "search for countermodels to a query and to its negation")));
  entail->add_option("--program", in.program, "program file ('-' for standard input)")
      ->required();
  entail->add_option("--query", in.query, "query file")->required();
  entail->add_option("--language", in.language, "language directives file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (complete->parsed()) return run_complete(in);
    if (simplify->parsed()) return run_simplify(in);
    if (emit_sns->parsed()) return run_emit_sns(in);
    if (check_domain->parsed()) return run_check_domain(in);
    if (eval->parsed()) return run_eval(in);
    if (solve->parsed()) return run_solve(in);
    if (entail->parsed()) return run_entail(in);
  } catch (const monlog::Error& e) {
    std::cerr << "monlog: " << monlog::error_code_name(e.code()) << ": " << e.what()
              << "\n";
    return e.code() == monlog::ErrorCode::ParseError ? 2 : 3;
  }
  return 0;
}
