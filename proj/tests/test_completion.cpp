#include "doctest.h"

#include <random>

#include "monlog/completion.hpp"

using namespace monlog;

namespace {
GeneralForm gf_of(const std::string& text) {
  ParsedProgram parsed = parse_program(text);
  NameSupply supply("X", {}, 1);
  return general_form(parsed.program.clauses.at(0), supply);
}
}  // namespace

TEST_CASE("general form of a clause with a negative literal") {
  ParsedProgram parsed = parse_program("p(f(X)) :- not p(X).");
  NameSupply supply("X", {}, 1);
  GeneralForm gf = general_form(parsed.program.clauses[0], supply);
  CHECK(gf.pred == 0);
  CHECK(gf.head_var == "X1");
  CHECK(print_formula(gf.body, parsed.signature) == "exists X. X1 = f(X) & ~p(X)");
  CHECK(free_variables(gf.body) == std::set<std::string>{"X1"});
}

TEST_CASE("general form of a fact has no quantifier block") {
  ParsedProgram parsed = parse_program("p(a).");
  NameSupply supply("X", {}, 1);
  GeneralForm gf = general_form(parsed.program.clauses[0], supply);
  CHECK(print_formula(gf.body, parsed.signature) == "X1 = a");
}

TEST_CASE("general form applies the definition literally") {
  ParsedProgram parsed = parse_program("p(X) :- q(X).");
  NameSupply supply("X", {}, 1);
  GeneralForm gf = general_form(parsed.program.clauses[0], supply);
  CHECK(print_formula(gf.body, parsed.signature) == "exists X. X1 = X & q(X)");
}

TEST_CASE("head variable dodges clause variables") {
  GeneralForm gf = gf_of("p(X1) :- q(X2).");
  CHECK(gf.head_var == "X3");
}

TEST_CASE("completion of the alternating program") {
  ParsedProgram parsed = parse_program("p(a). p(f(X)) :- not p(X).");
  CompletionSet defs = completion_defs(parsed.program, parsed.signature);
  REQUIRE(defs.definitions.size() == 1);
  CHECK(defs.head_var == "X1");
  CHECK(print_formula(defs.definitions[0], parsed.signature) ==
        "forall X1. p(X1) <-> X1 = a | (exists X. X1 = f(X) & ~p(X))");
}

TEST_CASE("predicates without clauses get a false definition") {
  Signature sig{{}, {}, {"q"}};
  CompletionSet defs = completion_defs(Program{}, sig);
  REQUIRE(defs.definitions.size() == 1);
  CHECK(print_formula(defs.definitions[0], sig) == "forall X1. q(X1) <-> false");
}

TEST_CASE("self-referential clause is not simplified") {
  ParsedProgram parsed = parse_program("p(X) :- p(X).");
  CompletionSet defs = completion_defs(parsed.program, parsed.signature);
  CHECK(print_formula(defs.definitions[0], parsed.signature) ==
        "forall X1. p(X1) <-> exists X. X1 = X & p(X)");
}

TEST_CASE("head variable is uniform and avoids every clause of the program") {
  ParsedProgram parsed = parse_program("p(X1) :- q(X2).\nq(a).\n");
  CompletionSet defs = completion_defs(parsed.program, parsed.signature);
  CHECK(defs.head_var == "X3");
  CHECK(print_formula(defs.definitions[0], parsed.signature) ==
        "forall X3. p(X3) <-> exists X1, X2. X3 = X1 & q(X2)");
  CHECK(print_formula(defs.definitions[1], parsed.signature) ==
        "forall X3. q(X3) <-> X3 = a");
}

TEST_CASE("disjunct order follows program order") {
  ParsedProgram parsed = parse_program("p(b). p(a).");
  CompletionSet defs = completion_defs(parsed.program, parsed.signature);
  CHECK(print_formula(defs.definitions[0], parsed.signature) ==
        "forall X1. p(X1) <-> X1 = b | X1 = a");
}

TEST_CASE("freeness axioms for one function and one constant at depth 2") {
  Signature sig{{"a"}, {"f"}, {"p"}};
  std::vector<FormulaPtr> axioms = cet_axioms(sig, 2);
  std::vector<std::string> printed;
  for (const auto& f : axioms) printed.push_back(print_formula(f, sig));
  CHECK(printed == std::vector<std::string>{
                       "forall X. f(X) != a",
                       "forall X, Y. f(X) = f(Y) -> X = Y",
                       "forall X. f(X) != X",
                       "forall X. f(f(X)) != X",
                   });
}

TEST_CASE("distinct functions are separated") {
  Signature sig{{}, {"f", "g"}, {}};
  std::vector<FormulaPtr> axioms = cet_axioms(sig, 1);
  std::vector<std::string> printed;
  for (const auto& f : axioms) printed.push_back(print_formula(f, sig));
  CHECK(std::find(printed.begin(), printed.end(), "forall X, Y. f(X) != g(Y)") != printed.end());
  CHECK(std::find(printed.begin(), printed.end(), "forall X. g(f(X)) != X") == printed.end());
}

TEST_CASE("no functions means only constant distinctness") {
  Signature sig{{"a", "b", "c"}, {}, {}};
  std::vector<FormulaPtr> axioms = cet_axioms(sig, 5);
  std::vector<std::string> printed;
  for (const auto& f : axioms) printed.push_back(print_formula(f, sig));
  CHECK(printed == std::vector<std::string>{"a != b", "a != c", "b != c"});
}

TEST_CASE("axiom lists grow monotonically with depth") {
  for (const Signature& sig : {Signature{{"a"}, {"f"}, {}},
                               Signature{{"a", "b"}, {"f", "g"}, {"p"}},
                               Signature{{}, {"f", "g", "h"}, {}}}) {
    for (int d = 1; d <= 3; ++d) {
      std::vector<FormulaPtr> small = cet_axioms(sig, d);
      std::vector<FormulaPtr> large = cet_axioms(sig, d + 1);
      REQUIRE(small.size() <= large.size());
      for (size_t i = 0; i < small.size(); ++i) REQUIRE(equal(small[i], large[i]));
    }
  }
  CHECK_THROWS_AS(cet_axioms(Signature{}, 0), Error);
}

TEST_CASE("every predicate gets exactly one definition on random programs") {
  std::mt19937 rng(7);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  Signature sig{{"a", "b"}, {"f", "g"}, {"p", "q", "r"}};
  for (int round = 0; round < 50; ++round) {
    Program prog;
    int clauses = pick(6);
    for (int c = 0; c < clauses; ++c) {
      Clause clause;
      auto term = [&]() -> TermPtr {
        TermPtr t = pick(2) ? TermPtr(Term::variable("V" + std::to_string(pick(3))))
                            : Term::constant(pick(2));
        for (int d = pick(3); d > 0; --d) t = Term::apply(pick(2), t);
        return t;
      };
      clause.head = Literal{true, pick(3), term()};
      for (int b = pick(3); b > 0; --b) clause.body.push_back(Literal{pick(2) == 0, pick(3), term()});
      prog.clauses.push_back(clause);
    }
    CompletionSet defs = completion_defs(prog, sig);
    REQUIRE(defs.definitions.size() == 3);
    for (const auto& def : defs.definitions) {
      REQUIRE(def->kind == Formula::Kind::Forall);
      REQUIRE(is_closed(def));
      validate(def, sig, Closedness::Required);
    }
    // The head variable occurs in no clause of the source program.
    for (const auto& c : prog.clauses)
      for (const auto& v : clause_variables(c)) REQUIRE(v != defs.head_var);
  }
}
