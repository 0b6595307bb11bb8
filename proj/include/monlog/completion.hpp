#ifndef MONLOG_COMPLETION_HPP
#define MONLOG_COMPLETION_HPP

#include "monlog/syntax.hpp"

namespace monlog {

// A clause p(t) :- L1, ..., Lm rewritten as p(x) <- E with
// E = exists y1..yk (x = t & L1 & ... & Lm), the yi being the clause's own
// variables. The head variable x is fresh for the clause.
struct GeneralForm {
  int pred = -1;
  std::string head_var;
  FormulaPtr body;  // the exists-closed right-hand side E
};

// One definition per predicate of the signature:
//   forall x (p(x) <-> E1 | ... | Ek)
// with the disjuncts in program clause order; a predicate with no clauses
// gets forall x (p(x) <-> false).
struct CompletionSet {
  std::string head_var;
  std::vector<FormulaPtr> definitions;  // indexed by predicate

  // Right-nested conjunction of all definitions (True when m = 0).
  FormulaPtr conjunction() const { return conj_all(definitions); }
};

// The head variable must be fresh for the clause; callers hand in a supply
// seeded to avoid every variable of the surrounding program so that all
// general forms of one program share a head variable.
GeneralForm general_form(const Clause& c, NameSupply& fresh);

CompletionSet completion_defs(const Program& p, const Signature& sig);

// Finite-depth instantiation of the freeness axioms: constant distinctness,
// function/constant and function/function separation, injectivity, and the
// acyclicity instances forall X (t(X) != X) for nonempty function words t of
// length <= depth. Equality axioms are omitted; = is identity throughout.
// Monotone: the result for depth d is a prefix of the result for d+1.
std::vector<FormulaPtr> cet_axioms(const Signature& sig, int depth);

// Variables of a clause in first-occurrence order (head first, then body).
std::vector<std::string> clause_variables(const Clause& c);

}  // namespace monlog

#endif  // MONLOG_COMPLETION_HPP
