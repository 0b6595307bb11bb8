#ifndef MONLOG_CHECKER_HPP
#define MONLOG_CHECKER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monlog/automata.hpp"
#include "monlog/completion.hpp"
#include "monlog/models.hpp"
#include "monlog/sns.hpp"
#include "monlog/syntax.hpp"

namespace monlog {

// Assignment of regular sets to the set variables of a successor-logic
// formula: the domain X plus Y1..Ym for the predicates. make() clips every
// predicate set to the domain, so the invariant P_l <= D holds by
// construction.
struct SetEnv {
  int n = 0;
  std::map<std::string, RegularSet> sets;

  static SetEnv make(const RegularSet& d, const std::vector<RegularSet>& preds);

  const RegularSet& lookup(const std::string& var) const;  // throws UnboundSetVariable
};

// Search-space limits for the bounded model search. All fields nonnegative.
// max_extra_roots caps added root copies; max_extra_nonroots caps the total
// number of added non-root components; max_multiplicity caps the count of
// each distinct non-root shape; granularity bounds the depth resolution of
// the candidate colorings.
struct Bounds {
  int max_extra_roots = 1;
  int max_extra_nonroots = 1;
  int max_prefix = 2;
  int max_period = 2;
  int max_multiplicity = 1;
  int granularity = 2;
  double budget_seconds = 60.0;

  void check() const;  // throws PreconditionViolation on negative fields
};

// Outcome of the bounded search. The engine is one-sided: it either exhibits
// a model or reports that none was found inside the bounds, and never claims
// anything stronger. A returned witness has been re-verified against the
// input sentence before the verdict is handed out.
struct Verdict {
  bool sat = false;
  std::optional<ModelPresentation> witness;
  Bounds bounds;                 // echoed from the request
  long long candidates = 0;      // colorings evaluated
  bool budget_exhausted = false;
  std::string frontier;          // where the search stopped, when out of budget
};

// Compiles a first-order successor-logic formula (object quantifiers only)
// into the automaton of its free-object-variable relation; closed formulas
// come out as 0-track booleans. Ground terms are evaluated to addresses up
// front; remaining atoms are broken into single-letter successor steps with
// internal tracks that are projected away. Throws on set quantifiers and on
// set variables missing from the environment.
SyncAutomaton eval_fo(const SnSFormulaPtr& f, const SetEnv& env);

// Whether d satisfies the five-clause domain condition for the signature.
bool check_domain(const RegularSet& d, const Signature& sig);

// Truth of the closed first-order formula f in the structure presented by m:
// embeds the domain, reads the colorings, rewrites f through the flatten /
// normalize / relational-translation pipeline and evaluates the result.
bool eval_sentence(const ModelPresentation& m, const FormulaPtr& f);

// Bounded satisfiability search: enumerates presentations within b in a
// fixed canonical order (component multisets by size, then colorings as cell
// unions by colored-cell count) and returns the first witness satisfying f.
// Identical inputs yield identical verdicts and witnesses.
Verdict solve(const FormulaPtr& f, const Signature& sig, const Bounds& b);

// The query as a closed formula: the conjunction of its literals,
// existentially closed over the free variables in name order.
FormulaPtr query_formula(const Query& q);

// Countermodel reports for comp(P) |= Q and comp(P) |= ~Q. A SAT verdict in
// against_query is a model of the completion falsifying Q; in
// against_negation, one satisfying Q. A non-SAT verdict is consistent with
// the entailment but proves nothing.
struct EntailReport {
  Verdict against_query;
  Verdict against_negation;
};

EntailReport entail(const Program& p, const Query& q, const Signature& sig,
                    const Bounds& b);

}  // namespace monlog

#endif  // MONLOG_CHECKER_HPP
