#include "monlog/completion.hpp"

#include <algorithm>

namespace monlog {

namespace {
void collect_term_vars(const TermPtr& t, std::vector<std::string>& out) {
  const Term* cur = t.get();
  while (cur) {
    if (cur->kind == Term::Kind::Variable) {
      if (std::find(out.begin(), out.end(), cur->var) == out.end()) out.push_back(cur->var);
      return;
    }
    if (cur->kind == Term::Kind::Constant) return;
    cur = cur->arg.get();
  }
}
}  // namespace

std::vector<std::string> clause_variables(const Clause& c) {
  std::vector<std::string> vars;
  collect_term_vars(c.head.term, vars);
  for (const auto& l : c.body) collect_term_vars(l.term, vars);
  return vars;
}

GeneralForm general_form(const Clause& c, NameSupply& fresh) {
  std::vector<std::string> vars = clause_variables(c);
  for (const auto& v : vars) fresh.also_avoid(v);

  GeneralForm out;
  out.pred = c.head.pred;
  out.head_var = fresh.fresh();

  std::vector<FormulaPtr> parts;
  parts.push_back(Formula::eq(Term::variable(out.head_var), c.head.term));
  for (const auto& l : c.body) {
    FormulaPtr atom = Formula::atom(l.pred, l.term);
    parts.push_back(l.positive ? atom : Formula::negate(atom));
  }
  FormulaPtr body = conj_all(parts);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
  out.body = body;
  return out;
}

CompletionSet completion_defs(const Program& p, const Signature& sig) {
  std::set<std::string> avoid;
  for (const auto& c : p.clauses)
    for (const auto& v : clause_variables(c)) avoid.insert(v);

  // One shared head variable X1 (or the first Xi unused in the program).
  NameSupply supply("X", avoid, 1);
  std::string head_var = supply.fresh();

  std::vector<std::vector<FormulaPtr>> disjuncts(sig.num_predicates());
  for (const auto& c : p.clauses) {
    NameSupply per_clause("X", avoid, 1);
    GeneralForm gf = general_form(c, per_clause);
    disjuncts[gf.pred].push_back(gf.body);
  }

  CompletionSet out;
  out.head_var = head_var;
  for (int l = 0; l < sig.num_predicates(); ++l) {
    FormulaPtr rhs = disj_all(disjuncts[l]);
    FormulaPtr def = Formula::forall(
        head_var, Formula::iff(Formula::atom(l, Term::variable(head_var)), rhs));
    out.definitions.push_back(def);
  }
  return out;
}

std::vector<FormulaPtr> cet_axioms(const Signature& sig, int depth) {
  if (depth < 1) throw Error(ErrorCode::PreconditionViolation, "depth must be at least 1");
  std::vector<FormulaPtr> out;
  const int k = sig.num_constants(), n = sig.num_functions();
  TermPtr X = Term::variable("X"), Y = Term::variable("Y");

  for (int j = 0; j < k; ++j)
    for (int j2 = j + 1; j2 < k; ++j2)
      out.push_back(Formula::negate(Formula::eq(Term::constant(j), Term::constant(j2))));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j)
      out.push_back(Formula::forall(
          "X", Formula::negate(Formula::eq(Term::apply(i, X), Term::constant(j)))));

  for (int i = 0; i < n; ++i)
    for (int i2 = i + 1; i2 < n; ++i2)
      out.push_back(Formula::forall(
          "X", Formula::forall(
                   "Y", Formula::negate(Formula::eq(Term::apply(i, X), Term::apply(i2, Y))))));

  for (int i = 0; i < n; ++i)
    out.push_back(Formula::forall(
        "X", Formula::forall("Y", Formula::implies(
                                      Formula::eq(Term::apply(i, X), Term::apply(i, Y)),
                                      Formula::eq(X, Y)))));

  // Acyclicity instances, shortest words first so longer depths only append.
  std::vector<std::vector<int>> words = {{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int i = 0; i < n; ++i) {
        auto w2 = w;
        w2.push_back(i);
        next.push_back(w2);
      }
    for (const auto& w : next) {
      TermPtr t = X;
      for (auto it = w.rbegin(); it != w.rend(); ++it) t = Term::apply(*it, t);
      out.push_back(Formula::forall("X", Formula::negate(Formula::eq(t, X))));
    }
    words = std::move(next);
  }
  return out;
}

}  // namespace monlog
