#include "monlog/simpleform.hpp"

namespace monlog {

namespace {

bool term_has_function(const TermPtr& t) {
  return t && t->kind == Term::Kind::Apply;
}

bool atom_is_canonical(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Eq && f->t1->kind == Term::Kind::Variable &&
         f->t2->kind == Term::Kind::Apply && f->t2->arg->kind == Term::Kind::Variable;
}

bool is_simple_atom(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Atom) return !term_has_function(f->t1);
  // Equality: either function-free or exactly y = f(x).
  if (!term_has_function(f->t1) && !term_has_function(f->t2)) return true;
  return atom_is_canonical(f);
}

bool check_simple(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return is_simple_atom(f);
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return check_simple(f->lhs);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return check_simple(f->lhs) && check_simple(f->rhs);
  }
  return false;
}

// Replaces the innermost application of a linear term chain by the variable
// y, reporting the removed function symbol and its (function-free) argument.
TermPtr strip_innermost(const TermPtr& t, const std::string& y, int& fn, TermPtr& base) {
  if (t->arg->kind != Term::Kind::Apply) {
    fn = t->symbol;
    base = t->arg;
    return Term::variable(y);
  }
  return Term::apply(t->symbol, strip_innermost(t->arg, y, fn, base));
}

// Hoists every function occurrence out of a violating atom, producing the
// nested exists x, y (x = t & y = f(x) & residual) chain.
FormulaPtr hoist_all(FormulaPtr atom, NameSupply& fresh) {
  TermPtr* target = nullptr;
  TermPtr t1 = atom->t1, t2 = atom->t2;
  if (term_has_function(t1)) target = &t1;
  else if (term_has_function(t2)) target = &t2;
  if (!target) return atom;

  std::string x = fresh.fresh();
  std::string y = fresh.fresh();
  int fn = -1;
  TermPtr base;
  *target = strip_innermost(*target, y, fn, base);

  FormulaPtr residual = atom->kind == Formula::Kind::Atom ? Formula::atom(atom->pred, t1)
                                                          : Formula::eq(t1, t2);
  FormulaPtr body = Formula::conj(
      Formula::eq(Term::variable(x), base),
      Formula::conj(Formula::eq(Term::variable(y), Term::apply(fn, Term::variable(x))),
                    hoist_all(residual, fresh)));
  return Formula::exists(x, Formula::exists(y, body));
}

FormulaPtr flatten_rec(const FormulaPtr& f, NameSupply& fresh) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      if (is_simple_atom(f)) return f;
      return hoist_all(f, fresh);
    case Formula::Kind::Not:
      return Formula::negate(flatten_rec(f->lhs, fresh));
    case Formula::Kind::And:
      return Formula::conj(flatten_rec(f->lhs, fresh), flatten_rec(f->rhs, fresh));
    case Formula::Kind::Or:
      return Formula::disj(flatten_rec(f->lhs, fresh), flatten_rec(f->rhs, fresh));
    case Formula::Kind::Implies:
      return Formula::implies(flatten_rec(f->lhs, fresh), flatten_rec(f->rhs, fresh));
    case Formula::Kind::Iff:
      return Formula::iff(flatten_rec(f->lhs, fresh), flatten_rec(f->rhs, fresh));
    case Formula::Kind::Exists:
      return Formula::exists(f->var, flatten_rec(f->lhs, fresh));
    case Formula::Kind::Forall:
      return Formula::forall(f->var, flatten_rec(f->lhs, fresh));
  }
  return f;
}

}  // namespace

bool is_simple(const FormulaPtr& f) { return check_simple(f); }

bool is_normalized(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return true;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
      return is_normalized(f->lhs);
    case Formula::Kind::Or:
      return is_normalized(f->lhs) && is_normalized(f->rhs);
    default:
      return false;
  }
}

SimpleFormula SimpleFormula::certify(FormulaPtr f) {
  if (!check_simple(f))
    throw Error(ErrorCode::NotSimple, "formula has a function occurrence outside y = f(x)");
  return SimpleFormula(std::move(f));
}

SimpleFormula flatten(const FormulaPtr& f, NameSupply& fresh) {
  return SimpleFormula::certify(flatten_rec(f, fresh));
}

SimpleFormula flatten(const FormulaPtr& f) {
  NameSupply fresh("_v", all_variables(f));
  return flatten(f, fresh);
}

FormulaPtr normalize(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return f;
    case Formula::Kind::Not:
      return Formula::negate(normalize(f->lhs));
    case Formula::Kind::Or:
      return Formula::disj(normalize(f->lhs), normalize(f->rhs));
    case Formula::Kind::And:
      return Formula::negate(Formula::disj(Formula::negate(normalize(f->lhs)),
                                           Formula::negate(normalize(f->rhs))));
    case Formula::Kind::Implies:
      return Formula::disj(Formula::negate(normalize(f->lhs)), normalize(f->rhs));
    case Formula::Kind::Iff: {
      // (A -> B) & (B -> A) with -> and & eliminated.
      FormulaPtr a = normalize(f->lhs), b = normalize(f->rhs);
      FormulaPtr ab = Formula::disj(Formula::negate(a), b);
      FormulaPtr ba = Formula::disj(Formula::negate(b), a);
      return Formula::negate(Formula::disj(Formula::negate(ab), Formula::negate(ba)));
    }
    case Formula::Kind::Exists:
      return Formula::exists(f->var, normalize(f->lhs));
    case Formula::Kind::Forall:
      return Formula::negate(Formula::exists(f->var, Formula::negate(normalize(f->lhs))));
  }
  return f;
}

}  // namespace monlog
