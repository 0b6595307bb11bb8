#ifndef MONLOG_SIMPLEFORM_HPP
#define MONLOG_SIMPLEFORM_HPP

#include "monlog/syntax.hpp"

namespace monlog {

// True iff every function occurrence sits inside an atom of the exact shape
// y = f(x) with both sides variables. Constants are fine anywhere.
bool is_simple(const FormulaPtr& f);

// True iff the formula uses only atoms, ~, | and exists.
bool is_normalized(const FormulaPtr& f);

// A formula together with a checked simplicity certificate: construction via
// certify is the only way in, so holding one proves is_simple.
class SimpleFormula {
 public:
  static SimpleFormula certify(FormulaPtr f);

  const FormulaPtr& formula() const { return formula_; }

 private:
  explicit SimpleFormula(FormulaPtr f) : formula_(std::move(f)) {}
  FormulaPtr formula_;
};

// Rewrites every violating atom A(f(t)) into exists x, y (x = t & y = f(x) &
// A(y)), innermost occurrence first, left equation side before right. Atoms
// already of the shape y = f(x) are kept; any other atom containing a
// function has all its occurrences hoisted. The result is logically
// equivalent to the input over every structure.
SimpleFormula flatten(const FormulaPtr& f, NameSupply& fresh);

// Convenience wrapper drawing fresh names _v0, _v1, ... avoiding every
// variable of f.
SimpleFormula flatten(const FormulaPtr& f);

// Eliminates &, ->, <-> and forall by the usual dualities, leaving the
// {~, |, exists} basis. Preserves simplicity and logical equivalence.
FormulaPtr normalize(const FormulaPtr& f);

}  // namespace monlog

#endif  // MONLOG_SIMPLEFORM_HPP
