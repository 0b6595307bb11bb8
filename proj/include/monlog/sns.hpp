#ifndef MONLOG_SNS_HPP
#define MONLOG_SNS_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "monlog/simpleform.hpp"
#include "monlog/syntax.hpp"

namespace monlog {

// One of the 2n+1 successors: s0 (the root successor), s1..sn (the function
// successors), b1..bn (their inverses). index 0 is always the plain s0.
struct SuccLetter {
  int index = 0;
  bool bar = false;

  bool operator==(const SuccLetter&) const = default;

  std::string name() const {
    return (bar ? "b" : "s") + std::to_string(index);
  }

  // Dense id 0..2n used by the automaton alphabet: s0, s1..sn, b1..bn.
  int flat(int n) const { return bar ? n + index : index; }
};

// Shape of the successor logic induced by a first-order signature: 2n+1
// successor letters, the domain set variable X and predicate set variables
// Y1..Ym.
struct SnSSignature {
  int k = 0;  // constants
  int n = 0;  // functions
  int m = 0;  // predicates

  static SnSSignature from(const Signature& sig) {
    return {sig.num_constants(), sig.num_functions(), sig.num_predicates()};
  }

  int num_letters() const { return 2 * n + 1; }

  std::string set_var(int l) const { return "Y" + std::to_string(l + 1); }
  static constexpr const char* domain_var = "X";
};

struct SnSTerm;
using SnSTermPtr = std::shared_ptr<const SnSTerm>;

struct SnSTerm {
  enum class Kind { Lambda, ObjVar, Succ };

  Kind kind = Kind::Lambda;
  std::string var;
  SuccLetter letter;
  SnSTermPtr arg;

  static SnSTermPtr lambda();
  static SnSTermPtr objvar(std::string name);
  static SnSTermPtr succ(SuccLetter letter, SnSTermPtr arg);
};

bool equal(const SnSTermPtr& a, const SnSTermPtr& b);

struct SnSFormula;
using SnSFormulaPtr = std::shared_ptr<const SnSFormula>;

// Successor-logic formula. And/Or are n-ary. The factories and_of/or_of keep
// their children verbatim; conj/disj below additionally drop True/False
// units and unwrap singletons (used when instantiating big operators).
struct SnSFormula {
  enum class Kind {
    True,
    False,
    Eq,       // t1 = t2
    Member,   // t1 in set var
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    ExistsObj,
    ForallObj,
    ExistsSet,
    ForallSet,
  };

  Kind kind = Kind::True;
  SnSTermPtr t1, t2;
  std::string var;  // Member: the set variable; quantifiers: the bound name
  std::vector<SnSFormulaPtr> kids;

  static SnSFormulaPtr truth();
  static SnSFormulaPtr falsity();
  static SnSFormulaPtr eq(SnSTermPtr a, SnSTermPtr b);
  static SnSFormulaPtr member(SnSTermPtr t, std::string set_var);
  static SnSFormulaPtr negate(SnSFormulaPtr f);
  static SnSFormulaPtr and_of(std::vector<SnSFormulaPtr> kids);
  static SnSFormulaPtr or_of(std::vector<SnSFormulaPtr> kids);
  static SnSFormulaPtr xor_of(SnSFormulaPtr a, SnSFormulaPtr b);
  static SnSFormulaPtr implies(SnSFormulaPtr a, SnSFormulaPtr b);
  static SnSFormulaPtr iff(SnSFormulaPtr a, SnSFormulaPtr b);
  static SnSFormulaPtr exists_obj(std::string var, SnSFormulaPtr body);
  static SnSFormulaPtr forall_obj(std::string var, SnSFormulaPtr body);
  static SnSFormulaPtr exists_set(std::string var, SnSFormulaPtr body);
  static SnSFormulaPtr forall_set(std::string var, SnSFormulaPtr body);
};

bool equal(const SnSFormulaPtr& a, const SnSFormulaPtr& b);

// Big conjunction/disjunction: True/False units dropped, empty list is
// True/False, a single survivor is returned unwrapped.
SnSFormulaPtr sns_conj(std::vector<SnSFormulaPtr> kids);
SnSFormulaPtr sns_disj(std::vector<SnSFormulaPtr> kids);

std::set<std::string> sns_free_object_vars(const SnSFormulaPtr& f);
std::set<std::string> sns_free_set_vars(const SnSFormulaPtr& f);

// The address of the j-th constant (0-based index): f_0^(j+1) applied to the
// empty word.
SnSTermPtr constant_address(int index);

// The five clause groups of domain(X), in display order: root membership,
// the successor/inverse exclusive-or, root non-invertibility, successor
// non-invertibility along X, and single-parenthood. Groups that are vacuous
// for the signature (no constants, or no functions) collapse to True.
std::vector<SnSFormulaPtr> build_domain_parts(const Signature& sig);

// Conjunction of the five parts with True parts dropped.
SnSFormulaPtr build_domain(const Signature& sig);

// The Mod translation of a closed simple normalized formula: existentials
// are relativized to X, p_l(t) becomes t in Y_l, constants become their
// addresses, and y = f_i(x) becomes y = f_i(x) or x = f_i^{-1}(y). Bound
// object variables are renamed x0, x1, ... in binder preorder.
SnSFormulaPtr build_mod(const FormulaPtr& f, const Signature& sig);

// The closed sentence exists X Y1..Ym (domain(X) and Yl <= X and Mod(F'))
// with F' = normalize(flatten(F)); F itself must be closed.
SnSFormulaPtr assemble_sentence(const FormulaPtr& f, const Signature& sig);

// Deterministic S-expression text; parse_sns(emit(f)) is structurally f.
std::string emit(const SnSFormulaPtr& f);
std::string emit(const SnSTermPtr& t);
SnSFormulaPtr parse_sns(const std::string& text);

}  // namespace monlog

#endif  // MONLOG_SNS_HPP
