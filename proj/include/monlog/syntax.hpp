#ifndef MONLOG_SYNTAX_HPP
#define MONLOG_SYNTAX_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monlog/errors.hpp"

namespace monlog {

// The monadic first-order language: constants c_1..c_k, unary functions
// f_1..f_n, unary predicates p_1..p_m. Order is significant: the position of
// a constant fixes its root address and the position of a function fixes its
// successor letters in the translation.
struct Signature {
  std::vector<std::string> constants;
  std::vector<std::string> functions;
  std::vector<std::string> predicates;

  int num_constants() const { return static_cast<int>(constants.size()); }
  int num_functions() const { return static_cast<int>(functions.size()); }
  int num_predicates() const { return static_cast<int>(predicates.size()); }

  std::optional<int> constant_index(const std::string& name) const;
  std::optional<int> function_index(const std::string& name) const;
  std::optional<int> predicate_index(const std::string& name) const;

  // All names pairwise distinct across the three lists; identifiers well formed.
  void check() const;

  bool operator==(const Signature&) const = default;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Monadic term: a chain of unary function applications over a variable or a
// constant. Immutable; shared freely.
struct Term {
  enum class Kind { Variable, Constant, Apply };

  Kind kind;
  std::string var;   // Variable
  int symbol = -1;   // Constant: index into Signature::constants;
                     // Apply: index into Signature::functions
  TermPtr arg;       // Apply

  static TermPtr variable(std::string name);
  static TermPtr constant(int index);
  static TermPtr apply(int function, TermPtr argument);
};

bool equal(const TermPtr& a, const TermPtr& b);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// First-order monadic formula with equality. Binary connectives are built
// right-nested by the parser ("A & B & C" is And(A, And(B, C))).
struct Formula {
  enum class Kind {
    True,
    False,
    Atom,     // pred(t1)
    Eq,       // t1 = t2
    Not,      // ~lhs
    And,
    Or,
    Implies,
    Iff,
    Exists,   // exists var. lhs
    Forall,
  };

  Kind kind;
  int pred = -1;
  TermPtr t1, t2;
  FormulaPtr lhs, rhs;
  std::string var;

  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr atom(int pred, TermPtr t);
  static FormulaPtr eq(TermPtr a, TermPtr b);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr forall(std::string var, FormulaPtr body);
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Right-nested conjunction/disjunction of a list; empty list gives True/False.
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);
FormulaPtr disj_all(const std::vector<FormulaPtr>& fs);

// Body literal of a clause or query: a possibly negated predicate atom.
struct Literal {
  bool positive = true;
  int pred = -1;
  TermPtr term;

  bool operator==(const Literal& other) const {
    return positive == other.positive && pred == other.pred && equal(term, other.term);
  }
};

struct Clause {
  Literal head;  // always positive
  std::vector<Literal> body;
};

struct Program {
  std::vector<Clause> clauses;
};

// Implicitly existentially closed conjunction of literals; nonempty.
struct Query {
  std::vector<Literal> literals;
};

bool is_definite(const Program& p);
bool is_definite(const Query& q);

// Free and bound variable bookkeeping.
std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> all_variables(const FormulaPtr& f);
std::set<std::string> term_variables(const TermPtr& t);
bool is_closed(const FormulaPtr& f);

// Deterministic fresh-name supply. Produces prefix0, prefix1, ... skipping any
// name in the avoid set, so capture is impossible regardless of user naming.
class NameSupply {
 public:
  explicit NameSupply(std::string prefix, std::set<std::string> avoid = {}, int start = 0)
      : prefix_(std::move(prefix)), avoid_(std::move(avoid)), next_(start) {}

  std::string fresh();
  void also_avoid(const std::string& name) { avoid_.insert(name); }

 private:
  std::string prefix_;
  std::set<std::string> avoid_;
  int next_;
};

struct ParsedProgram {
  Program program;
  Signature signature;
  bool signature_inferred = false;
};

// Parses program text. When `sig` is given every symbol must belong to it;
// otherwise the signature is inferred from occurrences in first-occurrence
// order (directives, when present, fix symbols and their order up front).
ParsedProgram parse_program(const std::string& text,
                            const std::optional<Signature>& sig = std::nullopt);

FormulaPtr parse_formula(const std::string& text, const Signature& sig);

Query parse_query(const std::string& text, const Signature& sig);

// Parses a file of directives only ("#constant a." etc.), fixing a language.
Signature parse_language(const std::string& text);

std::string print_term(const TermPtr& t, const Signature& sig);
std::string print_formula(const FormulaPtr& f, const Signature& sig);
std::string print_clause(const Clause& c, const Signature& sig);
std::string print_program(const Program& p, const Signature& sig);
std::string print_query(const Query& q, const Signature& sig);

enum class Closedness { Required, NotRequired };

// Monadicity is structural in the ASTs; validation checks symbol indices
// against the signature and, when required, closedness.
void validate(const FormulaPtr& f, const Signature& sig,
              Closedness closedness = Closedness::NotRequired);
void validate(const Program& p, const Signature& sig);
void validate(const Query& q, const Signature& sig);

}  // namespace monlog

#endif  // MONLOG_SYNTAX_HPP
