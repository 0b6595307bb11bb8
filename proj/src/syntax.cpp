#include "monlog/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace monlog {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::ArityViolation: return "arity-violation";
    case ErrorCode::UnknownSymbol: return "unknown-symbol";
    case ErrorCode::ForeignSymbol: return "foreign-symbol";
    case ErrorCode::OpenFormula: return "open-formula";
    case ErrorCode::NotSimple: return "not-simple";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::NotClosed: return "not-closed";
    case ErrorCode::UnboundSetVariable: return "unbound-set-variable";
    case ErrorCode::SecondOrderQuantifier: return "second-order-quantifier";
    case ErrorCode::UnboundTrack: return "unbound-track";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UndefinedImage: return "undefined-image";
    case ErrorCode::PreconditionViolation: return "precondition-violation";
    case ErrorCode::InvalidPresentation: return "invalid-presentation";
    case ErrorCode::InternalLimit: return "internal-limit";
  }
  return "unknown";
}

namespace {

template <typename T>
std::optional<int> index_of(const std::vector<T>& xs, const T& x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end()) return std::nullopt;
  return static_cast<int>(it - xs.begin());
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Variables start with an uppercase letter or underscore; everything else
// lowercase names a constant, function, or predicate.
bool is_variable_name(const std::string& s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

}  // namespace

std::optional<int> Signature::constant_index(const std::string& name) const {
  return index_of(constants, name);
}
std::optional<int> Signature::function_index(const std::string& name) const {
  return index_of(functions, name);
}
std::optional<int> Signature::predicate_index(const std::string& name) const {
  return index_of(predicates, name);
}

void Signature::check() const {
  std::set<std::string> seen;
  auto well_formed = [](const std::string& name) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), is_ident_char);
  };
  auto visit = [&](const std::vector<std::string>& names, const char* role) {
    for (const auto& name : names) {
      if (!well_formed(name))
        throw Error(ErrorCode::UnknownSymbol,
                    std::string(role) + " name '" + name + "' must start with a lowercase letter");
      if (!seen.insert(name).second)
        throw Error(ErrorCode::UnknownSymbol, "duplicate symbol '" + name + "' in signature");
    }
  };
  visit(constants, "constant");
  visit(functions, "function");
  visit(predicates, "predicate");
}

TermPtr Term::variable(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Variable;
  t->var = std::move(name);
  return t;
}

TermPtr Term::constant(int index) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Constant;
  t->symbol = index;
  return t;
}

TermPtr Term::apply(int function, TermPtr argument) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Apply;
  t->symbol = function;
  t->arg = std::move(argument);
  return t;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Variable: return a->var == b->var;
    case Term::Kind::Constant: return a->symbol == b->symbol;
    case Term::Kind::Apply: return a->symbol == b->symbol && equal(a->arg, b->arg);
  }
  return false;
}

namespace {
std::shared_ptr<Formula> mk_mut(Formula::Kind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}
}  // namespace

FormulaPtr Formula::truth() { return mk_mut(Kind::True); }
FormulaPtr Formula::falsity() { return mk_mut(Kind::False); }

FormulaPtr Formula::atom(int pred, TermPtr t) {
  auto f = mk_mut(Kind::Atom);
  f->pred = pred;
  f->t1 = std::move(t);
  return f;
}

FormulaPtr Formula::eq(TermPtr a, TermPtr b) {
  auto f = mk_mut(Kind::Eq);
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

FormulaPtr Formula::negate(FormulaPtr f) {
  auto g = mk_mut(Kind::Not);
  g->lhs = std::move(f);
  return g;
}

namespace {
FormulaPtr binary(Formula::Kind kind, FormulaPtr a, FormulaPtr b) {
  auto f = mk_mut(kind);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
FormulaPtr quantifier(Formula::Kind kind, std::string var, FormulaPtr body) {
  auto f = mk_mut(kind);
  f->var = std::move(var);
  f->lhs = std::move(body);
  return f;
}
}  // namespace

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) { return binary(Kind::Iff, std::move(a), std::move(b)); }
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  return quantifier(Kind::Exists, std::move(var), std::move(body));
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  return quantifier(Kind::Forall, std::move(var), std::move(body));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      return a->pred == b->pred && equal(a->t1, b->t1);
    case Formula::Kind::Eq:
      return equal(a->t1, b->t1) && equal(a->t2, b->t2);
    case Formula::Kind::Not:
      return equal(a->lhs, b->lhs);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return a->var == b->var && equal(a->lhs, b->lhs);
  }
  return false;
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::truth();
  FormulaPtr acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = Formula::conj(*it, acc);
  return acc;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::falsity();
  FormulaPtr acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = Formula::disj(*it, acc);
  return acc;
}

bool is_definite(const Program& p) {
  for (const auto& c : p.clauses)
    for (const auto& l : c.body)
      if (!l.positive) return false;
  return true;
}

bool is_definite(const Query& q) {
  for (const auto& l : q.literals)
    if (!l.positive) return false;
  return true;
}

std::set<std::string> term_variables(const TermPtr& t) {
  std::set<std::string> out;
  const Term* cur = t.get();
  while (cur) {
    if (cur->kind == Term::Kind::Variable) {
      out.insert(cur->var);
      break;
    }
    if (cur->kind == Term::Kind::Constant) break;
    cur = cur->arg.get();
  }
  return out;
}

namespace {
void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      for (const TermPtr& t : {f->t1, f->t2})
        for (const auto& v : t ? term_variables(t) : std::set<std::string>{})
          if (!bound.count(v)) out.insert(v);
      return;
    case Formula::Kind::Not:
      free_vars_rec(f->lhs, bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars_rec(f->lhs, bound, out);
      free_vars_rec(f->rhs, bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool inserted = bound.insert(f->var).second;
      free_vars_rec(f->lhs, bound, out);
      if (inserted) bound.erase(f->var);
      return;
    }
  }
}

void all_vars_rec(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  for (const TermPtr& t : {f->t1, f->t2})
    if (t)
      for (const auto& v : term_variables(t)) out.insert(v);
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) out.insert(f->var);
  all_vars_rec(f->lhs, out);
  all_vars_rec(f->rhs, out);
}
}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_variables(f).empty(); }

std::string NameSupply::fresh() {
  for (;;) {
    std::string candidate = prefix_ + std::to_string(next_++);
    if (!avoid_.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident,      // lowercase identifier
  Var,        // uppercase/underscore identifier
  Directive,  // #constant / #function / #predicate
  LParen,
  RParen,
  Comma,
  Dot,
  Turnstile,   // :-
  QueryMark,   // ?-
  Tilde,
  Amp,
  Pipe,
  Arrow,       // ->
  DArrow,      // <->
  Equals,
  NotEquals,
  KwExists,
  KwForall,
  KwNot,
  KwTrue,
  KwFalse,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws_and_comments();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      int line = line_, col = col_;
      char c = text_[pos_];
      if (is_ident_start(c)) {
        std::string word;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) word.push_back(get());
        Tok kind;
        if (word == "exists") kind = Tok::KwExists;
        else if (word == "forall") kind = Tok::KwForall;
        else if (word == "not") kind = Tok::KwNot;
        else if (word == "true") kind = Tok::KwTrue;
        else if (word == "false") kind = Tok::KwFalse;
        else kind = is_variable_name(word) ? Tok::Var : Tok::Ident;
        out.push_back({kind, word, line, col});
        continue;
      }
      switch (c) {
        case '#': {
          get();
          std::string word;
          while (pos_ < text_.size() && is_ident_char(text_[pos_])) word.push_back(get());
          if (word != "constant" && word != "function" && word != "predicate")
            throw ParseError("unknown directive '#" + word + "'", line, col);
          out.push_back({Tok::Directive, word, line, col});
          break;
        }
        case '(': get(); out.push_back({Tok::LParen, "(", line, col}); break;
        case ')': get(); out.push_back({Tok::RParen, ")", line, col}); break;
        case ',': get(); out.push_back({Tok::Comma, ",", line, col}); break;
        case '.': get(); out.push_back({Tok::Dot, ".", line, col}); break;
        case '~': get(); out.push_back({Tok::Tilde, "~", line, col}); break;
        case '&': get(); out.push_back({Tok::Amp, "&", line, col}); break;
        case '|': get(); out.push_back({Tok::Pipe, "|", line, col}); break;
        case '=': get(); out.push_back({Tok::Equals, "=", line, col}); break;
        case ':':
          get();
          expect('-', line, col);
          out.push_back({Tok::Turnstile, ":-", line, col});
          break;
        case '?':
          get();
          expect('-', line, col);
          out.push_back({Tok::QueryMark, "?-", line, col});
          break;
        case '!':
          get();
          expect('=', line, col);
          out.push_back({Tok::NotEquals, "!=", line, col});
          break;
        case '-':
          get();
          expect('>', line, col);
          out.push_back({Tok::Arrow, "->", line, col});
          break;
        case '<':
          get();
          expect('-', line, col);
          expect('>', line, col);
          out.push_back({Tok::DArrow, "<->", line, col});
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
  }

 private:
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c, int line, int col) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", line, col);
    get();
  }

  void skip_ws_and_comments() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) get();
      if (pos_ < text_.size() && text_[pos_] == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') get();
        continue;
      }
      return;
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

// Symbol table used while parsing. In inference mode unseen symbols are added
// in first-occurrence order; in fixed mode they are an error.
class SymbolTable {
 public:
  SymbolTable(Signature sig, bool fixed) : sig_(std::move(sig)), fixed_(fixed) {}

  int constant(const std::string& name, const Token& tok) {
    return lookup(sig_.constants, name, tok, "constant");
  }
  int function(const std::string& name, const Token& tok) {
    return lookup(sig_.functions, name, tok, "function");
  }
  int predicate(const std::string& name, const Token& tok) {
    return lookup(sig_.predicates, name, tok, "predicate");
  }

  void declare(const std::string& role, const std::string& name, const Token& tok) {
    if (fixed_)
      throw ParseError("directive not allowed when the language is fixed externally", tok.line,
                       tok.column);
    if (occupied(name))
      throw ParseError("symbol '" + name + "' declared twice", tok.line, tok.column);
    if (role == "constant") sig_.constants.push_back(name);
    else if (role == "function") sig_.functions.push_back(name);
    else sig_.predicates.push_back(name);
  }

  const Signature& signature() const { return sig_; }
  bool fixed() const { return fixed_; }

 private:
  bool occupied(const std::string& name) const {
    return sig_.constant_index(name) || sig_.function_index(name) || sig_.predicate_index(name);
  }

  int lookup(std::vector<std::string>& names, const std::string& name, const Token& tok,
             const char* role) {
    if (auto i = index_of(names, name)) return *i;
    if (fixed_ || occupied(name)) {
      ErrorCode code = fixed_ && !occupied(name) ? ErrorCode::UnknownSymbol : ErrorCode::ArityViolation;
      if (code == ErrorCode::UnknownSymbol)
        throw Error(code, "unknown " + std::string(role) + " '" + name + "' at line " +
                              std::to_string(tok.line) + ", column " + std::to_string(tok.column));
      throw Error(ErrorCode::ArityViolation,
                  "symbol '" + name + "' used inconsistently (as " + role +
                      ") at line " + std::to_string(tok.line) + ", column " +
                      std::to_string(tok.column));
    }
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
  }

  Signature sig_;
  bool fixed_;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, SymbolTable symbols)
      : tokens_(std::move(tokens)), symbols_(std::move(symbols)) {}

  ParsedProgram parse_program_toplevel() {
    ParsedProgram out;
    for (;;) {
      const Token& tok = peek();
      if (tok.kind == Tok::End) break;
      if (tok.kind == Tok::Directive) {
        const Token directive = advance();
        const Token name = expect(Tok::Ident, "symbol name");
        symbols_.declare(directive.text, name.text, name);
        expect(Tok::Dot, "'.'");
        continue;
      }
      out.program.clauses.push_back(parse_clause());
    }
    out.signature = symbols_.signature();
    out.signature_inferred = !symbols_.fixed();
    return out;
  }

  FormulaPtr parse_formula_toplevel() {
    FormulaPtr f = parse_iff();
    expect(Tok::End, "end of formula");
    return f;
  }

  Query parse_query_toplevel() {
    expect(Tok::QueryMark, "'?-'");
    Query q;
    q.literals.push_back(parse_literal());
    while (peek().kind == Tok::Comma) {
      advance();
      q.literals.push_back(parse_literal());
    }
    expect(Tok::Dot, "'.'");
    expect(Tok::End, "end of query");
    return q;
  }

  const SymbolTable& symbols() const { return symbols_; }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  Token expect(Tok kind, const char* what) {
    const Token& tok = peek();
    if (tok.kind != kind)
      throw ParseError(std::string("expected ") + what, tok.line, tok.column);
    return advance();
  }

  Clause parse_clause() {
    Clause c;
    Literal head = parse_literal();
    if (!head.positive) {
      const Token& tok = peek();
      throw ParseError("clause head must be a positive atom", tok.line, tok.column);
    }
    c.head = head;
    if (peek().kind == Tok::Turnstile) {
      advance();
      c.body.push_back(parse_literal());
      while (peek().kind == Tok::Comma) {
        advance();
        c.body.push_back(parse_literal());
      }
    }
    expect(Tok::Dot, "'.'");
    return c;
  }

  Literal parse_literal() {
    Literal l;
    if (peek().kind == Tok::KwNot) {
      advance();
      l.positive = false;
    }
    const Token name = expect(Tok::Ident, "predicate name");
    l.pred = symbols_.predicate(name.text, name);
    expect(Tok::LParen, "'('");
    l.term = parse_term();
    if (peek().kind == Tok::Comma) {
      const Token& tok = peek();
      throw Error(ErrorCode::ArityViolation,
                  "predicate '" + name.text + "' applied to more than one argument at line " +
                      std::to_string(tok.line) + ", column " + std::to_string(tok.column));
    }
    expect(Tok::RParen, "')'");
    return l;
  }

  TermPtr parse_term() {
    const Token& tok = peek();
    if (tok.kind == Tok::Var) {
      advance();
      return Term::variable(tok.text);
    }
    if (tok.kind != Tok::Ident)
      throw ParseError("expected term", tok.line, tok.column);
    const Token name = advance();
    if (peek().kind == Tok::LParen) {
      advance();
      TermPtr arg = parse_term();
      if (peek().kind == Tok::Comma)
        throw Error(ErrorCode::ArityViolation,
                    "function '" + name.text + "' applied to more than one argument at line " +
                        std::to_string(name.line) + ", column " + std::to_string(name.column));
      expect(Tok::RParen, "')'");
      return Term::apply(symbols_.function(name.text, name), arg);
    }
    return Term::constant(symbols_.constant(name.text, name));
  }

  // Precedence: ~ > & > | > -> / <->; quantifier scope extends maximally right.
  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      advance();
      return Formula::implies(lhs, parse_iff());
    }
    if (peek().kind == Tok::DArrow) {
      advance();
      return Formula::iff(lhs, parse_iff());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    if (peek().kind == Tok::Pipe) {
      advance();
      return Formula::disj(lhs, parse_or());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    if (peek().kind == Tok::Amp) {
      advance();
      return Formula::conj(lhs, parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    const Token& tok = peek();
    if (tok.kind == Tok::Tilde) {
      advance();
      return Formula::negate(parse_unary());
    }
    if (tok.kind == Tok::KwExists || tok.kind == Tok::KwForall) {
      bool is_exists = tok.kind == Tok::KwExists;
      advance();
      std::vector<std::string> vars;
      vars.push_back(expect(Tok::Var, "variable").text);
      while (peek().kind == Tok::Comma) {
        advance();
        vars.push_back(expect(Tok::Var, "variable").text);
      }
      expect(Tok::Dot, "'.'");
      FormulaPtr body = parse_iff();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = is_exists ? Formula::exists(*it, body) : Formula::forall(*it, body);
      return body;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::KwTrue) {
      advance();
      return Formula::truth();
    }
    if (tok.kind == Tok::KwFalse) {
      advance();
      return Formula::falsity();
    }
    if (tok.kind == Tok::LParen) {
      advance();
      FormulaPtr f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    // Either p(t), or an equality whose left side is a term.
    if (tok.kind == Tok::Ident && peek(1).kind == Tok::LParen) {
      // Could be predicate atom or function-rooted term in an equality;
      // decide by what follows the closing paren.
      size_t save = pos_;
      const Token name = advance();
      advance();  // '('
      TermPtr inner = parse_term();
      expect(Tok::RParen, "')'");
      if (peek().kind == Tok::Equals || peek().kind == Tok::NotEquals) {
        bool negated = advance().kind == Tok::NotEquals;
        TermPtr lhsterm = Term::apply(symbols_.function(name.text, name), inner);
        TermPtr rhs = parse_term();
        FormulaPtr eq = Formula::eq(lhsterm, rhs);
        return negated ? Formula::negate(eq) : eq;
      }
      // Predicate atom; re-check symbol role.
      pos_ = save;
      const Token pname = advance();
      int pred = symbols_.predicate(pname.text, pname);
      advance();  // '('
      TermPtr arg = parse_term();
      if (peek().kind == Tok::Comma)
        throw Error(ErrorCode::ArityViolation,
                    "predicate '" + pname.text + "' applied to more than one argument at line " +
                        std::to_string(pname.line) + ", column " + std::to_string(pname.column));
      expect(Tok::RParen, "')'");
      return Formula::atom(pred, arg);
    }
    if (tok.kind == Tok::Var || tok.kind == Tok::Ident) {
      TermPtr lhs = parse_term();
      const Token& op = peek();
      if (op.kind != Tok::Equals && op.kind != Tok::NotEquals)
        throw ParseError("expected '=' or '!='", op.line, op.column);
      bool negated = advance().kind == Tok::NotEquals;
      TermPtr rhs = parse_term();
      FormulaPtr eq = Formula::eq(lhs, rhs);
      return negated ? Formula::negate(eq) : eq;
    }
    throw ParseError("expected formula", tok.line, tok.column);
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  SymbolTable symbols_;
};

}  // namespace

ParsedProgram parse_program(const std::string& text, const std::optional<Signature>& sig) {
  if (sig) sig->check();
  Parser parser(Lexer(text).run(), SymbolTable(sig.value_or(Signature{}), sig.has_value()));
  return parser.parse_program_toplevel();
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  sig.check();
  Parser parser(Lexer(text).run(), SymbolTable(sig, true));
  return parser.parse_formula_toplevel();
}

Query parse_query(const std::string& text, const Signature& sig) {
  sig.check();
  Parser parser(Lexer(text).run(), SymbolTable(sig, true));
  return parser.parse_query_toplevel();
}

Signature parse_language(const std::string& text) {
  ParsedProgram parsed = parse_program(text, std::nullopt);
  if (!parsed.program.clauses.empty())
    throw Error(ErrorCode::ParseError, "language file may contain directives only");
  return parsed.signature;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

void print_term_rec(std::ostringstream& out, const TermPtr& t, const Signature& sig) {
  switch (t->kind) {
    case Term::Kind::Variable:
      out << t->var;
      return;
    case Term::Kind::Constant:
      out << sig.constants.at(t->symbol);
      return;
    case Term::Kind::Apply:
      out << sig.functions.at(t->symbol) << '(';
      print_term_rec(out, t->arg, sig);
      out << ')';
      return;
  }
}

// Precedence levels: 0 ->/<->, 1 |, 2 &, 3 ~, 4 atoms. Quantifiers print at
// level 0 (their body extends maximally right), so they are parenthesized in
// any operand position.
int formula_prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 0;
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Not:
      return f.lhs->kind == Formula::Kind::Eq ? 4 : 3;  // prints as t != s
    default:
      return 4;
  }
}

void print_formula_rec(std::ostringstream& out, const FormulaPtr& f, const Signature& sig,
                       int surrounding) {
  int prec = formula_prec(*f);
  bool parens = prec < surrounding;
  if (parens) out << '(';
  switch (f->kind) {
    case Formula::Kind::True:
      out << "true";
      break;
    case Formula::Kind::False:
      out << "false";
      break;
    case Formula::Kind::Atom:
      out << sig.predicates.at(f->pred) << '(';
      print_term_rec(out, f->t1, sig);
      out << ')';
      break;
    case Formula::Kind::Eq:
      print_term_rec(out, f->t1, sig);
      out << " = ";
      print_term_rec(out, f->t2, sig);
      break;
    case Formula::Kind::Not:
      if (f->lhs->kind == Formula::Kind::Eq) {
        print_term_rec(out, f->lhs->t1, sig);
        out << " != ";
        print_term_rec(out, f->lhs->t2, sig);
      } else {
        out << '~';
        // ~(t != s) keeps the disequality visibly inside the negation.
        bool wrap = f->lhs->kind == Formula::Kind::Not && f->lhs->lhs->kind == Formula::Kind::Eq;
        if (wrap) out << '(';
        print_formula_rec(out, f->lhs, sig, wrap ? 0 : 3);
        if (wrap) out << ')';
      }
      break;
    case Formula::Kind::And:
      print_formula_rec(out, f->lhs, sig, 3);
      out << " & ";
      print_formula_rec(out, f->rhs, sig, 2);
      break;
    case Formula::Kind::Or:
      print_formula_rec(out, f->lhs, sig, 2);
      out << " | ";
      print_formula_rec(out, f->rhs, sig, 1);
      break;
    case Formula::Kind::Implies:
      print_formula_rec(out, f->lhs, sig, 1);
      out << " -> ";
      print_formula_rec(out, f->rhs, sig, 0);
      break;
    case Formula::Kind::Iff:
      print_formula_rec(out, f->lhs, sig, 1);
      out << " <-> ";
      print_formula_rec(out, f->rhs, sig, 0);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = f->kind == Formula::Kind::Exists;
      out << (is_exists ? "exists " : "forall ") << f->var;
      FormulaPtr body = f->lhs;
      while (body->kind == f->kind) {
        out << ", " << body->var;
        body = body->lhs;
      }
      out << ". ";
      print_formula_rec(out, body, sig, 0);
      break;
    }
  }
  if (parens) out << ')';
}

}  // namespace

std::string print_term(const TermPtr& t, const Signature& sig) {
  std::ostringstream out;
  print_term_rec(out, t, sig);
  return out.str();
}

std::string print_formula(const FormulaPtr& f, const Signature& sig) {
  std::ostringstream out;
  print_formula_rec(out, f, sig, 0);
  return out.str();
}

namespace {
void print_literal(std::ostringstream& out, const Literal& l, const Signature& sig) {
  if (!l.positive) out << "not ";
  out << sig.predicates.at(l.pred) << '(';
  print_term_rec(out, l.term, sig);
  out << ')';
}
}  // namespace

std::string print_clause(const Clause& c, const Signature& sig) {
  std::ostringstream out;
  print_literal(out, c.head, sig);
  if (!c.body.empty()) {
    out << " :- ";
    for (size_t i = 0; i < c.body.size(); ++i) {
      if (i) out << ", ";
      print_literal(out, c.body[i], sig);
    }
  }
  out << '.';
  return out.str();
}

std::string print_program(const Program& p, const Signature& sig) {
  std::ostringstream out;
  for (const auto& c : p.clauses) out << print_clause(c, sig) << '\n';
  return out.str();
}

std::string print_query(const Query& q, const Signature& sig) {
  std::ostringstream out;
  out << "?- ";
  for (size_t i = 0; i < q.literals.size(); ++i) {
    if (i) out << ", ";
    print_literal(out, q.literals[i], sig);
  }
  out << '.';
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {
void validate_term(const TermPtr& t, const Signature& sig) {
  switch (t->kind) {
    case Term::Kind::Variable:
      return;
    case Term::Kind::Constant:
      if (t->symbol < 0 || t->symbol >= sig.num_constants())
        throw Error(ErrorCode::ForeignSymbol, "constant index out of range");
      return;
    case Term::Kind::Apply:
      if (t->symbol < 0 || t->symbol >= sig.num_functions())
        throw Error(ErrorCode::ForeignSymbol, "function index out of range");
      if (!t->arg) throw Error(ErrorCode::ArityViolation, "function application without argument");
      validate_term(t->arg, sig);
      return;
  }
}

void validate_rec(const FormulaPtr& f, const Signature& sig) {
  if (!f) throw Error(ErrorCode::PreconditionViolation, "null formula");
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      if (f->pred < 0 || f->pred >= sig.num_predicates())
        throw Error(ErrorCode::ForeignSymbol, "predicate index out of range");
      validate_term(f->t1, sig);
      return;
    case Formula::Kind::Eq:
      validate_term(f->t1, sig);
      validate_term(f->t2, sig);
      return;
    case Formula::Kind::Not:
      validate_rec(f->lhs, sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      validate_rec(f->lhs, sig);
      validate_rec(f->rhs, sig);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      validate_rec(f->lhs, sig);
      return;
  }
}
}  // namespace

void validate(const FormulaPtr& f, const Signature& sig, Closedness closedness) {
  sig.check();
  validate_rec(f, sig);
  if (closedness == Closedness::Required && !is_closed(f)) {
    std::string names;
    for (const auto& v : free_variables(f)) names += (names.empty() ? "" : ", ") + v;
    throw Error(ErrorCode::OpenFormula, "formula has free variables: " + names);
  }
}

void validate(const Program& p, const Signature& sig) {
  sig.check();
  auto check_literal = [&](const Literal& l) {
    if (l.pred < 0 || l.pred >= sig.num_predicates())
      throw Error(ErrorCode::ForeignSymbol, "predicate index out of range");
    validate_term(l.term, sig);
  };
  for (const auto& c : p.clauses) {
    if (!c.head.positive)
      throw Error(ErrorCode::PreconditionViolation, "clause head must be positive");
    check_literal(c.head);
    for (const auto& l : c.body) check_literal(l);
  }
}

void validate(const Query& q, const Signature& sig) {
  sig.check();
  if (q.literals.empty())
    throw Error(ErrorCode::PreconditionViolation, "query must contain at least one literal");
  for (const auto& l : q.literals) {
    if (l.pred < 0 || l.pred >= sig.num_predicates())
      throw Error(ErrorCode::ForeignSymbol, "predicate index out of range");
    validate_term(l.term, sig);
  }
}

}  // namespace monlog
