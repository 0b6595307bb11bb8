#include "monlog/sns.hpp"

#include <map>
#include <sstream>

namespace monlog {

SnSTermPtr SnSTerm::lambda() {
  auto t = std::make_shared<SnSTerm>();
  t->kind = Kind::Lambda;
  return t;
}

SnSTermPtr SnSTerm::objvar(std::string name) {
  auto t = std::make_shared<SnSTerm>();
  t->kind = Kind::ObjVar;
  t->var = std::move(name);
  return t;
}

SnSTermPtr SnSTerm::succ(SuccLetter letter, SnSTermPtr arg) {
  auto t = std::make_shared<SnSTerm>();
  t->kind = Kind::Succ;
  t->letter = letter;
  t->arg = std::move(arg);
  return t;
}

bool equal(const SnSTermPtr& a, const SnSTermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SnSTerm::Kind::Lambda: return true;
    case SnSTerm::Kind::ObjVar: return a->var == b->var;
    case SnSTerm::Kind::Succ: return a->letter == b->letter && equal(a->arg, b->arg);
  }
  return false;
}

namespace {
std::shared_ptr<SnSFormula> mk(SnSFormula::Kind kind) {
  auto f = std::make_shared<SnSFormula>();
  f->kind = kind;
  return f;
}
}  // namespace

SnSFormulaPtr SnSFormula::truth() { return mk(Kind::True); }
SnSFormulaPtr SnSFormula::falsity() { return mk(Kind::False); }

SnSFormulaPtr SnSFormula::eq(SnSTermPtr a, SnSTermPtr b) {
  auto f = mk(Kind::Eq);
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

SnSFormulaPtr SnSFormula::member(SnSTermPtr t, std::string set_var) {
  auto f = mk(Kind::Member);
  f->t1 = std::move(t);
  f->var = std::move(set_var);
  return f;
}

SnSFormulaPtr SnSFormula::negate(SnSFormulaPtr g) {
  auto f = mk(Kind::Not);
  f->kids.push_back(std::move(g));
  return f;
}

SnSFormulaPtr SnSFormula::and_of(std::vector<SnSFormulaPtr> kids) {
  auto f = mk(Kind::And);
  f->kids = std::move(kids);
  return f;
}

SnSFormulaPtr SnSFormula::or_of(std::vector<SnSFormulaPtr> kids) {
  auto f = mk(Kind::Or);
  f->kids = std::move(kids);
  return f;
}

namespace {
SnSFormulaPtr binary(SnSFormula::Kind kind, SnSFormulaPtr a, SnSFormulaPtr b) {
  auto f = mk(kind);
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}
SnSFormulaPtr quantifier(SnSFormula::Kind kind, std::string var, SnSFormulaPtr body) {
  auto f = mk(kind);
  f->var = std::move(var);
  f->kids.push_back(std::move(body));
  return f;
}
}  // namespace

SnSFormulaPtr SnSFormula::xor_of(SnSFormulaPtr a, SnSFormulaPtr b) {
  return binary(Kind::Xor, std::move(a), std::move(b));
}
SnSFormulaPtr SnSFormula::implies(SnSFormulaPtr a, SnSFormulaPtr b) {
  return binary(Kind::Implies, std::move(a), std::move(b));
}
SnSFormulaPtr SnSFormula::iff(SnSFormulaPtr a, SnSFormulaPtr b) {
  return binary(Kind::Iff, std::move(a), std::move(b));
}
SnSFormulaPtr SnSFormula::exists_obj(std::string var, SnSFormulaPtr body) {
  return quantifier(Kind::ExistsObj, std::move(var), std::move(body));
}
SnSFormulaPtr SnSFormula::forall_obj(std::string var, SnSFormulaPtr body) {
  return quantifier(Kind::ForallObj, std::move(var), std::move(body));
}
SnSFormulaPtr SnSFormula::exists_set(std::string var, SnSFormulaPtr body) {
  return quantifier(Kind::ExistsSet, std::move(var), std::move(body));
}
SnSFormulaPtr SnSFormula::forall_set(std::string var, SnSFormulaPtr body) {
  return quantifier(Kind::ForallSet, std::move(var), std::move(body));
}

bool equal(const SnSFormulaPtr& a, const SnSFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var) return false;
  if (!equal(a->t1, b->t1) || !equal(a->t2, b->t2)) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

SnSFormulaPtr sns_conj(std::vector<SnSFormulaPtr> kids) {
  std::vector<SnSFormulaPtr> kept;
  for (auto& kid : kids)
    if (kid->kind != SnSFormula::Kind::True) kept.push_back(std::move(kid));
  if (kept.empty()) return SnSFormula::truth();
  if (kept.size() == 1) return kept[0];
  return SnSFormula::and_of(std::move(kept));
}

SnSFormulaPtr sns_disj(std::vector<SnSFormulaPtr> kids) {
  std::vector<SnSFormulaPtr> kept;
  for (auto& kid : kids)
    if (kid->kind != SnSFormula::Kind::False) kept.push_back(std::move(kid));
  if (kept.empty()) return SnSFormula::falsity();
  if (kept.size() == 1) return kept[0];
  return SnSFormula::or_of(std::move(kept));
}

namespace {
void term_object_vars(const SnSTermPtr& t, std::set<std::string>& out) {
  const SnSTerm* cur = t.get();
  while (cur) {
    if (cur->kind == SnSTerm::Kind::ObjVar) {
      out.insert(cur->var);
      return;
    }
    if (cur->kind == SnSTerm::Kind::Lambda) return;
    cur = cur->arg.get();
  }
}

void free_vars_rec(const SnSFormulaPtr& f, std::set<std::string>& bound_obj,
                   std::set<std::string>& bound_set, std::set<std::string>& obj,
                   std::set<std::string>& set) {
  std::set<std::string> here;
  for (const SnSTermPtr& t : {f->t1, f->t2})
    if (t) term_object_vars(t, here);
  for (const auto& v : here)
    if (!bound_obj.count(v)) obj.insert(v);
  if (f->kind == SnSFormula::Kind::Member && !bound_set.count(f->var)) set.insert(f->var);

  switch (f->kind) {
    case SnSFormula::Kind::ExistsObj:
    case SnSFormula::Kind::ForallObj: {
      bool inserted = bound_obj.insert(f->var).second;
      free_vars_rec(f->kids[0], bound_obj, bound_set, obj, set);
      if (inserted) bound_obj.erase(f->var);
      return;
    }
    case SnSFormula::Kind::ExistsSet:
    case SnSFormula::Kind::ForallSet: {
      bool inserted = bound_set.insert(f->var).second;
      free_vars_rec(f->kids[0], bound_obj, bound_set, obj, set);
      if (inserted) bound_set.erase(f->var);
      return;
    }
    default:
      for (const auto& kid : f->kids) free_vars_rec(kid, bound_obj, bound_set, obj, set);
      return;
  }
}
}  // namespace

std::set<std::string> sns_free_object_vars(const SnSFormulaPtr& f) {
  std::set<std::string> bo, bs, obj, set;
  free_vars_rec(f, bo, bs, obj, set);
  return obj;
}

std::set<std::string> sns_free_set_vars(const SnSFormulaPtr& f) {
  std::set<std::string> bo, bs, obj, set;
  free_vars_rec(f, bo, bs, obj, set);
  return set;
}

SnSTermPtr constant_address(int index) {
  SnSTermPtr t = SnSTerm::lambda();
  for (int i = 0; i <= index; ++i) t = SnSTerm::succ(SuccLetter{0, false}, t);
  return t;
}

// ---------------------------------------------------------------------------
// domain(X)
// ---------------------------------------------------------------------------

std::vector<SnSFormulaPtr> build_domain_parts(const Signature& sig) {
  const int k = sig.num_constants(), n = sig.num_functions();
  const std::string X = SnSSignature::domain_var;
  auto fwd = [](int i) { return SuccLetter{i, false}; };
  auto bar = [](int i) { return SuccLetter{i, true}; };
  SnSTermPtr x = SnSTerm::objvar("x"), y = SnSTerm::objvar("y");

  std::vector<SnSFormulaPtr> parts;

  // (1) every constant address belongs to X.
  {
    std::vector<SnSFormulaPtr> kids;
    for (int j = 0; j < k; ++j) kids.push_back(SnSFormula::member(constant_address(j), X));
    parts.push_back(sns_conj(std::move(kids)));
  }

  // (2) each member has, per letter, exactly one of: its successor inside,
  // or a parent inside along that letter.
  if (n == 0) {
    parts.push_back(SnSFormula::truth());
  } else {
    std::vector<SnSFormulaPtr> kids;
    for (int i = 1; i <= n; ++i) {
      SnSFormulaPtr inside = SnSFormula::member(SnSTerm::succ(fwd(i), x), X);
      SnSFormulaPtr parent = SnSFormula::exists_obj(
          "y", sns_conj({SnSFormula::member(y, X),
                         SnSFormula::eq(x, SnSTerm::succ(bar(i), y))}));
      kids.push_back(SnSFormula::xor_of(inside, parent));
    }
    parts.push_back(SnSFormula::forall_obj(
        "x", SnSFormula::implies(SnSFormula::member(x, X), sns_conj(std::move(kids)))));
  }

  // (3) constant addresses have no parent in X.
  {
    std::vector<SnSFormulaPtr> kids;
    for (int j = 0; j < k; ++j)
      for (int i = 1; i <= n; ++i)
        kids.push_back(SnSFormula::negate(
            SnSFormula::member(SnSTerm::succ(bar(i), constant_address(j)), X)));
    parts.push_back(sns_conj(std::move(kids)));
  }

  // (4) a successor reached from inside X has no parent in X either.
  if (n == 0) {
    parts.push_back(SnSFormula::truth());
  } else {
    std::vector<SnSFormulaPtr> kids;
    for (int i = 1; i <= n; ++i) {
      std::vector<SnSFormulaPtr> inner;
      for (int i2 = 1; i2 <= n; ++i2)
        inner.push_back(SnSFormula::negate(
            SnSFormula::member(SnSTerm::succ(bar(i2), SnSTerm::succ(fwd(i), x)), X)));
      kids.push_back(SnSFormula::forall_obj(
          "x", SnSFormula::implies(
                   sns_conj({SnSFormula::member(x, X),
                             SnSFormula::member(SnSTerm::succ(fwd(i), x), X)}),
                   sns_conj(std::move(inner)))));
    }
    parts.push_back(sns_conj(std::move(kids)));
  }

  // (5) no element has two distinct parents.
  if (n == 0) {
    parts.push_back(SnSFormula::truth());
  } else {
    std::vector<SnSFormulaPtr> pairs;
    for (int i = 1; i <= n; ++i)
      for (int i2 = i + 1; i2 <= n; ++i2)
        pairs.push_back(sns_conj({SnSFormula::member(SnSTerm::succ(bar(i), x), X),
                                  SnSFormula::member(SnSTerm::succ(bar(i2), x), X)}));
    parts.push_back(
        SnSFormula::forall_obj("x", SnSFormula::negate(sns_disj(std::move(pairs)))));
  }

  return parts;
}

SnSFormulaPtr build_domain(const Signature& sig) {
  return sns_conj(build_domain_parts(sig));
}

// ---------------------------------------------------------------------------
// Mod translation
// ---------------------------------------------------------------------------

namespace {

struct ModContext {
  const Signature* sig;
  std::map<std::string, std::string> rename;  // user variable -> canonical
  int next = 0;
};

SnSTermPtr mod_term(const TermPtr& t, ModContext& ctx) {
  switch (t->kind) {
    case Term::Kind::Variable:
      return SnSTerm::objvar(ctx.rename.at(t->var));
    case Term::Kind::Constant:
      return constant_address(t->symbol);
    case Term::Kind::Apply:
      throw Error(ErrorCode::NotSimple, "function application outside y = f(x)");
  }
  return SnSTerm::lambda();
}

SnSFormulaPtr mod_rec(const FormulaPtr& f, ModContext& ctx) {
  switch (f->kind) {
    case Formula::Kind::True:
      return SnSFormula::truth();
    case Formula::Kind::False:
      return SnSFormula::falsity();
    case Formula::Kind::Atom:
      return SnSFormula::member(mod_term(f->t1, ctx),
                                SnSSignature::from(*ctx.sig).set_var(f->pred));
    case Formula::Kind::Eq: {
      // The canonical y = f_i(x) becomes y = f_i(x) or x = f_i^{-1}(y).
      if (f->t2->kind == Term::Kind::Apply) {
        int i = f->t2->symbol + 1;
        SnSTermPtr y = mod_term(f->t1, ctx);
        SnSTermPtr x = mod_term(f->t2->arg, ctx);
        return SnSFormula::or_of(
            {SnSFormula::eq(y, SnSTerm::succ(SuccLetter{i, false}, x)),
             SnSFormula::eq(x, SnSTerm::succ(SuccLetter{i, true}, y))});
      }
      return SnSFormula::eq(mod_term(f->t1, ctx), mod_term(f->t2, ctx));
    }
    case Formula::Kind::Not:
      return SnSFormula::negate(mod_rec(f->lhs, ctx));
    case Formula::Kind::Or:
      return SnSFormula::or_of({mod_rec(f->lhs, ctx), mod_rec(f->rhs, ctx)});
    case Formula::Kind::Exists: {
      std::string canonical = "x" + std::to_string(ctx.next++);
      auto saved = ctx.rename.find(f->var) != ctx.rename.end()
                       ? std::optional<std::string>(ctx.rename[f->var])
                       : std::nullopt;
      ctx.rename[f->var] = canonical;
      SnSFormulaPtr body = mod_rec(f->lhs, ctx);
      if (saved) ctx.rename[f->var] = *saved;
      else ctx.rename.erase(f->var);
      return SnSFormula::exists_obj(
          canonical,
          SnSFormula::and_of({SnSFormula::member(SnSTerm::objvar(canonical),
                                                 SnSSignature::domain_var),
                              body}));
    }
    default:
      throw Error(ErrorCode::NotNormalized, "formula is not in the ~, |, exists basis");
  }
}

}  // namespace

SnSFormulaPtr build_mod(const FormulaPtr& f, const Signature& sig) {
  if (!is_closed(f)) throw Error(ErrorCode::NotClosed, "formula must be closed");
  if (!is_simple(f))
    throw Error(ErrorCode::NotSimple, "formula has a function occurrence outside y = f(x)");
  if (!is_normalized(f))
    throw Error(ErrorCode::NotNormalized, "formula is not in the ~, |, exists basis");
  ModContext ctx{&sig, {}, 0};
  return mod_rec(f, ctx);
}

SnSFormulaPtr assemble_sentence(const FormulaPtr& f, const Signature& sig) {
  validate(f, sig, Closedness::Required);
  FormulaPtr prepared = normalize(flatten(f).formula());
  SnSFormulaPtr mod = build_mod(prepared, sig);
  SnSSignature sns = SnSSignature::from(sig);

  std::vector<SnSFormulaPtr> kids;
  kids.push_back(build_domain(sig));
  SnSTermPtr x = SnSTerm::objvar("x");
  for (int l = 0; l < sns.m; ++l)
    kids.push_back(SnSFormula::forall_obj(
        "x", SnSFormula::implies(SnSFormula::member(x, sns.set_var(l)),
                                 SnSFormula::member(x, SnSSignature::domain_var))));
  kids.push_back(mod);

  SnSFormulaPtr body = SnSFormula::and_of(std::move(kids));
  for (int l = sns.m - 1; l >= 0; --l) body = SnSFormula::exists_set(sns.set_var(l), body);
  return SnSFormula::exists_set(SnSSignature::domain_var, body);
}

// ---------------------------------------------------------------------------
// Emitter and parser
// ---------------------------------------------------------------------------

namespace {
void emit_term(std::ostringstream& out, const SnSTermPtr& t) {
  switch (t->kind) {
    case SnSTerm::Kind::Lambda:
      out << "Lam";
      return;
    case SnSTerm::Kind::ObjVar:
      out << t->var;
      return;
    case SnSTerm::Kind::Succ:
      out << '(' << t->letter.name() << ' ';
      emit_term(out, t->arg);
      out << ')';
      return;
  }
}

void emit_rec(std::ostringstream& out, const SnSFormulaPtr& f) {
  switch (f->kind) {
    case SnSFormula::Kind::True:
      out << "true";
      return;
    case SnSFormula::Kind::False:
      out << "false";
      return;
    case SnSFormula::Kind::Eq:
      out << "(= ";
      emit_term(out, f->t1);
      out << ' ';
      emit_term(out, f->t2);
      out << ')';
      return;
    case SnSFormula::Kind::Member:
      out << "(in ";
      emit_term(out, f->t1);
      out << ' ' << f->var << ')';
      return;
    case SnSFormula::Kind::Not:
      out << "(not ";
      emit_rec(out, f->kids[0]);
      out << ')';
      return;
    case SnSFormula::Kind::And:
    case SnSFormula::Kind::Or:
      out << '(' << (f->kind == SnSFormula::Kind::And ? "and" : "or");
      for (const auto& kid : f->kids) {
        out << ' ';
        emit_rec(out, kid);
      }
      out << ')';
      return;
    case SnSFormula::Kind::Xor:
    case SnSFormula::Kind::Implies:
    case SnSFormula::Kind::Iff: {
      const char* op = f->kind == SnSFormula::Kind::Xor     ? "xor"
                       : f->kind == SnSFormula::Kind::Implies ? "->"
                                                              : "<->";
      out << '(' << op << ' ';
      emit_rec(out, f->kids[0]);
      out << ' ';
      emit_rec(out, f->kids[1]);
      out << ')';
      return;
    }
    case SnSFormula::Kind::ExistsObj:
    case SnSFormula::Kind::ForallObj:
    case SnSFormula::Kind::ExistsSet:
    case SnSFormula::Kind::ForallSet: {
      const char* op = f->kind == SnSFormula::Kind::ExistsObj   ? "ex1"
                       : f->kind == SnSFormula::Kind::ForallObj ? "all1"
                       : f->kind == SnSFormula::Kind::ExistsSet ? "ex2"
                                                                : "all2";
      out << '(' << op << ' ' << f->var << ' ';
      emit_rec(out, f->kids[0]);
      out << ')';
      return;
    }
  }
}

struct SnSParser {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit SnSParser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) get();
  }

  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string atom() {
    skip_ws();
    std::string word;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      word.push_back(get());
    if (word.empty()) fail("expected an atom");
    return word;
  }

  static bool is_lower_name(const std::string& s) {
    return !s.empty() && (std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_');
  }
  static bool is_upper_name(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
  }

  SuccLetter letter(const std::string& word) {
    if (word.size() < 2 || (word[0] != 's' && word[0] != 'b')) fail("expected a successor letter");
    for (size_t i = 1; i < word.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(word[i]))) fail("expected a successor letter");
    if (word.size() > 7) fail("successor index out of range");
    int index = std::stoi(word.substr(1));
    bool bar = word[0] == 'b';
    if (bar && index == 0) fail("b0 is not a letter");
    return SuccLetter{index, bar};
  }

  SnSTermPtr term() {
    if (peek() == '(') {
      get();
      SuccLetter l = letter(atom());
      SnSTermPtr arg = term();
      expect(')');
      return SnSTerm::succ(l, arg);
    }
    std::string word = atom();
    if (word == "Lam") return SnSTerm::lambda();
    if (!is_lower_name(word)) fail("object variable must be lowercase: '" + word + "'");
    return SnSTerm::objvar(word);
  }

  SnSFormulaPtr formula() {
    if (peek() != '(') {
      std::string word = atom();
      if (word == "true") return SnSFormula::truth();
      if (word == "false") return SnSFormula::falsity();
      fail("expected a formula, got '" + word + "'");
    }
    get();
    std::string op = atom();
    SnSFormulaPtr result;
    if (op == "=") {
      SnSTermPtr a = term(), b = term();
      result = SnSFormula::eq(a, b);
    } else if (op == "in") {
      SnSTermPtr t = term();
      std::string set = atom();
      if (!is_upper_name(set)) fail("set variable must be uppercase: '" + set + "'");
      result = SnSFormula::member(t, set);
    } else if (op == "not") {
      result = SnSFormula::negate(formula());
    } else if (op == "and" || op == "or") {
      std::vector<SnSFormulaPtr> kids;
      while (peek() != ')') kids.push_back(formula());
      result = op == "and" ? SnSFormula::and_of(std::move(kids))
                           : SnSFormula::or_of(std::move(kids));
    } else if (op == "xor" || op == "->" || op == "<->") {
      SnSFormulaPtr a = formula(), b = formula();
      result = op == "xor" ? SnSFormula::xor_of(a, b)
               : op == "->" ? SnSFormula::implies(a, b)
                            : SnSFormula::iff(a, b);
    } else if (op == "ex1" || op == "all1" || op == "ex2" || op == "all2") {
      std::string var = atom();
      bool second_order = op == "ex2" || op == "all2";
      if (second_order && !is_upper_name(var))
        fail("set variable must be uppercase: '" + var + "'");
      if (!second_order && !is_lower_name(var))
        fail("object variable must be lowercase: '" + var + "'");
      SnSFormulaPtr body = formula();
      result = op == "ex1"    ? SnSFormula::exists_obj(var, body)
               : op == "all1" ? SnSFormula::forall_obj(var, body)
               : op == "ex2"  ? SnSFormula::exists_set(var, body)
                              : SnSFormula::forall_set(var, body);
    } else {
      fail("unknown operator '" + op + "'");
    }
    expect(')');
    return result;
  }
};
}  // namespace

std::string emit(const SnSFormulaPtr& f) {
  std::ostringstream out;
  emit_rec(out, f);
  return out.str();
}

std::string emit(const SnSTermPtr& t) {
  std::ostringstream out;
  emit_term(out, t);
  return out.str();
}

SnSFormulaPtr parse_sns(const std::string& text) {
  SnSParser parser(text);
  SnSFormulaPtr f = parser.formula();
  if (!parser.at_end()) parser.fail("trailing input after formula");
  return f;
}

}  // namespace monlog
