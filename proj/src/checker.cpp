#include "monlog/checker.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "monlog/simpleform.hpp"

namespace monlog {

SetEnv SetEnv::make(const RegularSet& d, const std::vector<RegularSet>& preds) {
  SetEnv env;
  env.n = d.n;
  env.sets.emplace(SnSSignature::domain_var, d);
  for (size_t l = 0; l < preds.size(); ++l)
    env.sets.emplace("Y" + std::to_string(l + 1), preds[l].intersect(d));
  return env;
}

const RegularSet& SetEnv::lookup(const std::string& var) const {
  auto it = sets.find(var);
  if (it == sets.end())
    throw Error(ErrorCode::UnboundSetVariable, "set variable " + var + " is not bound");
  return it->second;
}

void Bounds::check() const {
  if (max_extra_roots < 0 || max_extra_nonroots < 0 || max_prefix < 0 ||
      max_period < 0 || max_multiplicity < 0 || granularity < 0 ||
      budget_seconds < 0)
    throw Error(ErrorCode::PreconditionViolation, "bounds must be nonnegative");
}

// ---------------------------------------------------------------------------
// Formula compilation
// ---------------------------------------------------------------------------

namespace {

// A term split into its base (the empty word, or an object variable) and the
// letters applied on top of it, outermost last.
struct TermParts {
  bool ground = true;
  std::string var;           // when not ground
  std::vector<int> letters;  // dense ids, in application order
};

TermParts split_term(const SnSTermPtr& t, int n,
                     const std::map<std::string, std::string>& rename) {
  if (t->kind == SnSTerm::Kind::Succ) {
    TermParts below = split_term(t->arg, n, rename);
    below.letters.push_back(t->letter.flat(n));
    return below;
  }
  TermParts parts;
  if (t->kind == SnSTerm::Kind::ObjVar) {
    parts.ground = false;
    auto it = rename.find(t->var);
    parts.var = it == rename.end() ? t->var : it->second;
  }
  return parts;
}

struct Compiler {
  const SetEnv* env;
  NameSupply fresh;

  int n() const { return env->n; }

  // The relation y = x . w, with the intermediate steps existentially hidden.
  SyncAutomaton chain(const std::string& x, const std::vector<int>& w,
                      const std::string& y) {
    if (w.empty()) return SyncAutomaton::equal(x, y, n());
    std::string at = x;
    std::vector<std::string> internal;
    SyncAutomaton acc = SyncAutomaton::boolean(n(), true);
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      std::string next = fresh.fresh();
      internal.push_back(next);
      acc = sync_combine('&', acc, SyncAutomaton::succ(w[i], at, next, n()));
      at = next;
    }
    acc = sync_combine('&', acc, SyncAutomaton::succ(w.back(), at, y, n()));
    for (auto it = internal.rbegin(); it != internal.rend(); ++it)
      acc = sync_project(acc, *it);
    return acc;
  }

  SyncAutomaton compile_eq(const TermParts& a, const TermParts& b) {
    if (a.ground && b.ground)
      return SyncAutomaton::boolean(n(), a.letters == b.letters);
    if (a.ground) return compile_eq(b, a);
    if (b.ground) {
      // a.var . u = w: the variable is forced to the prefix of w left after
      // removing u, when u really is a suffix.
      const auto& u = a.letters;
      const auto& w = b.letters;
      if (u.size() <= w.size() && std::equal(u.begin(), u.end(), w.end() - u.size())) {
        std::vector<int> stem(w.begin(), w.end() - u.size());
        return SyncAutomaton::member(a.var, RegularSet::single(stem, n()));
      }
      return SyncAutomaton::member(a.var, RegularSet::none(n()));
    }
    // Both sides are variables with suffixes; cancel the common suffix.
    std::vector<int> u = a.letters, v = b.letters;
    while (!u.empty() && !v.empty() && u.back() == v.back()) {
      u.pop_back();
      v.pop_back();
    }
    if (a.var == b.var) {
      bool possible = u.empty() && v.empty();
      return SyncAutomaton::member(a.var, possible ? RegularSet::all(n())
                                                   : RegularSet::none(n()));
    }
    if (u.empty() && v.empty()) return SyncAutomaton::equal(a.var, b.var, n());
    if (!u.empty() && !v.empty())  // distinct final letters: never equal
      return sync_combine('&', SyncAutomaton::member(a.var, RegularSet::none(n())),
                          SyncAutomaton::member(b.var, RegularSet::none(n())));
    return u.empty() ? chain(b.var, v, a.var) : chain(a.var, u, b.var);
  }

  SyncAutomaton compile_member(const TermParts& t, const RegularSet& s) {
    if (t.ground) return SyncAutomaton::boolean(n(), s.contains(t.letters));
    if (t.letters.empty()) return SyncAutomaton::member(t.var, s);
    std::string z = fresh.fresh();
    SyncAutomaton a =
        sync_combine('&', chain(t.var, t.letters, z), SyncAutomaton::member(z, s));
    return sync_project(a, z);
  }

  SyncAutomaton compile(const SnSFormulaPtr& f,
                        std::map<std::string, std::string>& rename) {
    switch (f->kind) {
      case SnSFormula::Kind::True:
        return SyncAutomaton::boolean(n(), true);
      case SnSFormula::Kind::False:
        return SyncAutomaton::boolean(n(), false);
      case SnSFormula::Kind::Eq:
        return compile_eq(split_term(f->t1, n(), rename),
                          split_term(f->t2, n(), rename));
      case SnSFormula::Kind::Member:
        return compile_member(split_term(f->t1, n(), rename), env->lookup(f->var));
      case SnSFormula::Kind::Not:
        return sync_not(compile(f->kids[0], rename));
      case SnSFormula::Kind::And:
      case SnSFormula::Kind::Or: {
        char op = f->kind == SnSFormula::Kind::And ? '&' : '|';
        SyncAutomaton acc =
            SyncAutomaton::boolean(n(), f->kind == SnSFormula::Kind::And);
        for (const auto& kid : f->kids) acc = sync_combine(op, acc, compile(kid, rename));
        return acc;
      }
      case SnSFormula::Kind::Xor:
        return sync_combine('^', compile(f->kids[0], rename),
                            compile(f->kids[1], rename));
      case SnSFormula::Kind::Implies:
        return sync_combine('|', sync_not(compile(f->kids[0], rename)),
                            compile(f->kids[1], rename));
      case SnSFormula::Kind::Iff:
        return sync_not(sync_combine('^', compile(f->kids[0], rename),
                                     compile(f->kids[1], rename)));
      case SnSFormula::Kind::ExistsObj:
      case SnSFormula::Kind::ForallObj: {
        // Bound variables get private track names, so shadowing and clashes
        // with free variables are harmless.
        std::string track = fresh.fresh();
        auto saved = rename.find(f->var) != rename.end()
                         ? std::optional<std::string>(rename.at(f->var))
                         : std::nullopt;
        rename[f->var] = track;
        SyncAutomaton body = compile(f->kids[0], rename);
        if (saved)
          rename[f->var] = *saved;
        else
          rename.erase(f->var);
        bool universal = f->kind == SnSFormula::Kind::ForallObj;
        if (universal) body = sync_not(body);
        if (body.has_track(track)) body = sync_project(body, track);
        return universal ? sync_not(body) : body;
      }
      case SnSFormula::Kind::ExistsSet:
      case SnSFormula::Kind::ForallSet:
        throw Error(ErrorCode::SecondOrderQuantifier,
                    "set quantifiers are not evaluated directly");
    }
    throw Error(ErrorCode::InternalLimit, "unhandled formula kind");
  }
};

void collect_vars(const SnSTermPtr& t, std::set<std::string>& out) {
  if (t->kind == SnSTerm::Kind::ObjVar) out.insert(t->var);
  if (t->kind == SnSTerm::Kind::Succ) collect_vars(t->arg, out);
}

void collect_vars(const SnSFormulaPtr& f, std::set<std::string>& out) {
  if (f->t1) collect_vars(f->t1, out);
  if (f->t2) collect_vars(f->t2, out);
  if (f->kind == SnSFormula::Kind::ExistsObj || f->kind == SnSFormula::Kind::ForallObj)
    out.insert(f->var);
  for (const auto& kid : f->kids) collect_vars(kid, out);
}

}  // namespace

SyncAutomaton eval_fo(const SnSFormulaPtr& f, const SetEnv& env) {
  std::set<std::string> avoid;
  collect_vars(f, avoid);
  Compiler compiler{&env, NameSupply("@v", std::move(avoid))};
  std::map<std::string, std::string> rename;
  return compiler.compile(f, rename);
}

bool check_domain(const RegularSet& d, const Signature& sig) {
  if (d.n != sig.num_functions())
    throw Error(ErrorCode::ArityMismatch, "set alphabet does not match the signature");
  SetEnv env;
  env.n = d.n;
  env.sets.emplace(SnSSignature::domain_var, d);
  return eval_fo(build_domain(sig), env).as_bool();
}

bool eval_sentence(const ModelPresentation& m, const FormulaPtr& f) {
  validate(m);
  validate(f, m.sig, Closedness::Required);
  RegularSet d = embed(m);
  d.dfa = d.dfa.minimized();
  auto colored = colorings(m, d);
  std::vector<RegularSet> preds;
  for (const auto& name : m.sig.predicates) preds.push_back(colored.at(name));
  SetEnv env = SetEnv::make(d, preds);
  SnSFormulaPtr g = build_mod(normalize(flatten(f).formula()), m.sig);
  return eval_fo(g, env).as_bool();
}

// ---------------------------------------------------------------------------
// Bounded search
// ---------------------------------------------------------------------------

namespace {

using Extras = std::vector<std::pair<Component, int>>;

std::vector<Component> nonroot_shapes(int n, const Bounds& b) {
  std::vector<Component> shapes;
  if (n == 0) return shapes;
  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= std::max(b.max_prefix, b.max_period); ++len) {
    size_t start = 0, end = words.size();
    for (size_t i = start; i < end; ++i)
      if (static_cast<int>(words[i].size()) == len - 1)
        for (int g = 1; g <= n; ++g) {
          auto w = words[i];
          w.push_back(g);
          words.push_back(std::move(w));
        }
  }
  for (const auto& prefix : words) {
    if (static_cast<int>(prefix.size()) > b.max_prefix) continue;
    for (const auto& period : words) {
      if (period.empty() || static_cast<int>(period.size()) > b.max_period) continue;
      shapes.push_back(Component::make_nonroot(prefix, period));
    }
  }
  std::sort(shapes.begin(), shapes.end());
  return shapes;
}

void nonroot_multisets(const std::vector<Component>& shapes, size_t from, int left,
                       int multiplicity, Extras& current, std::vector<Extras>& out) {
  out.push_back(current);
  if (left == 0) return;
  for (size_t i = from; i < shapes.size(); ++i)
    for (int count = 1; count <= std::min(left, multiplicity); ++count) {
      current.emplace_back(shapes[i], count);
      nonroot_multisets(shapes, i + 1, left - count, multiplicity, current, out);
      current.pop_back();
    }
}

std::vector<Component> expand(const Extras& extras) {
  std::vector<Component> out;
  for (const auto& [comp, count] : extras)
    for (int i = 0; i < count; ++i) out.push_back(comp);
  return out;
}

// Canonical candidate order: fewer components first, then smaller total
// signature length, then lexicographic on the expanded component list.
bool extras_before(const Extras& a, const Extras& b) {
  auto key = [](const Extras& e) {
    int total = 0, length = 0;
    for (const auto& [comp, count] : e) {
      total += count;
      length += count * static_cast<int>(comp.prefix.size() + comp.period.size());
    }
    return std::pair<int, int>(total, length);
  };
  auto ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb;
  auto ea = expand(a), eb = expand(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

std::vector<Extras> enumerate_extras(const Signature& sig, const Bounds& b) {
  std::vector<Extras> nonroots;
  Extras current;
  nonroot_multisets(nonroot_shapes(sig.num_functions(), b), 0, b.max_extra_nonroots,
                    b.max_multiplicity, current, nonroots);
  std::vector<Extras> out;
  for (int roots = 0; roots <= b.max_extra_roots; ++roots)
    for (const auto& tail : nonroots) {
      if (sig.num_constants() == 0 && roots == 0 && tail.empty()) continue;
      Extras extras;
      if (roots > 0) extras.emplace_back(Component::make_root(), roots);
      extras.insert(extras.end(), tail.begin(), tail.end());
      out.push_back(std::move(extras));
    }
  std::sort(out.begin(), out.end(), extras_before);
  return out;
}

// The canonical partition of the domain: an address falls into the cell named
// by the state of the structured domain acceptor it reaches, together with
// its length clipped to the granularity and its length modulo the
// granularity. Cells refine components, and their unions include every
// whole-component and depth-prefix coloring.
struct CellSpace {
  Dfa product;                                // domain acceptor x length classes
  std::vector<int> cells;                     // accepting product states, canonical order
};

CellSpace build_cells(const Dfa& dom, int granularity) {
  int clip = granularity;
  int modulus = std::max(1, granularity);
  auto step = [&](int cls) {
    int mn = cls / modulus, md = cls % modulus;
    return std::min(mn + 1, clip) * modulus + (md + 1) % modulus;
  };
  CellSpace space;
  space.product.alphabet = dom.alphabet;
  space.product.initial = 0;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> origin;
  std::deque<std::pair<int, int>> queue;
  index[{dom.initial, 0}] = 0;
  origin.push_back({dom.initial, 0});
  queue.push_back({dom.initial, 0});
  while (!queue.empty()) {
    auto [e, cls] = queue.front();
    queue.pop_front();
    std::vector<int> row;
    for (int letter = 0; letter < dom.alphabet; ++letter) {
      std::pair<int, int> to{dom.delta[e][letter], step(cls)};
      auto [it, inserted] = index.emplace(to, static_cast<int>(origin.size()));
      if (inserted) {
        origin.push_back(to);
        queue.push_back(to);
      }
      row.push_back(it->second);
    }
    space.product.delta.push_back(std::move(row));
    space.product.accepting.push_back(dom.accepting[e]);
  }
  for (int s = 0; s < space.product.num_states(); ++s)
    if (space.product.accepting[s]) space.cells.push_back(s);
  std::sort(space.cells.begin(), space.cells.end(),
            [&](int a, int bb) { return origin[a] < origin[bb]; });
  return space;
}

// Next size-preserving combination of bit positions, lexicographic.
bool advance(std::vector<int>& idx, int nbits) {
  int c = static_cast<int>(idx.size());
  for (int i = c - 1; i >= 0; --i) {
    if (idx[i] < nbits - (c - i)) {
      ++idx[i];
      for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

int sns_size(const SnSFormulaPtr& f) {
  int total = 1;
  for (const auto& kid : f->kids) total += sns_size(kid);
  return total;
}

// Conjuncts of the top-level conjunction; each is evaluated separately so a
// candidate failing an early conjunct skips the rest.
std::vector<FormulaPtr> split_conj(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::And) {
    auto left = split_conj(f->lhs), right = split_conj(f->rhs);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
  return {f};
}

}  // namespace

Verdict solve(const FormulaPtr& f, const Signature& sig, const Bounds& b) {
  sig.check();
  validate(f, sig, Closedness::Required);
  b.check();
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(b.budget_seconds));

  std::vector<SnSFormulaPtr> goals;
  for (const auto& part : split_conj(f))
    goals.push_back(build_mod(normalize(flatten(part).formula()), sig));
  // Cheap conjuncts first: most candidates fail on some conjunct, and a small
  // one (a ground query literal, say) rejects them at a fraction of the cost
  // of the full definitional biconditionals.
  std::stable_sort(goals.begin(), goals.end(),
                   [](const SnSFormulaPtr& a, const SnSFormulaPtr& b) {
                     return sns_size(a) < sns_size(b);
                   });

  Verdict verdict;
  verdict.bounds = b;
  int m = sig.num_predicates();
  std::vector<Extras> multisets = enumerate_extras(sig, b);

  for (size_t mi = 0; mi < multisets.size(); ++mi) {
    ModelPresentation base{sig, multisets[mi], {}};
    validate(base);
    RegularSet structured = embed(base);
    RegularSet d{structured.n, structured.dfa.minimized()};
    if (!check_domain(d, sig))
      throw Error(ErrorCode::InternalLimit, "enumerated domain failed the domain check");

    CellSpace space = build_cells(structured.dfa, b.granularity);
    int cells = static_cast<int>(space.cells.size());
    int nbits = m * cells;

    for (int colored = 0; colored <= nbits; ++colored) {
      std::vector<int> idx(colored);
      for (int i = 0; i < colored; ++i) idx[i] = i;
      do {
        if (std::chrono::steady_clock::now() > deadline) {
          verdict.budget_exhausted = true;
          std::ostringstream frontier;
          frontier << "stopped in component multiset " << (mi + 1) << " of "
                   << multisets.size() << " at colorings with " << colored << " of "
                   << nbits << " cells";
          verdict.frontier = frontier.str();
          return verdict;
        }
        ++verdict.candidates;

        std::vector<RegularSet> preds(m, RegularSet::none(d.n));
        std::vector<char> any(m, 0);
        Dfa masked = space.product;
        for (int l = 0; l < m; ++l) {
          std::fill(masked.accepting.begin(), masked.accepting.end(), 0);
          bool nonempty = false;
          for (int pos : idx)
            if (pos / cells == l) {
              masked.accepting[space.cells[pos % cells]] = 1;
              nonempty = true;
            }
          if (nonempty) {
            preds[l] = RegularSet{d.n, masked.minimized()};
            any[l] = 1;
          }
        }
        // Every cell is an accepting state of the domain automaton, so each
        // coloring is a subset of the domain already; bind it directly and
        // skip the defensive re-clip SetEnv::make does for arbitrary input.
        SetEnv env;
        env.n = d.n;
        env.sets.emplace(SnSSignature::domain_var, d);
        for (int l = 0; l < m; ++l)
          env.sets.emplace("Y" + std::to_string(l + 1), preds[l]);

        bool ok = true;
        for (const auto& goal : goals)
          if (!eval_fo(goal, env).as_bool()) {
            ok = false;
            break;
          }
        if (!ok) continue;

        ModelPresentation witness{sig, multisets[mi], {}};
        for (int l = 0; l < m; ++l)
          if (any[l]) witness.predicates[sig.predicates[l]] = to_expression(preds[l]);
        if (!eval_sentence(witness, f))
          throw Error(ErrorCode::InternalLimit, "witness failed re-verification");
        verdict.sat = true;
        verdict.witness = std::move(witness);
        return verdict;
      } while (advance(idx, nbits));
    }
  }
  return verdict;
}

FormulaPtr query_formula(const Query& q) {
  std::vector<FormulaPtr> parts;
  for (const auto& lit : q.literals) {
    FormulaPtr atom = Formula::atom(lit.pred, lit.term);
    parts.push_back(lit.positive ? atom : Formula::negate(atom));
  }
  FormulaPtr body = conj_all(parts);
  std::set<std::string> free = free_variables(body);
  for (auto it = free.rbegin(); it != free.rend(); ++it)
    body = Formula::exists(*it, body);
  return body;
}

EntailReport entail(const Program& p, const Query& q, const Signature& sig,
                    const Bounds& b) {
  validate(p, sig);
  validate(q, sig);
  FormulaPtr defs = completion_defs(p, sig).conjunction();
  FormulaPtr qf = query_formula(q);
  EntailReport report;
  report.against_query = solve(Formula::conj(defs, Formula::negate(qf)), sig, b);
  report.against_negation = solve(Formula::conj(defs, qf), sig, b);
  return report;
}

}  // namespace monlog
