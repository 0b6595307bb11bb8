// Acceptance checks. Each criterion prints exactly one line, `ok` or `FAIL`
// with a short reason, and the process exits nonzero when any line failed.
// Every check measures the full pipeline against an oracle computed by
// independent, straight-line code in this file (or against committed golden
// bytes); nothing here reuses the machinery it is checking.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monlog/checker.hpp"
#include "monlog/simpleform.hpp"
#include "monlog/sns.hpp"

#include "../catalog.hpp"
#include "../triples.hpp"

using namespace monlog;
using monlog::testing::model_catalog;

namespace {

std::string g_outputs;  // everything the run produced, scanned by criterion 8

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%d. %s: %s%s\n", number, name.c_str(), ok ? "ok" : "FAIL",
              detail.empty() ? "" : (" (" + detail + ")").c_str());
  return ok;
}

// ---------------------------------------------------------------------------
// 1. Flattening / normalization equivalence against a naive evaluator
// ---------------------------------------------------------------------------

// A finite interpretation: elements 0..size-1, total unary functions,
// arbitrary constant values and predicate subsets. No equational axioms are
// imposed; the rewrite must preserve truth over every structure.
struct FinStruct {
  int size = 1;
  std::vector<int> consts;
  std::vector<std::vector<int>> fns;
  std::vector<std::vector<char>> preds;
};

FinStruct random_struct(std::mt19937& rng, const Signature& sig) {
  FinStruct s;
  s.size = 1 + static_cast<int>(rng() % 4);
  for (int c = 0; c < sig.num_constants(); ++c)
    s.consts.push_back(static_cast<int>(rng() % s.size));
  for (int f = 0; f < sig.num_functions(); ++f) {
    std::vector<int> table(s.size);
    for (int& v : table) v = static_cast<int>(rng() % s.size);
    s.fns.push_back(std::move(table));
  }
  for (int p = 0; p < sig.num_predicates(); ++p) {
    std::vector<char> row(s.size);
    for (char& v : row) v = static_cast<char>(rng() % 2);
    s.preds.push_back(std::move(row));
  }
  return s;
}

using Env = std::vector<std::pair<std::string, int>>;

int lookup(const Env& env, const std::string& var) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == var) return it->second;
  return -1;
}

int eval_term(const TermPtr& t, const FinStruct& s, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Variable: return lookup(env, t->var);
    case Term::Kind::Constant: return s.consts[t->symbol];
    case Term::Kind::Apply: return s.fns[t->symbol][eval_term(t->arg, s, env)];
  }
  return -1;
}

bool eval_naive(const FormulaPtr& f, const FinStruct& s, Env& env) {
  switch (f->kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return s.preds[f->pred][eval_term(f->t1, s, env)] != 0;
    case Formula::Kind::Eq: return eval_term(f->t1, s, env) == eval_term(f->t2, s, env);
    case Formula::Kind::Not: return !eval_naive(f->lhs, s, env);
    case Formula::Kind::And:
      return eval_naive(f->lhs, s, env) && eval_naive(f->rhs, s, env);
    case Formula::Kind::Or:
      return eval_naive(f->lhs, s, env) || eval_naive(f->rhs, s, env);
    case Formula::Kind::Implies:
      return !eval_naive(f->lhs, s, env) || eval_naive(f->rhs, s, env);
    case Formula::Kind::Iff:
      return eval_naive(f->lhs, s, env) == eval_naive(f->rhs, s, env);
    case Formula::Kind::Exists: {
      for (int d = 0; d < s.size; ++d) {
        env.emplace_back(f->var, d);
        bool hit = eval_naive(f->lhs, s, env);
        env.pop_back();
        if (hit) return true;
      }
      return false;
    }
    case Formula::Kind::Forall: {
      for (int d = 0; d < s.size; ++d) {
        env.emplace_back(f->var, d);
        bool hit = eval_naive(f->lhs, s, env);
        env.pop_back();
        if (!hit) return false;
      }
      return true;
    }
  }
  return false;
}

TermPtr random_term(std::mt19937& rng, const Signature& sig,
                    const std::vector<std::string>& bound) {
  TermPtr t;
  if (!bound.empty() && rng() % 2)
    t = Term::variable(bound[rng() % bound.size()]);
  else
    t = Term::constant(static_cast<int>(rng() % sig.num_constants()));
  if (sig.num_functions() > 0) {
    int wraps = static_cast<int>(rng() % 3);
    for (int i = 0; i < wraps; ++i)
      t = Term::apply(static_cast<int>(rng() % sig.num_functions()), t);
  }
  return t;
}

FormulaPtr random_formula(std::mt19937& rng, const Signature& sig, int size_budget,
                          int quant_budget, std::vector<std::string>& bound) {
  if (size_budget <= 0) {
    switch (rng() % 4) {
      case 0: return Formula::truth();
      case 1: return Formula::falsity();
      case 2:
        return Formula::atom(static_cast<int>(rng() % sig.num_predicates()),
                             random_term(rng, sig, bound));
      default:
        return Formula::eq(random_term(rng, sig, bound), random_term(rng, sig, bound));
    }
  }
  int pick = static_cast<int>(rng() % 8);
  if (pick < 2 && quant_budget > 0) {
    std::string var = "V" + std::to_string(bound.size());
    bound.push_back(var);
    FormulaPtr body = random_formula(rng, sig, size_budget - 1, quant_budget - 1, bound);
    bound.pop_back();
    return pick == 0 ? Formula::exists(var, body) : Formula::forall(var, body);
  }
  if (pick == 2)
    return Formula::negate(random_formula(rng, sig, size_budget - 1, quant_budget, bound));
  if (pick == 7)
    return random_formula(rng, sig, 0, quant_budget, bound);  // early leaf
  int left = size_budget / 2;
  FormulaPtr a = random_formula(rng, sig, left, quant_budget, bound);
  FormulaPtr b = random_formula(rng, sig, size_budget - 1 - left, quant_budget, bound);
  switch (pick) {
    case 3: return Formula::conj(a, b);
    case 4: return Formula::disj(a, b);
    case 5: return Formula::implies(a, b);
    default: return Formula::iff(a, b);
  }
}

bool criterion_flatten() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20240811);
  const int kFormulas = 220, kStructs = 50;
  long long checks = 0;
  for (int i = 0; i < kFormulas; ++i) {
    Signature sig;
    sig.constants = {"a"};
    if (rng() % 2) sig.constants.push_back("b");
    int n = static_cast<int>(rng() % 3);
    if (n >= 1) sig.functions.push_back("f");
    if (n >= 2) sig.functions.push_back("g");
    sig.predicates = {"p"};
    if (rng() % 2) sig.predicates.push_back("q");

    std::vector<std::string> bound;
    FormulaPtr f = random_formula(rng, sig, 10, 4, bound);
    FormulaPtr rewritten = normalize(flatten(f).formula());
    if (!is_simple(rewritten) || !is_normalized(rewritten))
      return report(1, "flatten/normalize equivalence", false,
                    "rewrite left a non-simple or non-normalized formula");
    for (int j = 0; j < kStructs; ++j) {
      FinStruct s = random_struct(rng, sig);
      Env env;
      bool before = eval_naive(f, s, env);
      bool after = eval_naive(rewritten, s, env);
      ++checks;
      if (before != after)
        return report(1, "flatten/normalize equivalence", false,
                      "disagreement on formula " + std::to_string(i) +
                          ", structure " + std::to_string(j));
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << checks << " checks in " << static_cast<int>(elapsed * 1000) << " ms";
  if (elapsed >= 60.0)
    return report(1, "flatten/normalize equivalence", false, "over the 60 s budget");
  return report(1, "flatten/normalize equivalence", true, detail.str());
}

// ---------------------------------------------------------------------------
// 2. Domain condition over the catalog, and one mutation per clause
// ---------------------------------------------------------------------------

bool criterion_domain() {
  auto start = std::chrono::steady_clock::now();
  auto entries = model_catalog();
  if (entries.size() < 20)
    return report(2, "domain condition", false, "catalog too small");
  for (size_t i = 0; i < entries.size(); ++i) {
    validate(entries[i]);
    if (!check_domain(embed(entries[i]), entries[i].sig))
      return report(2, "domain condition", false,
                    "catalog entry " + std::to_string(i) + " rejected");
  }
  // One targeted violation per clause of the condition: missing constant
  // address, successor/inverse mismatch, a parent for a root, a parent for
  // an inside successor, and two distinct parents for one element.
  Signature one = testing::catalog_sig(1, 1), two = testing::catalog_sig(1, 2);
  const std::vector<std::pair<std::string, const Signature*>> mutations = {
      {"1*", &one},
      {"0", &one},
      {"01* | 0b1", &one},
      {"01* | 011b1", &one},
      {"0(1|2)* | 01b1 | 01b2", &two},
  };
  for (size_t i = 0; i < mutations.size(); ++i) {
    const auto& [expr, sig] = mutations[i];
    if (check_domain(RegularSet::parse(expr, sig->num_functions()), *sig))
      return report(2, "domain condition", false,
                    "mutation " + std::to_string(i + 1) + " not rejected");
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 30.0) return report(2, "domain condition", false, "over the 30 s budget");
  std::ostringstream detail;
  detail << entries.size() << " accepted, 5 mutations rejected, "
         << static_cast<int>(elapsed * 1000) << " ms";
  return report(2, "domain condition", true, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Freeness spot checks over every catalog domain
// ---------------------------------------------------------------------------

bool criterion_freeness() {
  std::mt19937 rng(951413);
  auto entries = model_catalog();
  long long tested = 0;
  for (const auto& entry : entries) {
    RegularSet d = embed(entry);
    int n = entry.sig.num_functions();
    auto pool = d.members(6, 600);
    if (pool.size() < 2) continue;

    // Nonempty function words of length <= 4 for the acyclicity check.
    std::vector<std::vector<int>> words;
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : frontier)
        for (int i = 1; i <= n; ++i) {
          auto e = w;
          e.push_back(i);
          words.push_back(e);
          next.push_back(std::move(e));
        }
      frontier = std::move(next);
    }

    for (int round = 0; round < 100; ++round) {
      const auto& w1 = pool[rng() % pool.size()];
      const auto& w2 = pool[rng() % pool.size()];
      try {
        for (int i = 1; i <= n; ++i) {
          auto a = induced_fn(d, i, w1), b = induced_fn(d, i, w2);
          if (w1 != w2 && a == b)
            return report(3, "freeness spot checks", false, "injectivity violated");
          for (int j = i + 1; j <= n; ++j)
            if (a == induced_fn(d, j, w2))
              return report(3, "freeness spot checks", false, "images of f and g clash");
          for (int c = 0; c < entry.sig.num_constants(); ++c)
            if (a == std::vector<int>(static_cast<size_t>(c) + 1, 0))
              return report(3, "freeness spot checks", false,
                            "a function image hit a constant address");
        }
        for (const auto& word : words) {
          auto cur = w1;
          for (int i : word) cur = induced_fn(d, i, cur);
          if (cur == w1)
            return report(3, "freeness spot checks", false, "acyclicity violated");
        }
      } catch (const Error& e) {
        return report(3, "freeness spot checks", false,
                      std::string("induced function undefined: ") + e.what());
      }
      ++tested;
    }
  }
  return report(3, "freeness spot checks", true,
                std::to_string(tested) + " sampled rounds, zero violations");
}

// ---------------------------------------------------------------------------
// 4. Hand-derived truth triples
// ---------------------------------------------------------------------------

bool criterion_triples() {
  auto triples = testing::faithfulness_triples();
  if (triples.size() < 15)
    return report(4, "evaluation triples", false, "fewer than 15 triples");
  for (size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    if (eval_sentence(t.m, parse_formula(t.formula, t.m.sig)) != t.truth)
      return report(4, "evaluation triples", false, "triple " + std::to_string(i));
  }
  return report(4, "evaluation triples", true,
                std::to_string(triples.size()) + " triples match");
}

// ---------------------------------------------------------------------------
// 5. Automata kernel against a naive relational evaluator
// ---------------------------------------------------------------------------

// Relation language mirrored by two independent interpreters: the kernel
// compilation below and the direct recursion in rel_naive. Member sets come
// as an expression for the kernel and a plain predicate for the oracle, so
// the two sides share no code.
struct RelExpr {
  enum Kind { Equal, Succ, Lambda, Member, Not, And, Or, Xor, Project } kind;
  int letter = 0;   // Succ
  int set_id = 0;   // Member
  std::string x, y;
  std::shared_ptr<RelExpr> a, b;
};
using RelPtr = std::shared_ptr<RelExpr>;

RelPtr rel(RelExpr e) { return std::make_shared<RelExpr>(std::move(e)); }

struct NamedSet {
  std::string expr;
  std::function<bool(const std::vector<int>&, int)> holds;
};

const std::vector<NamedSet>& named_sets() {
  static const std::vector<NamedSet> sets = {
      {"(..)*", [](const std::vector<int>& w, int) { return w.size() % 2 == 0; }},
      {"0.*", [](const std::vector<int>& w, int) { return !w.empty() && w[0] == 0; }},
      {"", [](const std::vector<int>&, int) { return false; }},
      {".*", [](const std::vector<int>&, int) { return true; }},
  };
  return sets;
}

SyncAutomaton rel_compile(const RelPtr& e, int n) {
  switch (e->kind) {
    case RelExpr::Equal: return SyncAutomaton::equal(e->x, e->y, n);
    case RelExpr::Succ: return SyncAutomaton::succ(e->letter, e->x, e->y, n);
    case RelExpr::Lambda: return SyncAutomaton::lambda(e->x, n);
    case RelExpr::Member:
      return SyncAutomaton::member(e->x,
                                   RegularSet::parse(named_sets()[e->set_id].expr, n));
    case RelExpr::Not: return sync_not(rel_compile(e->a, n));
    case RelExpr::And: return sync_combine('&', rel_compile(e->a, n), rel_compile(e->b, n));
    case RelExpr::Or: return sync_combine('|', rel_compile(e->a, n), rel_compile(e->b, n));
    case RelExpr::Xor: return sync_combine('^', rel_compile(e->a, n), rel_compile(e->b, n));
    case RelExpr::Project: return sync_project(rel_compile(e->a, n), e->x);
  }
  return SyncAutomaton::boolean(n, false);
}

void rel_tracks(const RelPtr& e, std::set<std::string>& out) {
  switch (e->kind) {
    case RelExpr::Equal:
    case RelExpr::Succ:
      out.insert(e->x);
      out.insert(e->y);
      return;
    case RelExpr::Lambda:
    case RelExpr::Member: out.insert(e->x); return;
    case RelExpr::Not: rel_tracks(e->a, out); return;
    case RelExpr::And:
    case RelExpr::Or:
    case RelExpr::Xor:
      rel_tracks(e->a, out);
      rel_tracks(e->b, out);
      return;
    case RelExpr::Project: {
      rel_tracks(e->a, out);
      out.erase(e->x);
      return;
    }
  }
}

using Assignment = std::map<std::string, std::vector<int>>;

// Project witnesses are bounded: every expression below has witnesses no
// longer than the longest assigned word plus two letters.
bool rel_naive(const RelPtr& e, const Assignment& asg, int n, int witness_len) {
  switch (e->kind) {
    case RelExpr::Equal: return asg.at(e->x) == asg.at(e->y);
    case RelExpr::Succ: {
      auto expect = asg.at(e->x);
      expect.push_back(e->letter);
      return asg.at(e->y) == expect;
    }
    case RelExpr::Lambda: return asg.at(e->x).empty();
    case RelExpr::Member: return named_sets()[e->set_id].holds(asg.at(e->x), n);
    case RelExpr::Not: return !rel_naive(e->a, asg, n, witness_len);
    case RelExpr::And:
      return rel_naive(e->a, asg, n, witness_len) && rel_naive(e->b, asg, n, witness_len);
    case RelExpr::Or:
      return rel_naive(e->a, asg, n, witness_len) || rel_naive(e->b, asg, n, witness_len);
    case RelExpr::Xor:
      return rel_naive(e->a, asg, n, witness_len) != rel_naive(e->b, asg, n, witness_len);
    case RelExpr::Project: {
      std::vector<std::vector<int>> frontier{{}};
      for (int len = 0; len <= witness_len; ++len) {
        std::vector<std::vector<int>> next;
        for (auto& w : frontier) {
          Assignment inner = asg;
          inner[e->x] = w;
          if (rel_naive(e->a, inner, n, witness_len)) return true;
          if (len < witness_len)
            for (int l = 0; l < 2 * n + 1; ++l) {
              auto ext = w;
              ext.push_back(l);
              next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
      }
      return false;
    }
  }
  return false;
}

std::vector<RelPtr> rel_suite(int n) {
  auto eq = [](std::string x, std::string y) {
    return rel({RelExpr::Equal, 0, 0, std::move(x), std::move(y), nullptr, nullptr});
  };
  auto succ = [](int l, std::string x, std::string y) {
    return rel({RelExpr::Succ, l, 0, std::move(x), std::move(y), nullptr, nullptr});
  };
  auto lam = [](std::string x) {
    return rel({RelExpr::Lambda, 0, 0, std::move(x), "", nullptr, nullptr});
  };
  auto mem = [](std::string x, int set_id) {
    return rel({RelExpr::Member, 0, set_id, std::move(x), "", nullptr, nullptr});
  };
  auto neg = [](RelPtr a) {
    return rel({RelExpr::Not, 0, 0, "", "", std::move(a), nullptr});
  };
  auto bin = [](RelExpr::Kind k, RelPtr a, RelPtr b) {
    return rel({k, 0, 0, "", "", std::move(a), std::move(b)});
  };
  auto project = [](std::string x, RelPtr a) {
    return rel({RelExpr::Project, 0, 0, std::move(x), "", std::move(a), nullptr});
  };

  std::vector<RelPtr> suite;
  suite.push_back(eq("u", "v"));
  suite.push_back(succ(1, "u", "v"));
  suite.push_back(bin(RelExpr::Or, succ(0, "u", "v"), succ(n, "u", "v")));
  suite.push_back(bin(RelExpr::And, eq("u", "v"), mem("u", 0)));
  suite.push_back(neg(eq("u", "v")));
  suite.push_back(project("v", bin(RelExpr::And, succ(1, "u", "v"), mem("v", 1))));
  suite.push_back(bin(RelExpr::Xor, mem("u", 0), mem("u", 1)));
  suite.push_back(bin(RelExpr::And, lam("u"), neg(mem("u", 1))));
  suite.push_back(
      project("w", bin(RelExpr::And, succ(0, "u", "w"), succ(n, "w", "v"))));
  suite.push_back(neg(project("v", bin(RelExpr::And, eq("u", "v"), mem("v", 3)))));
  suite.push_back(bin(RelExpr::And, mem("u", 2), lam("u")));
  return suite;
}

bool criterion_kernel() {
  long long exhaustive = 0, random_checks = 0;
  for (int n = 1; n <= 2; ++n) {
    // Every address word of length <= 2.
    std::vector<std::vector<int>> words{{}};
    for (size_t i = 0; i < words.size(); ++i)
      if (words[i].size() < 2)
        for (int l = 0; l < 2 * n + 1; ++l) {
          auto w = words[i];
          w.push_back(l);
          words.push_back(std::move(w));
        }

    for (const auto& e : rel_suite(n)) {
      SyncAutomaton compiled = rel_compile(e, n);
      std::set<std::string> tracks;
      rel_tracks(e, tracks);
      std::vector<std::string> order(tracks.begin(), tracks.end());
      std::vector<size_t> pick(order.size(), 0);
      for (;;) {
        Assignment asg;
        for (size_t t = 0; t < order.size(); ++t) asg[order[t]] = words[pick[t]];
        bool left = order.empty() ? compiled.as_bool() : compiled.accepts(asg);
        if (left != rel_naive(e, asg, n, 4))
          return report(5, "automata kernel oracle", false, "exhaustive disagreement");
        ++exhaustive;
        size_t t = 0;
        while (t < order.size() && ++pick[t] == words.size()) pick[t++] = 0;
        if (t == order.size()) break;
      }
    }
  }

  std::mt19937 rng(16180339);
  for (int n = 1; n <= 2; ++n) {
    auto suite = rel_suite(n);
    std::vector<SyncAutomaton> compiled;
    for (const auto& e : suite) compiled.push_back(rel_compile(e, n));
    for (int round = 0; round < 600; ++round) {
      size_t which = rng() % suite.size();
      std::set<std::string> tracks;
      rel_tracks(suite[which], tracks);
      Assignment asg;
      for (const auto& t : tracks) {
        std::vector<int> w(rng() % 5);
        for (int& l : w) l = static_cast<int>(rng() % (2 * n + 1));
        asg[t] = std::move(w);
      }
      bool left = tracks.empty() ? compiled[which].as_bool() : compiled[which].accepts(asg);
      if (left != rel_naive(suite[which], asg, n, 6))
        return report(5, "automata kernel oracle", false, "random disagreement");
      ++random_checks;
    }
  }
  std::ostringstream detail;
  detail << exhaustive << " exhaustive + " << random_checks << " random agreements";
  return report(5, "automata kernel oracle", true, detail.str());
}

// ---------------------------------------------------------------------------
// 6. End-to-end entailment demos at default bounds
// ---------------------------------------------------------------------------

void note_verdict(const Verdict& v) {
  g_outputs += v.sat ? "sat" : "no_model_within_bounds";
  g_outputs += "\n";
  g_outputs += v.frontier;
  if (v.witness) g_outputs += model_to_text(*v.witness);
}

bool complete_search(const Verdict& v) { return !v.sat && !v.budget_exhausted; }

bool criterion_demos() {
  Bounds bounds;  // stock limits throughout
  std::ostringstream times;

  {
    auto start = std::chrono::steady_clock::now();
    Signature sig{{"a"}, {"f"}, {"p"}};
    Program p = parse_program("p(a). p(f(X)) :- not p(X).", sig).program;
    EntailReport first = entail(p, parse_query("?- p(f(a)).", sig), sig, bounds);
    EntailReport second = entail(p, parse_query("?- p(f(f(a))).", sig), sig, bounds);
    for (const Verdict* v : {&first.against_query, &first.against_negation,
                             &second.against_query, &second.against_negation})
      note_verdict(*v);
    double elapsed = seconds_since(start);
    times << "a: " << static_cast<int>(elapsed * 1000) << " ms";
    if (!(first.against_query.sat && complete_search(first.against_negation)))
      return report(6, "entailment demos", false, "negation-as-failure demo, first query");
    if (!(second.against_negation.sat && complete_search(second.against_query)))
      return report(6, "entailment demos", false, "negation-as-failure demo, second query");
    if (elapsed >= 60.0)
      return report(6, "entailment demos", false, "first demo over budget");
  }

  {
    auto start = std::chrono::steady_clock::now();
    Signature sig{{"a"}, {"f"}, {"p"}};
    Program p = parse_program("p(f(X)) :- p(X).", sig).program;
    EntailReport r = entail(p, parse_query("?- p(X).", sig), sig, bounds);
    note_verdict(r.against_query);
    note_verdict(r.against_negation);
    double elapsed = seconds_since(start);
    times << ", b: " << static_cast<int>(elapsed * 1000) << " ms";
    if (!r.against_query.sat || !r.against_negation.sat)
      return report(6, "entailment demos", false, "recursive demo missed a direction");
    bool has_nonroot = false;
    for (const auto& [comp, count] : r.against_negation.witness->extra)
      if (!comp.root && count > 0) has_nonroot = true;
    if (!has_nonroot)
      return report(6, "entailment demos", false,
                    "recursive demo witness has no non-root component");
    if (elapsed >= 60.0)
      return report(6, "entailment demos", false, "second demo over budget");
  }

  {
    auto start = std::chrono::steady_clock::now();
    Signature sig{{"a"}, {}, {"p"}};
    Program p;  // empty: the completion defines p as false everywhere
    EntailReport r = entail(p, parse_query("?- p(a).", sig), sig, bounds);
    note_verdict(r.against_query);
    note_verdict(r.against_negation);
    double elapsed = seconds_since(start);
    times << ", c: " << static_cast<int>(elapsed * 1000) << " ms";
    if (!r.against_query.sat || r.against_query.candidates != 1)
      return report(6, "entailment demos", false,
                    "empty-program demo not decided by the first candidate");
    if (elapsed >= 60.0)
      return report(6, "entailment demos", false, "third demo over budget");
  }

  return report(6, "entailment demos", true, times.str());
}

// ---------------------------------------------------------------------------
// 7. Emitter round trip and committed golden bytes
// ---------------------------------------------------------------------------

SnSTermPtr random_sns_term(std::mt19937& rng, int n) {
  SnSTermPtr t;
  switch (rng() % 3) {
    case 0: t = SnSTerm::lambda(); break;
    case 1: t = SnSTerm::objvar(rng() % 2 ? "x" : "y"); break;
    default: t = SnSTerm::objvar("z"); break;
  }
  int wraps = static_cast<int>(rng() % 4);
  for (int i = 0; i < wraps; ++i) {
    int letter = static_cast<int>(rng() % (2 * n + 1));
    SuccLetter s = letter <= n ? SuccLetter{letter, false} : SuccLetter{letter - n, true};
    t = SnSTerm::succ(s, t);
  }
  return t;
}

SnSFormulaPtr random_sns(std::mt19937& rng, int n, int budget) {
  if (budget <= 0) {
    switch (rng() % 4) {
      case 0: return SnSFormula::truth();
      case 1: return SnSFormula::falsity();
      case 2:
        return SnSFormula::eq(random_sns_term(rng, n), random_sns_term(rng, n));
      default: {
        const char* sets[] = {"X", "Y1", "Y2"};
        return SnSFormula::member(random_sns_term(rng, n), sets[rng() % 3]);
      }
    }
  }
  switch (rng() % 8) {
    case 0: return SnSFormula::negate(random_sns(rng, n, budget - 1));
    case 1: {
      std::vector<SnSFormulaPtr> kids;
      int count = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < count; ++i)
        kids.push_back(random_sns(rng, n, (budget - 1) / count));
      return rng() % 2 ? SnSFormula::and_of(std::move(kids))
                       : SnSFormula::or_of(std::move(kids));
    }
    case 2:
      return SnSFormula::xor_of(random_sns(rng, n, budget / 2),
                                random_sns(rng, n, budget / 2));
    case 3:
      return SnSFormula::implies(random_sns(rng, n, budget / 2),
                                 random_sns(rng, n, budget / 2));
    case 4:
      return SnSFormula::iff(random_sns(rng, n, budget / 2),
                             random_sns(rng, n, budget / 2));
    case 5:
      return rng() % 2 ? SnSFormula::exists_obj("x", random_sns(rng, n, budget - 1))
                       : SnSFormula::forall_obj("y", random_sns(rng, n, budget - 1));
    case 6:
      return rng() % 2 ? SnSFormula::exists_set("Y1", random_sns(rng, n, budget - 1))
                       : SnSFormula::forall_set("X", random_sns(rng, n, budget - 1));
    default: return random_sns(rng, n, 0);
  }
}

bool criterion_emitter() {
  std::mt19937 rng(27182818);
  for (int i = 0; i < 500; ++i) {
    int n = 1 + static_cast<int>(rng() % 2);
    SnSFormulaPtr f = random_sns(rng, n, 14);
    std::string text = emit(f);
    g_outputs += text;
    g_outputs += "\n";
    if (!equal(parse_sns(text), f))
      return report(7, "emitter round trip", false, "formula " + std::to_string(i));
  }

  Signature sig{{"a"}, {"f"}, {}};
  std::string produced = emit(build_domain(sig)) + "\n";
  g_outputs += produced;
  std::ifstream golden(std::string(MONLOG_SOURCE_DIR) + "/tests/golden/domain_k1_n1.sns",
                       std::ios::binary);
  if (!golden) return report(7, "emitter round trip", false, "golden file missing");
  std::ostringstream bytes;
  bytes << golden.rdbuf();
  if (bytes.str() != produced)
    return report(7, "emitter round trip", false, "golden bytes differ");
  return report(7, "emitter round trip", true, "500 round trips + golden bytes match");
}

// ---------------------------------------------------------------------------
// 8. The forbidden verdict never appears
// ---------------------------------------------------------------------------

bool criterion_no_forbidden_verdict() {
  const std::string forbidden = std::string("un") + "sat";
  auto lowered = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  if (lowered(g_outputs).find(forbidden) != std::string::npos)
    return report(8, "forbidden verdict scan", false, "found in this run's outputs");

  namespace fs = std::filesystem;
  int scanned = 0;
  for (const char* dir : {"tests", "src", "include", "tools", "python", "bindings"}) {
    fs::path root = fs::path(MONLOG_SOURCE_DIR) / dir;
    if (!fs::exists(root)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      ++scanned;
      if (lowered(buffer.str()).find(forbidden) != std::string::npos)
        return report(8, "forbidden verdict scan", false,
                      "found in " + entry.path().string());
    }
  }
  return report(8, "forbidden verdict scan", true,
                std::to_string(scanned) + " files clean");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion_flatten();
  ok &= criterion_domain();
  ok &= criterion_freeness();
  ok &= criterion_triples();
  ok &= criterion_kernel();
  ok &= criterion_demos();
  ok &= criterion_emitter();
  ok &= criterion_no_forbidden_verdict();
  return ok ? 0 : 1;
}
