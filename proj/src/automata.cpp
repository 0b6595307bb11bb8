#include "monlog/automata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

namespace monlog {

namespace {
constexpr int kMaxTracks = 8;
constexpr long long kMaxTupleAlphabet = 250000;
}  // namespace

// ---------------------------------------------------------------------------
// Dfa
// ---------------------------------------------------------------------------

bool Dfa::accepts(const std::vector<int>& word) const {
  int s = initial;
  for (int a : word) {
    if (a < 0 || a >= alphabet)
      throw Error(ErrorCode::PreconditionViolation, "letter out of alphabet range");
    s = delta[s][a];
  }
  return accepting[s] != 0;
}

bool Dfa::is_empty() const {
  std::vector<char> seen(num_states(), 0);
  std::deque<int> queue{initial};
  seen[initial] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (accepting[s]) return false;
    for (int a = 0; a < alphabet; ++a)
      if (!seen[delta[s][a]]) {
        seen[delta[s][a]] = 1;
        queue.push_back(delta[s][a]);
      }
  }
  return true;
}

Dfa Dfa::minimized() const {
  // Reachable restriction.
  std::vector<int> order;
  std::vector<int> index(num_states(), -1);
  order.push_back(initial);
  index[initial] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < alphabet; ++a) {
      int t = delta[order[i]][a];
      if (index[t] < 0) {
        index[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }

  // Transitions renumbered to reachable-order indices, flattened row-major.
  int m = static_cast<int>(order.size());
  std::vector<int> tr(static_cast<size_t>(m) * alphabet);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < alphabet; ++a)
      tr[static_cast<size_t>(i) * alphabet + a] = index[delta[order[i]][a]];

  std::vector<int> cls(m);
  int classes = m > 0 ? 1 : 0;
  for (int i = 0; i < m; ++i) cls[i] = accepting[order[i]] ? 1 : 0;
  for (int i = 0; i < m; ++i)
    if (cls[i] == 1) {
      classes = 2;
      break;
    }

  // Moore refinement on the reachable part. Signatures are interned through a
  // hash map keyed by the (current class, successor classes) row; class ids
  // come out dense, first-occurrence ordered.
  struct RowHash {
    size_t operator()(const std::vector<int>& row) const {
      size_t h = 1469598103934665603ull;
      for (int v : row) {
        h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  for (;;) {
    std::unordered_map<std::vector<int>, int, RowHash> signature_ids;
    signature_ids.reserve(static_cast<size_t>(classes) * 2 + 8);
    std::vector<int> next(m);
    std::vector<int> sig(alphabet + 1);
    for (int i = 0; i < m; ++i) {
      sig[0] = cls[i];
      for (int a = 0; a < alphabet; ++a)
        sig[a + 1] = cls[tr[static_cast<size_t>(i) * alphabet + a]];
      next[i] = signature_ids.emplace(sig, signature_ids.size()).first->second;
    }
    int refined = static_cast<int>(signature_ids.size());
    if (refined == classes && next == cls) break;
    classes = refined;
    cls = std::move(next);
  }

  // Canonical breadth-first numbering of the quotient. Class ids are dense
  // in [0, classes), so the renumber table is a plain vector.
  std::vector<int> renumber(classes, -1);
  std::vector<int> reps;
  std::deque<int> queue{0};  // position of initial in `order` is 0
  renumber[cls[0]] = 0;
  reps.push_back(0);
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int a = 0; a < alphabet; ++a) {
      int t = tr[static_cast<size_t>(i) * alphabet + a];
      if (renumber[cls[t]] < 0) {
        renumber[cls[t]] = static_cast<int>(reps.size());
        reps.push_back(t);
        queue.push_back(t);
      }
    }
  }

  Dfa out;
  out.alphabet = alphabet;
  out.initial = 0;
  out.delta.assign(reps.size(), std::vector<int>(alphabet, 0));
  out.accepting.assign(reps.size(), 0);
  for (size_t q = 0; q < reps.size(); ++q) {
    int i = reps[q];
    out.accepting[q] = accepting[order[i]];
    for (int a = 0; a < alphabet; ++a)
      out.delta[q][a] = renumber[cls[tr[static_cast<size_t>(i) * alphabet + a]]];
  }
  return out;
}

Dfa dfa_product(const Dfa& a, const Dfa& b, char mode) {
  if (a.alphabet != b.alphabet)
    throw Error(ErrorCode::ArityMismatch, "product over mismatched alphabets");
  // Flat pair index when the full grid fits comfortably; a map otherwise.
  long long nb = b.num_states();
  long long grid = static_cast<long long>(a.num_states()) * nb;
  bool flat = grid <= (1 << 22);
  std::vector<int> flat_ids(flat ? static_cast<size_t>(grid) : 0, -1);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  auto intern = [&](int x, int y) {
    if (flat) {
      int& slot = flat_ids[static_cast<size_t>(x) * nb + y];
      if (slot < 0) {
        slot = static_cast<int>(states.size());
        states.emplace_back(x, y);
      }
      return slot;
    }
    auto [it, inserted] = ids.emplace(std::make_pair(x, y), states.size());
    if (inserted) states.emplace_back(x, y);
    return it->second;
  };
  Dfa out;
  out.alphabet = a.alphabet;
  out.initial = intern(a.initial, b.initial);
  for (size_t q = 0; q < states.size(); ++q) {
    auto [x, y] = states[q];
    out.delta.emplace_back(out.alphabet, 0);
    for (int l = 0; l < out.alphabet; ++l)
      out.delta[q][l] = intern(a.delta[x][l], b.delta[y][l]);
    bool fa = a.accepting[x] != 0, fb = b.accepting[y] != 0;
    bool acc = mode == '&' ? (fa && fb) : mode == '|' ? (fa || fb) : (fa != fb);
    out.accepting.push_back(acc ? 1 : 0);
  }
  return out;
}

Dfa dfa_complement(const Dfa& a) {
  Dfa out = a;
  for (auto& f : out.accepting) f = f ? 0 : 1;
  return out;
}

bool dfa_same_language(const Dfa& a, const Dfa& b) {
  return dfa_product(a, b, '^').is_empty();
}

Dfa determinize(int alphabet, const std::vector<std::vector<std::vector<int>>>& delta,
                const std::vector<int>& initials, const std::vector<char>& accepting) {
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    auto [it, inserted] = ids.emplace(subset, subsets.size());
    if (inserted) subsets.push_back(subset);
    return it->second;
  };
  Dfa out;
  out.alphabet = alphabet;
  out.initial = intern(initials);
  for (size_t q = 0; q < subsets.size(); ++q) {
    std::vector<int> subset = subsets[q];
    out.delta.emplace_back(alphabet, 0);
    for (int a = 0; a < alphabet; ++a) {
      std::vector<int> next;
      for (int s : subset)
        for (int t : delta[s][a]) next.push_back(t);
      out.delta[q][a] = intern(std::move(next));
    }
    bool acc = false;
    for (int s : subset) acc = acc || accepting[s];
    out.accepting.push_back(acc ? 1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// RegularSet
// ---------------------------------------------------------------------------

RegularSet RegularSet::none(int n) {
  RegularSet s;
  s.n = n;
  s.dfa.alphabet = 2 * n + 1;
  s.dfa.delta = {std::vector<int>(s.dfa.alphabet, 0)};
  s.dfa.accepting = {0};
  return s;
}

RegularSet RegularSet::all(int n) {
  RegularSet s = none(n);
  s.dfa.accepting = {1};
  return s;
}

RegularSet RegularSet::single(const std::vector<int>& word, int n) {
  RegularSet s;
  s.n = n;
  int sigma = 2 * n + 1;
  int len = static_cast<int>(word.size());
  s.dfa.alphabet = sigma;
  int dead = len + 1;
  s.dfa.delta.assign(len + 2, std::vector<int>(sigma, dead));
  s.dfa.accepting.assign(len + 2, 0);
  s.dfa.accepting[len] = 1;
  for (int i = 0; i < len; ++i) {
    if (word[i] < 0 || word[i] >= sigma)
      throw Error(ErrorCode::PreconditionViolation, "address letter out of range");
    s.dfa.delta[i][word[i]] = i + 1;
  }
  return s;
}

bool RegularSet::contains(const std::vector<int>& word) const { return dfa.accepts(word); }
bool RegularSet::is_empty() const { return dfa.is_empty(); }

RegularSet RegularSet::intersect(const RegularSet& other) const {
  RegularSet s;
  s.n = n;
  s.dfa = dfa_product(dfa, other.dfa, '&').minimized();
  return s;
}

RegularSet RegularSet::unite(const RegularSet& other) const {
  RegularSet s;
  s.n = n;
  s.dfa = dfa_product(dfa, other.dfa, '|').minimized();
  return s;
}

RegularSet RegularSet::minus(const RegularSet& other) const {
  return intersect(other.complement());
}

RegularSet RegularSet::complement() const {
  RegularSet s;
  s.n = n;
  s.dfa = dfa_complement(dfa).minimized();
  return s;
}

bool RegularSet::same_language(const RegularSet& other) const {
  return dfa_same_language(dfa, other.dfa);
}

std::vector<std::vector<int>> RegularSet::members(int max_len, size_t max_count) const {
  std::vector<std::vector<int>> out;
  std::deque<std::pair<int, std::vector<int>>> queue{{dfa.initial, {}}};
  while (!queue.empty() && out.size() < max_count) {
    auto [s, word] = queue.front();
    queue.pop_front();
    if (dfa.accepting[s]) out.push_back(word);
    if (static_cast<int>(word.size()) == max_len) continue;
    for (int a = 0; a < dfa.alphabet; ++a) {
      auto next = word;
      next.push_back(a);
      queue.emplace_back(dfa.delta[s][a], std::move(next));
    }
  }
  return out;
}

std::string letter_name(int letter, int n) {
  if (letter <= n) return std::to_string(letter);
  return "b" + std::to_string(letter - n);
}

std::string address_string(const std::vector<int>& word, int n) {
  if (word.empty()) return "Lam";
  std::ostringstream out;
  for (int a : word) out << letter_name(a, n);
  return out.str();
}

std::vector<int> parse_address(const std::string& text, int n) {
  std::vector<int> out;
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(msg, 1, static_cast<int>(i) + 1);
  };
  if (text == "Lam") return out;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == 'b') {
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        fail("expected digits after 'b'");
      // Take further digits only while the index stays in range, so "b11"
      // reads as b1 followed by the letter 1 when n is small.
      int v = text[i++] - '0';
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) &&
             v * 10 + (text[i] - '0') <= n)
        v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > n) fail("inverse letter out of range");
      out.push_back(n + v);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = c - '0';
      if (v > n) fail("letter out of range");
      out.push_back(v);
      ++i;
      continue;
    }
    fail(std::string("unexpected character '") + c + "' in address");
  }
  return out;
}

// Thompson construction for the expression syntax.
namespace {

struct RegexNfa {
  // edges[state] = list of (letter, target); letter -1 is epsilon.
  std::vector<std::vector<std::pair<int, int>>> edges;

  int fresh() {
    edges.emplace_back();
    return static_cast<int>(edges.size()) - 1;
  }
  void edge(int from, int letter, int to) { edges[from].emplace_back(letter, to); }
};

struct Frag {
  int start, accept;
};

struct RegexParser {
  const std::string& text;
  int n;
  size_t pos = 0;
  RegexNfa nfa;

  RegexParser(const std::string& t, int n_) : text(t), n(n_) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " in expression", 1, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_atom() {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return c == '(' || c == '.' || c == 'b' || std::isdigit(static_cast<unsigned char>(c));
  }

  Frag letter_frag(int letter) {
    int s = nfa.fresh(), a = nfa.fresh();
    nfa.edge(s, letter, a);
    return {s, a};
  }

  Frag epsilon_frag() {
    int s = nfa.fresh();
    return {s, s};
  }

  Frag atom() {
    skip_ws();
    char c = text[pos];
    if (c == '(') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        return epsilon_frag();
      }
      Frag f = alternation();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return f;
    }
    if (c == '.') {
      ++pos;
      int s = nfa.fresh(), a = nfa.fresh();
      for (int l = 0; l < 2 * n + 1; ++l) nfa.edge(s, l, a);
      return {s, a};
    }
    if (c == 'b') {
      ++pos;
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected digits after 'b'");
      int v = text[pos++] - '0';
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) &&
             v * 10 + (text[pos] - '0') <= n)
        v = v * 10 + (text[pos++] - '0');
      if (v < 1 || v > n) fail("inverse letter out of range");
      return letter_frag(n + v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = c - '0';
      if (v > n) fail("letter out of range");
      ++pos;
      return letter_frag(v);
    }
    fail("expected a letter, '.', or '('");
  }

  Frag postfix() {
    Frag f = atom();
    for (;;) {
      skip_ws();
      if (pos < text.size() && (text[pos] == '*' || text[pos] == '+')) {
        bool star = text[pos] == '*';
        ++pos;
        int s = nfa.fresh(), a = nfa.fresh();
        nfa.edge(s, -1, f.start);
        nfa.edge(f.accept, -1, a);
        nfa.edge(f.accept, -1, f.start);
        if (star) nfa.edge(s, -1, a);
        f = {s, a};
      } else {
        return f;
      }
    }
  }

  Frag concatenation() {
    Frag f = postfix();
    while (at_atom()) {
      Frag g = postfix();
      nfa.edge(f.accept, -1, g.start);
      f = {f.start, g.accept};
    }
    return f;
  }

  Frag alternation() {
    Frag f = concatenation();
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        Frag g = concatenation();
        int s = nfa.fresh(), a = nfa.fresh();
        nfa.edge(s, -1, f.start);
        nfa.edge(s, -1, g.start);
        nfa.edge(f.accept, -1, a);
        nfa.edge(g.accept, -1, a);
        f = {s, a};
      } else {
        return f;
      }
    }
  }
};

void closure(const RegexNfa& nfa, std::set<int>& states) {
  std::deque<int> queue(states.begin(), states.end());
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (auto [letter, t] : nfa.edges[s])
      if (letter == -1 && states.insert(t).second) queue.push_back(t);
  }
}

}  // namespace

RegularSet RegularSet::parse(const std::string& text, int n) {
  RegexParser parser(text, n);
  parser.skip_ws();
  if (parser.pos >= text.size()) return RegularSet::none(n);  // blank = empty set
  Frag frag = parser.alternation();
  parser.skip_ws();
  if (parser.pos < text.size()) parser.fail("trailing input");

  // Epsilon-closure subset construction.
  int sigma = 2 * n + 1;
  std::map<std::set<int>, int> ids;
  std::vector<std::set<int>> subsets;
  auto intern = [&](std::set<int> subset) {
    closure(parser.nfa, subset);
    auto [it, inserted] = ids.emplace(subset, subsets.size());
    if (inserted) subsets.push_back(subset);
    return it->second;
  };
  Dfa dfa;
  dfa.alphabet = sigma;
  dfa.initial = intern({frag.start});
  for (size_t q = 0; q < subsets.size(); ++q) {
    std::set<int> subset = subsets[q];
    dfa.delta.emplace_back(sigma, 0);
    for (int a = 0; a < sigma; ++a) {
      std::set<int> next;
      for (int s : subset)
        for (auto [letter, t] : parser.nfa.edges[s])
          if (letter == a) next.insert(t);
      dfa.delta[q][a] = intern(std::move(next));
    }
    dfa.accepting.push_back(subset.count(frag.accept) ? 1 : 0);
  }

  RegularSet out;
  out.n = n;
  out.dfa = dfa.minimized();
  return out;
}

// State elimination with a tiny expression tree; smart constructors keep the
// common degenerate cases (empty, epsilon) from bloating the output.
namespace {

struct Rex {
  enum Kind { Empty, Eps, Letter, Cat, Alt, Star } kind;
  int letter = 0;
  std::shared_ptr<Rex> a, b;
};
using RexP = std::shared_ptr<Rex>;

RexP rex(Rex::Kind k) { return std::make_shared<Rex>(Rex{k, 0, nullptr, nullptr}); }

RexP rex_letter(int l) {
  auto r = rex(Rex::Letter);
  r->letter = l;
  return r;
}

RexP rex_cat(RexP x, RexP y) {
  if (x->kind == Rex::Empty || y->kind == Rex::Empty) return rex(Rex::Empty);
  if (x->kind == Rex::Eps) return y;
  if (y->kind == Rex::Eps) return x;
  auto r = rex(Rex::Cat);
  r->a = std::move(x);
  r->b = std::move(y);
  return r;
}

RexP rex_alt(RexP x, RexP y) {
  if (x->kind == Rex::Empty) return y;
  if (y->kind == Rex::Empty) return x;
  if (x->kind == Rex::Eps && y->kind == Rex::Eps) return x;
  auto r = rex(Rex::Alt);
  r->a = std::move(x);
  r->b = std::move(y);
  return r;
}

RexP rex_star(RexP x) {
  if (x->kind == Rex::Empty || x->kind == Rex::Eps) return rex(Rex::Eps);
  if (x->kind == Rex::Star) return x;
  auto r = rex(Rex::Star);
  r->a = std::move(x);
  return r;
}

// Precedence: alternation 0, concatenation 1, star 2.
void rex_print(const RexP& r, int n, int prec, std::ostream& out) {
  switch (r->kind) {
    case Rex::Empty:
      out << "()";  // unreachable after simplification, but safe
      break;
    case Rex::Eps:
      out << "()";
      break;
    case Rex::Letter:
      out << letter_name(r->letter, n);
      break;
    case Rex::Cat:
      if (prec > 1) out << "(";
      rex_print(r->a, n, 1, out);
      rex_print(r->b, n, 1, out);
      if (prec > 1) out << ")";
      break;
    case Rex::Alt:
      if (prec > 0) out << "(";
      rex_print(r->a, n, 0, out);
      out << "|";
      rex_print(r->b, n, 0, out);
      if (prec > 0) out << ")";
      break;
    case Rex::Star:
      rex_print(r->a, n, 2, out);
      out << "*";
      break;
  }
}

}  // namespace

std::string to_expression(const RegularSet& s) {
  Dfa d = s.dfa.minimized();
  int m = d.num_states();
  // Generalized automaton: indices 0..m-1 plus virtual start m and accept m+1.
  int start = m, accept = m + 1;
  std::vector<std::vector<RexP>> r(m + 2, std::vector<RexP>(m + 2));
  for (auto& row : r)
    for (auto& cell : row) cell = rex(Rex::Empty);
  for (int q = 0; q < m; ++q)
    for (int l = 0; l < d.alphabet; ++l)
      r[q][d.delta[q][l]] = rex_alt(r[q][d.delta[q][l]], rex_letter(l));
  r[start][d.initial] = rex(Rex::Eps);
  for (int q = 0; q < m; ++q)
    if (d.accepting[q]) r[q][accept] = rex(Rex::Eps);

  std::vector<int> alive;
  for (int q = 0; q < m; ++q) alive.push_back(q);
  alive.push_back(start);
  alive.push_back(accept);
  for (int k = 0; k < m; ++k) {
    RexP loop = rex_star(r[k][k]);
    for (int i : alive) {
      if (i == k) continue;
      for (int j : alive) {
        if (j == k) continue;
        r[i][j] = rex_alt(r[i][j], rex_cat(r[i][k], rex_cat(loop, r[k][j])));
      }
    }
    alive.erase(std::find(alive.begin(), alive.end(), k));
  }

  RexP result = r[start][accept];
  if (result->kind == Rex::Empty) return "";
  std::ostringstream out;
  rex_print(result, s.n, 0, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// SyncAutomaton
// ---------------------------------------------------------------------------

bool SyncAutomaton::has_track(const std::string& name) const {
  return std::binary_search(tracks.begin(), tracks.end(), name);
}

int SyncAutomaton::track_index(const std::string& name) const {
  auto it = std::lower_bound(tracks.begin(), tracks.end(), name);
  if (it == tracks.end() || *it != name)
    throw Error(ErrorCode::UnboundTrack, "no track named '" + name + "'");
  return static_cast<int>(it - tracks.begin());
}

int SyncAutomaton::tuple_alphabet() const {
  long long size = 1;
  for (int i = 0; i < num_tracks(); ++i) {
    size *= sigma() + 1;
    if (size > kMaxTupleAlphabet)
      throw Error(ErrorCode::InternalLimit, "tuple alphabet too large");
  }
  return static_cast<int>(size);
}

int SyncAutomaton::tuple_id(const std::vector<int>& letters) const {
  int id = 0;
  for (int i = num_tracks() - 1; i >= 0; --i) id = id * (sigma() + 1) + letters[i];
  return id;
}

std::vector<int> SyncAutomaton::tuple_letters(int id) const {
  std::vector<int> letters(num_tracks());
  for (int i = 0; i < num_tracks(); ++i) {
    letters[i] = id % (sigma() + 1);
    id /= sigma() + 1;
  }
  return letters;
}

namespace {

// Language of valid k-track convolutions: per track pads only as a suffix,
// never the all-pad tuple. States are the sets of already-padded tracks.
Dfa valid_convolutions(int n, int k) {
  int sigma = 2 * n + 1;
  long long alphabet = 1;
  for (int i = 0; i < k; ++i) alphabet *= sigma + 1;
  int masks = 1 << k;
  int dead = masks;
  Dfa dfa;
  dfa.alphabet = static_cast<int>(alphabet);
  dfa.initial = 0;
  dfa.delta.assign(masks + 1, std::vector<int>(dfa.alphabet, dead));
  dfa.accepting.assign(masks + 1, 1);
  dfa.accepting[dead] = 0;
  for (int mask = 0; mask < masks; ++mask) {
    for (int t = 0; t < dfa.alphabet; ++t) {
      int padset = 0, rest = t;
      for (int i = 0; i < k; ++i) {
        if (rest % (sigma + 1) == sigma) padset |= 1 << i;
        rest /= sigma + 1;
      }
      bool all_pad = padset == masks - 1 || k == 0;
      if (all_pad || (mask & ~padset) != 0) continue;  // dead
      dfa.delta[mask][t] = padset;
    }
  }
  return dfa;
}

SyncAutomaton with_valid(SyncAutomaton a) {
  a.dfa = dfa_product(a.dfa, valid_convolutions(a.n, a.num_tracks()), '&').minimized();
  return a;
}

}  // namespace

SyncAutomaton SyncAutomaton::boolean(int n, bool value) {
  SyncAutomaton a;
  a.n = n;
  a.dfa.alphabet = 1;
  a.dfa.delta = {{1}, {1}};
  a.dfa.accepting = {value ? char(1) : char(0), 0};
  return a;
}

SyncAutomaton SyncAutomaton::equal(const std::string& x, const std::string& y, int n) {
  SyncAutomaton a;
  a.n = n;
  int sigma = 2 * n + 1;
  if (x == y) {
    a.tracks = {x};
    a.dfa.alphabet = sigma + 1;
    a.dfa.delta.assign(2, std::vector<int>(sigma + 1, 1));
    for (int l = 0; l < sigma; ++l) a.dfa.delta[0][l] = 0;
    a.dfa.accepting = {1, 0};
    return a;
  }
  a.tracks = {x, y};
  std::sort(a.tracks.begin(), a.tracks.end());
  a.dfa.alphabet = (sigma + 1) * (sigma + 1);
  a.dfa.delta.assign(2, std::vector<int>(a.dfa.alphabet, 1));
  for (int l = 0; l < sigma; ++l) a.dfa.delta[0][a.tuple_id({l, l})] = 0;
  a.dfa.accepting = {1, 0};
  return a;
}

SyncAutomaton SyncAutomaton::succ(int letter, const std::string& x, const std::string& y, int n) {
  int sigma = 2 * n + 1;
  if (letter < 0 || letter >= sigma)
    throw Error(ErrorCode::PreconditionViolation, "successor letter out of range");
  if (x == y) {
    SyncAutomaton a;
    a.n = n;
    a.tracks = {x};
    a.dfa.alphabet = sigma + 1;
    a.dfa.delta.assign(1, std::vector<int>(sigma + 1, 0));
    a.dfa.accepting = {0};
    return a;
  }
  SyncAutomaton a;
  a.n = n;
  a.tracks = {x, y};
  std::sort(a.tracks.begin(), a.tracks.end());
  int px = a.track_index(x);
  int pad = sigma;
  // 0: tracks agree; 1: y consumed its extra letter; 2: dead.
  a.dfa.alphabet = (sigma + 1) * (sigma + 1);
  a.dfa.delta.assign(3, std::vector<int>(a.dfa.alphabet, 2));
  for (int l = 0; l < sigma; ++l) a.dfa.delta[0][a.tuple_id({l, l})] = 0;
  std::vector<int> last(2);
  last[px] = pad;
  last[1 - px] = letter;
  a.dfa.delta[0][a.tuple_id(last)] = 1;
  a.dfa.accepting = {0, 1, 0};
  return a;
}

SyncAutomaton SyncAutomaton::lambda(const std::string& x, int n) {
  SyncAutomaton a;
  a.n = n;
  a.tracks = {x};
  int sigma = 2 * n + 1;
  a.dfa.alphabet = sigma + 1;
  a.dfa.delta.assign(2, std::vector<int>(sigma + 1, 1));
  a.dfa.accepting = {1, 0};
  return a;
}

SyncAutomaton SyncAutomaton::member(const std::string& x, const RegularSet& s) {
  SyncAutomaton a;
  a.n = s.n;
  a.tracks = {x};
  int sigma = 2 * s.n + 1;
  int dead = s.dfa.num_states();
  a.dfa.alphabet = sigma + 1;
  a.dfa.initial = s.dfa.initial;
  a.dfa.delta.assign(dead + 1, std::vector<int>(sigma + 1, dead));
  a.dfa.accepting.assign(dead + 1, 0);
  for (int q = 0; q < dead; ++q) {
    a.dfa.accepting[q] = s.dfa.accepting[q];
    for (int l = 0; l < sigma; ++l) a.dfa.delta[q][l] = s.dfa.delta[q][l];
  }
  return a;
}

SyncAutomaton SyncAutomaton::cylindrify(const std::string& new_track) const {
  if (has_track(new_track))
    throw Error(ErrorCode::PreconditionViolation, "track '" + new_track + "' already present");
  if (num_tracks() + 1 > kMaxTracks)
    throw Error(ErrorCode::InternalLimit, "too many simultaneous tracks");

  SyncAutomaton out;
  out.n = n;
  out.tracks = tracks;
  out.tracks.push_back(new_track);
  std::sort(out.tracks.begin(), out.tracks.end());
  int idx = out.track_index(new_track);
  out.tuple_alphabet();  // guard size

  int k = num_tracks();
  int states = dfa.num_states();
  int tail = states, dead = states + 1;
  out.dfa.alphabet = out.tuple_alphabet();
  out.dfa.initial = dfa.initial;
  out.dfa.delta.assign(states + 2, std::vector<int>(out.dfa.alphabet, dead));
  out.dfa.accepting.assign(states + 2, 0);
  out.dfa.accepting[tail] = 1;
  for (int q = 0; q < states; ++q) out.dfa.accepting[q] = dfa.accepting[q];

  for (int t = 0; t < out.dfa.alphabet; ++t) {
    std::vector<int> letters = out.tuple_letters(t);
    int c = letters[idx];
    std::vector<int> old_letters;
    for (int i = 0; i <= k; ++i)
      if (i != idx) old_letters.push_back(letters[i]);
    bool old_all_pad = true;
    for (int l : old_letters) old_all_pad = old_all_pad && l == pad();

    if (!old_all_pad) {
      int old_id = tuple_id(old_letters);
      for (int q = 0; q < states; ++q) out.dfa.delta[q][t] = dfa.delta[q][old_id];
    } else if (c != pad()) {
      for (int q = 0; q < states; ++q)
        if (dfa.accepting[q]) out.dfa.delta[q][t] = tail;
      out.dfa.delta[tail][t] = tail;
    }
  }
  return with_valid(std::move(out));
}

bool SyncAutomaton::as_bool() const {
  if (num_tracks() != 0)
    throw Error(ErrorCode::PreconditionViolation, "automaton still has free tracks");
  return dfa.accepting[dfa.initial] != 0;
}

bool SyncAutomaton::is_empty() const { return dfa.is_empty(); }

bool SyncAutomaton::accepts(const std::vector<std::vector<int>>& words) const {
  if (static_cast<int>(words.size()) != num_tracks())
    throw Error(ErrorCode::ArityMismatch, "word count does not match track count");
  size_t len = 0;
  for (const auto& w : words) len = std::max(len, w.size());
  std::vector<int> convolution;
  for (size_t i = 0; i < len; ++i) {
    std::vector<int> letters(num_tracks());
    for (int t = 0; t < num_tracks(); ++t)
      letters[t] = i < words[t].size() ? words[t][i] : pad();
    convolution.push_back(tuple_id(letters));
  }
  return dfa.accepts(convolution);
}

bool SyncAutomaton::accepts(const std::map<std::string, std::vector<int>>& assignment) const {
  if (static_cast<int>(assignment.size()) != num_tracks())
    throw Error(ErrorCode::ArityMismatch, "assignment does not match track count");
  std::vector<std::vector<int>> words;
  for (const auto& name : tracks) {
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw Error(ErrorCode::UnboundTrack, "no value for track '" + name + "'");
    words.push_back(it->second);
  }
  return accepts(words);
}

SyncAutomaton sync_combine(char op, const SyncAutomaton& a, const SyncAutomaton& b) {
  if (a.n != b.n) throw Error(ErrorCode::ArityMismatch, "mismatched address alphabets");
  SyncAutomaton left = a, right = b;
  for (const auto& t : b.tracks)
    if (!left.has_track(t)) left = left.cylindrify(t);
  for (const auto& t : a.tracks)
    if (!right.has_track(t)) right = right.cylindrify(t);
  SyncAutomaton out;
  out.n = a.n;
  out.tracks = left.tracks;
  out.dfa = dfa_product(left.dfa, right.dfa, op).minimized();
  return out;
}

SyncAutomaton sync_not(const SyncAutomaton& a) {
  SyncAutomaton out = a;
  out.dfa = dfa_complement(a.dfa);
  return with_valid(std::move(out));
}

SyncAutomaton sync_project(const SyncAutomaton& a, const std::string& track) {
  int idx = a.track_index(track);
  int k = a.num_tracks();
  int sigma = a.sigma();

  SyncAutomaton out;
  out.n = a.n;
  for (int i = 0; i < k; ++i)
    if (i != idx) out.tracks.push_back(a.tracks[i]);

  // Transitions whose reduced tuple is all-pad advance only the projected
  // track; they can occur only at the end of the convolution, so they count
  // toward acceptance (closure) instead of emitting a letter.
  int states = a.dfa.num_states();
  std::vector<std::vector<int>> closure_edges(states);
  std::vector<std::vector<std::vector<int>>> ndelta(
      states, std::vector<std::vector<int>>(out.tuple_alphabet()));
  for (int q = 0; q < states; ++q) {
    for (int t = 0; t < a.dfa.alphabet; ++t) {
      std::vector<int> letters = a.tuple_letters(t);
      std::vector<int> reduced;
      for (int i = 0; i < k; ++i)
        if (i != idx) reduced.push_back(letters[i]);
      bool all_pad = true;
      for (int l : reduced) all_pad = all_pad && l == sigma;  // pad id == sigma
      int target = a.dfa.delta[q][t];
      if (all_pad) {
        if (letters[idx] != a.pad()) closure_edges[q].push_back(target);
      } else {
        ndelta[q][out.tuple_id(reduced)].push_back(target);
      }
    }
  }

  // States that can reach acceptance through closure edges alone.
  std::vector<char> can_accept(states, 0);
  for (int q = 0; q < states; ++q) can_accept[q] = a.dfa.accepting[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < states; ++q) {
      if (can_accept[q]) continue;
      for (int t : closure_edges[q])
        if (can_accept[t]) {
          can_accept[q] = 1;
          changed = true;
          break;
        }
    }
  }

  out.dfa = determinize(out.tuple_alphabet(), ndelta, {a.dfa.initial},
                        std::vector<char>(can_accept.begin(), can_accept.end()))
                .minimized();
  return out;
}

bool sync_equivalent(const SyncAutomaton& a, const SyncAutomaton& b) {
  return sync_combine('^', a, b).is_empty();
}

// ---------------------------------------------------------------------------
// Debug dumps
// ---------------------------------------------------------------------------

std::string dump(const Dfa& dfa) {
  std::ostringstream out;
  out << "states " << dfa.num_states() << " alphabet " << dfa.alphabet << " initial "
      << dfa.initial << "\n";
  for (int q = 0; q < dfa.num_states(); ++q) {
    out << (dfa.accepting[q] ? "*" : " ") << q << ":";
    for (int a = 0; a < dfa.alphabet; ++a) out << ' ' << dfa.delta[q][a];
    out << "\n";
  }
  return out.str();
}

std::string dump(const RegularSet& s) {
  std::ostringstream out;
  out << "letters";
  for (int l = 0; l < s.alphabet(); ++l) out << ' ' << letter_name(l, s.n);
  out << "\n" << dump(s.dfa);
  return out.str();
}

std::string dump(const SyncAutomaton& a) {
  std::ostringstream out;
  out << "tracks";
  for (const auto& t : a.tracks) out << ' ' << t;
  if (a.tracks.empty()) out << " (none)";
  out << "\nstates " << a.dfa.num_states() << " initial " << a.dfa.initial << "\n";
  for (int q = 0; q < a.dfa.num_states(); ++q) {
    out << (a.dfa.accepting[q] ? "*" : " ") << q << ":";
    for (int t = 0; t < a.dfa.alphabet; ++t) {
      int target = a.dfa.delta[q][t];
      bool interesting = true;
      // Hide edges into a non-accepting sink to keep dumps readable.
      if (!a.dfa.accepting[target]) {
        interesting = false;
        for (int l = 0; l < a.dfa.alphabet && !interesting; ++l)
          interesting = a.dfa.delta[target][l] != target;
      }
      if (!interesting) continue;
      out << " (";
      std::vector<int> letters = a.tuple_letters(t);
      for (size_t i = 0; i < letters.size(); ++i) {
        if (i) out << ',';
        out << (letters[i] == a.sigma() ? "#" : letter_name(letters[i], a.n));
      }
      out << ")->" << target;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace monlog
