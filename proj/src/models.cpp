#include "monlog/models.hpp"

#include <algorithm>
#include <sstream>

namespace monlog {

Component Component::make_root() { return Component{}; }

Component Component::make_nonroot(std::vector<int> prefix, std::vector<int> period) {
  Component c;
  c.root = false;
  c.prefix = std::move(prefix);
  c.period = std::move(period);
  return c;
}

int Component::signature_at(int i) const {
  if (root || i < 1 || period.empty())
    throw Error(ErrorCode::PreconditionViolation, "signature index on a root component");
  int p = static_cast<int>(prefix.size());
  if (i <= p) return prefix[i - 1];
  return period[(i - 1 - p) % period.size()];
}

bool Component::operator<(const Component& other) const {
  return std::make_tuple(root ? 0 : 1, std::cref(prefix), std::cref(period)) <
         std::make_tuple(other.root ? 0 : 1, std::cref(other.prefix),
                         std::cref(other.period));
}

void validate(const ModelPresentation& m) {
  m.sig.check();
  int n = m.sig.num_functions();
  auto bad = [](const std::string& msg) {
    throw Error(ErrorCode::InvalidPresentation, msg);
  };

  int total = m.sig.num_constants();
  for (const auto& [comp, count] : m.extra) {
    if (count < 1) bad("component count must be at least 1");
    total += count;
    if (comp.root) {
      if (!comp.prefix.empty() || !comp.period.empty())
        bad("root components carry no signature");
      continue;
    }
    if (n == 0) bad("non-root components need at least one function symbol");
    if (comp.period.empty()) bad("non-root component with an empty period");
    for (int i : comp.prefix)
      if (i < 1 || i > n) bad("signature index out of range");
    for (int i : comp.period)
      if (i < 1 || i > n) bad("signature index out of range");
  }
  for (size_t i = 1; i < m.extra.size(); ++i)
    if (!(m.extra[i - 1].first < m.extra[i].first))
      bad("extra components out of canonical order");
  if (total < 1) bad("a presentation needs at least one component");

  for (const auto& [name, expr] : m.predicates) {
    (void)expr;
    if (!m.sig.predicate_index(name))
      bad("coloring for unknown predicate '" + name + "'");
  }
}

int total_components(const ModelPresentation& m) {
  int total = m.sig.num_constants();
  for (const auto& [comp, count] : m.extra) {
    (void)comp;
    total += count;
  }
  return total;
}

std::vector<Component> component_list(const ModelPresentation& m) {
  std::vector<Component> out;
  for (int j = 0; j < m.sig.num_constants(); ++j) out.push_back(Component::make_root());
  for (const auto& [comp, count] : m.extra)
    for (int c = 0; c < count; ++c) out.push_back(comp);
  return out;
}

RegularSet embed(const ModelPresentation& m) {
  validate(m);
  int n = m.sig.num_functions();
  int sigma = 2 * n + 1;
  std::vector<Component> comps = component_list(m);
  int big = static_cast<int>(comps.size());

  // States: 0..big for the zero chain (state j = address 0^j), then a block
  // per component, then the dead sink last.
  int states = big + 1;
  std::vector<int> base(big);
  for (int j = 0; j < big; ++j) {
    base[j] = states;
    states += comps[j].root
                  ? 1  // subtree
                  : static_cast<int>(comps[j].prefix.size() + comps[j].period.size()) + 1;
  }
  int dead = states++;

  Dfa dfa;
  dfa.alphabet = sigma;
  dfa.initial = 0;
  dfa.delta.assign(states, std::vector<int>(sigma, dead));
  dfa.accepting.assign(states, 0);
  for (int j = 1; j <= big; ++j) {
    dfa.accepting[j] = 1;
    if (j < big) dfa.delta[j][0] = j + 1;
  }
  if (big > 0) dfa.delta[0][0] = 1;

  for (int j = 0; j < big; ++j) {
    const Component& comp = comps[j];
    int at = j + 1;  // zero-chain state for address 0^(j+1)
    if (comp.root) {
      int tree = base[j];
      dfa.accepting[tree] = 1;
      for (int g = 1; g <= n; ++g) {
        dfa.delta[at][g] = tree;
        dfa.delta[tree][g] = tree;
      }
      continue;
    }
    int spine_len = static_cast<int>(comp.prefix.size() + comp.period.size());
    int branch = base[j] + spine_len;
    dfa.accepting[branch] = 1;
    for (int g = 1; g <= n; ++g) {
      dfa.delta[at][g] = branch;  // the base element branches on every letter
      dfa.delta[branch][g] = branch;
    }
    for (int depth = 0; depth < spine_len; ++depth) {
      int state = depth == 0 ? at : base[j] + depth - 1;
      int next = base[j] + depth;
      dfa.accepting[next] = 1;
      dfa.delta[state][n + comp.signature_at(depth + 1)] = next;
      // The deepest listed spine state continues by wrapping onto the start
      // of the period: depth spine_len+1 behaves like depth prefix+1.
      if (depth + 1 == spine_len) {
        int wrap = static_cast<int>(comp.prefix.size());
        dfa.delta[next][n + comp.signature_at(wrap + 1)] = base[j] + wrap;
      }
      if (depth >= 1) {
        int h = comp.signature_at(depth);
        for (int g = 1; g <= n; ++g)
          if (g != h) dfa.delta[state][g] = branch;
      }
    }
    // Branches off the deepest listed spine state (same rule: g != h_depth).
    int last = base[j] + spine_len - 1;
    int h_last = comp.signature_at(spine_len);
    for (int g = 1; g <= n; ++g)
      if (g != h_last) dfa.delta[last][g] = branch;
  }

  RegularSet out;
  out.n = n;
  out.dfa = std::move(dfa);
  return out;
}

std::vector<int> induced_fn(const RegularSet& d, int i, const std::vector<int>& w) {
  if (i < 1 || i > d.n)
    throw Error(ErrorCode::PreconditionViolation, "function index out of range");
  if (!d.contains(w))
    throw Error(ErrorCode::PreconditionViolation,
                "address " + address_string(w, d.n) + " is outside the domain");
  std::vector<int> forward = w;
  forward.push_back(i);
  if (d.contains(forward)) return forward;
  if (!w.empty() && w.back() == d.n + i) {
    std::vector<int> up = w;
    up.pop_back();
    return up;
  }
  throw Error(ErrorCode::UndefinedImage,
              "no image for function " + std::to_string(i) + " at " +
                  address_string(w, d.n));
}

namespace {

std::vector<int> primitive_period(const std::vector<int>& p) {
  int len = static_cast<int>(p.size());
  for (int d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool ok = true;
    for (int i = d; i < len && ok; ++i) ok = p[i] == p[i - d];
    if (ok) return std::vector<int>(p.begin(), p.begin() + d);
  }
  return p;
}

}  // namespace

bool iso_nonroot(const Component& a, const Component& b) {
  if (a.root || b.root)
    throw Error(ErrorCode::PreconditionViolation, "both components must be non-root");
  std::vector<int> pa = primitive_period(a.period);
  std::vector<int> pb = primitive_period(b.period);
  if (pa.size() != pb.size()) return false;
  std::vector<int> doubled = pa;
  doubled.insert(doubled.end(), pa.begin(), pa.end());
  return std::search(doubled.begin(), doubled.end(), pb.begin(), pb.end()) !=
         doubled.end();
}

std::map<std::string, RegularSet> colorings(const ModelPresentation& m,
                                            const RegularSet& d) {
  std::map<std::string, RegularSet> out;
  for (const auto& name : m.sig.predicates) {
    auto it = m.predicates.find(name);
    RegularSet raw =
        it == m.predicates.end() ? RegularSet::none(d.n) : RegularSet::parse(it->second, d.n);
    out.emplace(name, raw.intersect(d));
  }
  return out;
}

nlohmann::ordered_json model_to_json(const ModelPresentation& m) {
  nlohmann::ordered_json j;
  j["signature"]["constants"] = m.sig.constants;
  j["signature"]["functions"] = m.sig.functions;
  j["signature"]["predicates"] = m.sig.predicates;
  j["extra_components"] = nlohmann::ordered_json::array();
  for (const auto& [comp, count] : m.extra) {
    nlohmann::ordered_json entry;
    if (comp.root) {
      entry["type"] = "root";
    } else {
      entry["type"] = "nonroot";
      entry["prefix"] = comp.prefix;
      entry["period"] = comp.period;
    }
    entry["count"] = count;
    j["extra_components"].push_back(std::move(entry));
  }
  j["predicates"] = nlohmann::ordered_json::object();
  for (const auto& name : m.sig.predicates) {
    auto it = m.predicates.find(name);
    j["predicates"][name] = it == m.predicates.end() ? "" : it->second;
  }
  return j;
}

ModelPresentation model_from_json(const nlohmann::ordered_json& j) {
  ModelPresentation m;
  try {
    const auto& sig = j.at("signature");
    m.sig.constants = sig.at("constants").get<std::vector<std::string>>();
    m.sig.functions = sig.at("functions").get<std::vector<std::string>>();
    m.sig.predicates = sig.at("predicates").get<std::vector<std::string>>();
    if (j.contains("extra_components")) {
      for (const auto& entry : j.at("extra_components")) {
        std::string type = entry.at("type").get<std::string>();
        int count = entry.contains("count") ? entry.at("count").get<int>() : 1;
        Component comp;
        if (type == "root") {
          comp = Component::make_root();
        } else if (type == "nonroot") {
          comp = Component::make_nonroot(
              entry.contains("prefix") ? entry.at("prefix").get<std::vector<int>>()
                                       : std::vector<int>{},
              entry.at("period").get<std::vector<int>>());
        } else {
          throw Error(ErrorCode::InvalidPresentation,
                      "unknown component type '" + type + "'");
        }
        m.extra.emplace_back(std::move(comp), count);
      }
    }
    if (j.contains("predicates"))
      for (const auto& [name, expr] : j.at("predicates").items())
        m.predicates[name] = expr.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 1, 1);
  }

  // Canonical order with equal components merged.
  std::sort(m.extra.begin(), m.extra.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Component, int>> merged;
  for (auto& [comp, count] : m.extra) {
    if (!merged.empty() && merged.back().first == comp)
      merged.back().second += count;
    else
      merged.emplace_back(std::move(comp), count);
  }
  m.extra = std::move(merged);

  validate(m);
  return m;
}

std::string model_to_text(const ModelPresentation& m) {
  return model_to_json(m).dump(2) + "\n";
}

ModelPresentation model_from_text(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 1, 1);
  }
  ModelPresentation m = model_from_json(j);
  // Surface coloring expression problems at load time.
  for (const auto& [name, expr] : m.predicates) {
    (void)name;
    RegularSet::parse(expr, m.sig.num_functions());
  }
  return m;
}

}  // namespace monlog
