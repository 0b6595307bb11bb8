#ifndef MONLOG_MODELS_HPP
#define MONLOG_MODELS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "monlog/automata.hpp"
#include "monlog/syntax.hpp"

namespace monlog {

// One connected piece of a presented structure. A root component is a copy of
// the term structure; a non-root component is described by its signature
// sequence h_1 h_2 ..., the function indices along its descending spine,
// given as a finite prefix followed by a period repeated forever.
struct Component {
  bool root = true;
  std::vector<int> prefix;  // function indices 1..n; empty for roots
  std::vector<int> period;  // nonempty for non-roots; empty for roots

  static Component make_root();
  static Component make_nonroot(std::vector<int> prefix, std::vector<int> period);

  // h_i for i >= 1 (non-root only).
  int signature_at(int i) const;

  // Canonical order: roots first, then by (prefix, period).
  bool operator<(const Component& other) const;
  bool operator==(const Component& other) const = default;
};

// A finitely presented structure: one root component per constant (the j-th
// constant names the j-th component), extra components as a multiset in
// canonical order, and a coloring expression per predicate (interpreted
// relative to the embedded domain).
struct ModelPresentation {
  Signature sig;
  std::vector<std::pair<Component, int>> extra;     // (component, count >= 1)
  std::map<std::string, std::string> predicates;    // name -> set expression
};

// Throws InvalidPresentation (or signature errors) on any malformed part:
// zero components overall, non-root pieces without any function symbol,
// indices out of 1..n, empty periods, counts < 1, extras out of canonical
// order, or colorings naming foreign predicates.
void validate(const ModelPresentation& m);

int total_components(const ModelPresentation& m);

// Components expanded in presentation order; entry j-1 is component j.
std::vector<Component> component_list(const ModelPresentation& m);

// The domain as a regular set of addresses: component j contributes the
// block of words with exactly j leading zeros. The returned automaton keeps
// the per-component structure (zero chain, spine loop along the period,
// per-component subtree states) rather than the minimal one; downstream
// enumeration keys on these states.
RegularSet embed(const ModelPresentation& m);

// The i-th function of the structure presented by domain d: w followed by
// letter i when that stays inside d, otherwise w with a trailing bar of i
// removed. Throws PreconditionViolation when w is outside d and
// UndefinedImage when neither branch applies.
std::vector<int> induced_fn(const RegularSet& d, int i, const std::vector<int>& w);

// Whether two non-root components present isomorphic structures: their
// signature sequences share a common tail, decided by comparing primitive
// periods up to rotation. This criterion is validated empirically in the test
// suite against a descent-stream comparison over bounded lassos rather than
// taken from a proof.
bool iso_nonroot(const Component& a, const Component& b);

// Colorings P_l = (expression language) intersected with d, keyed by
// predicate name; predicates without an entry come out empty.
std::map<std::string, RegularSet> colorings(const ModelPresentation& m,
                                            const RegularSet& d);

// Model files are JSON with fields `signature` (constants, functions,
// predicates), `extra_components` and `predicates`, in that canonical order.
nlohmann::ordered_json model_to_json(const ModelPresentation& m);
ModelPresentation model_from_json(const nlohmann::ordered_json& j);
std::string model_to_text(const ModelPresentation& m);
ModelPresentation model_from_text(const std::string& text);

}  // namespace monlog

#endif  // MONLOG_MODELS_HPP
