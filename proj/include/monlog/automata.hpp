#ifndef MONLOG_AUTOMATA_HPP
#define MONLOG_AUTOMATA_HPP

#include <map>
#include <string>
#include <vector>

#include "monlog/errors.hpp"

namespace monlog {

// Complete deterministic automaton over a dense letter alphabet 0..alphabet-1.
// Every constructor in this module keeps completeness, so delta lookups never
// miss.
struct Dfa {
  int alphabet = 1;
  int initial = 0;
  std::vector<std::vector<int>> delta;  // delta[state][letter]
  std::vector<char> accepting;

  int num_states() const { return static_cast<int>(delta.size()); }

  bool accepts(const std::vector<int>& word) const;
  bool is_empty() const;

  // Moore refinement over the reachable part, then canonical breadth-first
  // state numbering: minimal automata of the same language compare equal.
  Dfa minimized() const;

  bool operator==(const Dfa&) const = default;
};

Dfa dfa_product(const Dfa& a, const Dfa& b, char mode);  // '&' '|' '^'
Dfa dfa_complement(const Dfa& a);
bool dfa_same_language(const Dfa& a, const Dfa& b);

// Subset construction; `delta[state][letter]` lists successor states.
Dfa determinize(int alphabet, const std::vector<std::vector<std::vector<int>>>& delta,
                const std::vector<int>& initials, const std::vector<char>& accepting);

// A regular set of tree addresses: words over the 2n+1 letters
// 0 (the root successor), 1..n (functions) and n+1..2n (their inverses,
// written b1..bn).
struct RegularSet {
  int n = 0;
  Dfa dfa;

  int alphabet() const { return 2 * n + 1; }

  static RegularSet none(int n);
  static RegularSet all(int n);
  static RegularSet single(const std::vector<int>& word, int n);

  // Expression syntax: letters `0`, digits `1`..`9`, `b<digits>`; `.` any
  // letter; postfix `*` `+`; infix `|`; juxtaposition concatenates; `( )`
  // groups; whitespace ignored. An expression of pure whitespace denotes the
  // empty set, `()` the empty word.
  static RegularSet parse(const std::string& text, int n);

  bool contains(const std::vector<int>& word) const;
  bool is_empty() const;
  RegularSet intersect(const RegularSet& other) const;
  RegularSet unite(const RegularSet& other) const;
  RegularSet minus(const RegularSet& other) const;
  RegularSet complement() const;
  bool same_language(const RegularSet& other) const;

  // Members in length-lexicographic order, up to max_len letters.
  std::vector<std::vector<int>> members(int max_len, size_t max_count) const;
};

std::string letter_name(int letter, int n);
std::string address_string(const std::vector<int>& word, int n);  // "Lam" for the empty word
std::vector<int> parse_address(const std::string& text, int n);

// Renders the set in the expression syntax accepted by parse; the empty set
// prints as the empty string. parse(to_expression(s), n) always denotes s.
std::string to_expression(const RegularSet& s);

// Multi-track synchronized automaton: words over (Sigma u {pad})^k aligned
// end-padded (the convolution), one track per object variable. The stored
// language always sits inside the valid convolutions: per track, pads only
// as a suffix, and never the all-pad tuple. Zero tracks denote a boolean
// (the language is {empty word} or empty).
struct SyncAutomaton {
  int n = 0;
  std::vector<std::string> tracks;  // sorted, unique
  Dfa dfa;                          // over (sigma+1)^k tuple letters

  int sigma() const { return 2 * n + 1; }
  int pad() const { return sigma(); }
  int num_tracks() const { return static_cast<int>(tracks.size()); }
  bool has_track(const std::string& name) const;
  int track_index(const std::string& name) const;  // throws UnboundTrack

  int tuple_alphabet() const;
  int tuple_id(const std::vector<int>& letters) const;
  std::vector<int> tuple_letters(int id) const;

  static SyncAutomaton boolean(int n, bool value);
  static SyncAutomaton equal(const std::string& x, const std::string& y, int n);
  // y = x . a for a single letter a (dense id).
  static SyncAutomaton succ(int a, const std::string& x, const std::string& y, int n);
  static SyncAutomaton lambda(const std::string& x, int n);
  static SyncAutomaton member(const std::string& x, const RegularSet& s);

  // Adds an unconstrained track.
  SyncAutomaton cylindrify(const std::string& new_track) const;

  bool as_bool() const;  // requires zero tracks
  bool is_empty() const;

  // Words per track, in track order / by name. Arity must match exactly.
  bool accepts(const std::vector<std::vector<int>>& words) const;
  bool accepts(const std::map<std::string, std::vector<int>>& assignment) const;
};

SyncAutomaton sync_combine(char op, const SyncAutomaton& a, const SyncAutomaton& b);  // '&' '|' '^'
SyncAutomaton sync_not(const SyncAutomaton& a);
SyncAutomaton sync_project(const SyncAutomaton& a, const std::string& track);
bool sync_equivalent(const SyncAutomaton& a, const SyncAutomaton& b);

std::string dump(const Dfa& dfa);
std::string dump(const RegularSet& s);
std::string dump(const SyncAutomaton& a);

}  // namespace monlog

#endif  // MONLOG_AUTOMATA_HPP
