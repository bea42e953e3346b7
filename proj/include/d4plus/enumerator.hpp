#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "d4plus/bigraph.hpp"

namespace d4 {

// ------------------------------------------------------------------ words

struct Letter {
  std::size_t id = 0;
  int parity = 0;  // 0 even, 1 odd
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Parity-labelled letter sequence. Text form: letter id i prints as the
/// i-th alphabet letter, lowercase when even and uppercase when odd.
struct Word {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  /// "BBBaaa" -> ids by alphabet position, parity by case. Throws SchemaError.
  static Word parse(const std::string& text);
  std::string str() const;
  /// Letters renamed by first occurrence within each parity class.
  Word canonical() const;
  friend bool operator==(const Word&, const Word&) = default;
};

/// Replace letter `position` by l >= 3 (odd) copies of a fresh letter of opposite parity.
Word apply_rule_A(const Word& w, std::size_t position, std::size_t l);
/// Whether rule B may act on positions (position, position+1 mod n).
bool rule_B_applicable(const Word& w, std::size_t position);
/// Replace letters `position` and `position+1` (cyclically) by l >= 2 (even)
/// copies of a fresh letter of opposite parity. For the wrap-around pair the
/// copies are split: floor(l/2) at the front, ceil(l/2) at the back.
Word apply_rule_B(const Word& w, std::size_t position, std::size_t l);
/// A cycle is reachable in the rule-(B, l=2) rewriting graph on canonical words.
/// Throws CapacityError when more than state_cap states are visited.
bool is_infinitely_iterable(const Word& w, std::size_t state_cap = 1'000'000);

/// a•_k..a•_1 b•_1..b•_l with vertex parities. Needs K connected with valid parities.
Word boundary_word(const BilabelledGraph& K);

// ------------------------------------------------------------ enumeration

using Cell = std::pair<std::size_t, std::size_t>;

struct TraceEntry {
  std::string step;  // "2A" or "2B"
  std::size_t sweep = 0;  // 1-based
  Cell parent;
  Cell child;
  std::string parent_form;
  std::string child_form;
  bool added = false;
};

/// C(k,l) for k+l <= k0, keyed by canonical form.
struct GraphPool {
  std::size_t k0 = 0;
  std::map<Cell, std::map<std::string, BilabelledGraph>> cells;
  std::vector<TraceEntry> trace;
  std::size_t sweeps = 0;

  std::size_t count(std::size_t k, std::size_t l) const;
  bool contains(const BilabelledGraph& K) const;
  /// Inserts under the canonical form; returns whether it was new.
  bool insert(const BilabelledGraph& K);
  std::vector<BilabelledGraph> members(std::size_t k, std::size_t l) const;
  std::vector<BilabelledGraph> all_members() const;
};

/// Steps (1)-(5). Throws Error when `sweep_guard` sweeps do not reach a fixpoint.
GraphPool algorithm_A(std::size_t k0, std::size_t sweep_guard = 1000);

/// Canonical forms of every graph in C(k,l) with at most max_vertices
/// vertices and max_edges edges, by exhaustive search.
std::set<std::string> brute_force_C(std::size_t k, std::size_t l, std::size_t max_vertices, std::size_t max_edges);

struct CountRow {
  std::size_t k, l, count;
};
/// Every cell with k+l <= k0, ordered by k+l then k.
std::vector<CountRow> counts(const GraphPool& pool);
/// "k,l,count\n" header plus one line per row.
std::string counts_csv(const std::vector<CountRow>& rows);

}  // namespace d4
