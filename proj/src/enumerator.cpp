#include "d4plus/enumerator.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "d4plus/errors.hpp"

namespace d4 {

// ------------------------------------------------------------------ words

Word Word::parse(const std::string& text) {
  Word w;
  std::map<std::size_t, int> parity_of;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    Letter x;
    if (c >= 'a' && c <= 'z') x = {static_cast<std::size_t>(c - 'a'), 0};
    else if (c >= 'A' && c <= 'Z') x = {static_cast<std::size_t>(c - 'A'), 1};
    else throw SchemaError("word position " + std::to_string(i) + ": '" + std::string(1, c) + "' is not a letter");
    auto [it, fresh] = parity_of.try_emplace(x.id, x.parity);
    if (!fresh && it->second != x.parity) {
      throw SchemaError("word position " + std::to_string(i) + ": letter used with both parities");
    }
    w.letters.push_back(x);
  }
  return w;
}

std::string Word::str() const {
  std::string out;
  for (const auto& x : letters) {
    if (x.id < 26) out += static_cast<char>((x.parity ? 'A' : 'a') + static_cast<int>(x.id));
    else out += (x.parity ? "[O" : "[e") + std::to_string(x.id) + "]";
  }
  return out;
}

Word Word::canonical() const {
  std::map<Letter, std::size_t> rename;
  std::size_t next[2] = {0, 0};
  Word out;
  for (const auto& x : letters) {
    auto [it, fresh] = rename.try_emplace(x, 0);
    if (fresh) it->second = next[x.parity]++;
    out.letters.push_back({it->second, x.parity});
  }
  return out;
}

namespace {

std::size_t fresh_id(const Word& w) {
  std::size_t m = 0;
  for (const auto& x : w.letters) m = std::max(m, x.id + 1);
  return m;
}

}  // namespace

Word apply_rule_A(const Word& w, std::size_t position, std::size_t l) {
  if (position >= w.size()) throw PreconditionError("rule A: position out of range");
  if (l < 3 || l % 2 == 0) throw PreconditionError("rule A needs an odd l >= 3");
  const Letter fresh{fresh_id(w), 1 - w.letters[position].parity};
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == position) out.letters.insert(out.letters.end(), l, fresh);
    else out.letters.push_back(w.letters[i]);
  }
  return out;
}

bool rule_B_applicable(const Word& w, std::size_t position) {
  if (w.size() < 2 || position >= w.size()) return false;
  const auto& x = w.letters[position];
  const auto& y = w.letters[(position + 1) % w.size()];
  return x != y && x.parity == y.parity;
}

Word apply_rule_B(const Word& w, std::size_t position, std::size_t l) {
  if (l < 2 || l % 2 != 0) throw PreconditionError("rule B needs an even l >= 2");
  if (!rule_B_applicable(w, position)) {
    throw PreconditionError("rule B needs two unequal letters of equal parity at position " + std::to_string(position));
  }
  const Letter fresh{fresh_id(w), 1 - w.letters[position].parity};
  Word out;
  const std::size_t n = w.size();
  if (position + 1 < n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == position) out.letters.insert(out.letters.end(), l, fresh);
      else if (i != position + 1) out.letters.push_back(w.letters[i]);
    }
    return out;
  }
  out.letters.insert(out.letters.end(), l / 2, fresh);
  for (std::size_t i = 1; i + 1 < n; ++i) out.letters.push_back(w.letters[i]);
  out.letters.insert(out.letters.end(), l - l / 2, fresh);
  return out;
}

bool is_infinitely_iterable(const Word& w, std::size_t state_cap) {
  // Iterative DFS; 1 = on the stack, 2 = finished.
  std::unordered_map<std::string, int> state;
  struct Frame {
    Word word;
    std::string key;
    std::size_t next_position;
  };
  const Word start = w.canonical();
  std::vector<Frame> stack{{start, start.str(), 0}};
  state[stack.back().key] = 1;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_position >= top.word.size()) {
      state[top.key] = 2;
      stack.pop_back();
      continue;
    }
    const std::size_t p = top.next_position++;
    if (!rule_B_applicable(top.word, p)) continue;
    Word succ = apply_rule_B(top.word, p, 2).canonical();
    std::string key = succ.str();
    auto it = state.find(key);
    if (it != state.end()) {
      if (it->second == 1) return true;
      continue;
    }
    if (state.size() >= state_cap) throw CapacityError("word rewriting search exceeded " + std::to_string(state_cap) + " states");
    state[key] = 1;
    stack.push_back({std::move(succ), std::move(key), 0});
  }
  return false;
}

Word boundary_word(const BilabelledGraph& K) {
  if (!K.is_connected()) throw PreconditionError("boundary_word needs a connected graph");
  const auto parity = vertex_parity(K);
  if (!parity) throw PreconditionError("boundary_word needs a bipartite graph with even boundary");
  const auto d = derived_graphs(K);
  std::vector<std::size_t> seq(d.core.inputs().rbegin(), d.core.inputs().rend());
  seq.insert(seq.end(), d.core.outputs().begin(), d.core.outputs().end());
  std::map<std::size_t, std::size_t> rename;
  Word w;
  for (auto v : seq) {
    auto [it, fresh] = rename.try_emplace(v, rename.size());
    w.letters.push_back({it->second, (*parity)[d.core_to_original[v]]});
  }
  return w;
}

// ------------------------------------------------------------- GraphPool

std::size_t GraphPool::count(std::size_t k, std::size_t l) const {
  auto it = cells.find({k, l});
  return it == cells.end() ? 0 : it->second.size();
}

bool GraphPool::contains(const BilabelledGraph& K) const {
  auto it = cells.find({K.k(), K.l()});
  return it != cells.end() && it->second.count(canonical_form(K)) > 0;
}

bool GraphPool::insert(const BilabelledGraph& K) {
  auto form = canonical_form(K);
  auto& cell = cells[{K.k(), K.l()}];
  if (cell.count(form)) return false;
  cell.emplace(std::move(form), canonical_graph(K));
  return true;
}

std::vector<BilabelledGraph> GraphPool::members(std::size_t k, std::size_t l) const {
  std::vector<BilabelledGraph> out;
  auto it = cells.find({k, l});
  if (it == cells.end()) return out;
  for (const auto& [form, g] : it->second) out.push_back(g);
  return out;
}

std::vector<BilabelledGraph> GraphPool::all_members() const {
  std::vector<BilabelledGraph> out;
  for (const auto& [cell, m] : cells)
    for (const auto& [form, g] : m) out.push_back(g);
  return out;
}

// ------------------------------------------------------------ Algorithm A

namespace {

void check_member(const BilabelledGraph& K, const char* where) {
  const auto r = check_conditions(K);
  if (!r.all()) throw Error(std::string("algorithm A produced a graph outside C in step ") + where + ": " +
                            to_string(K) + " [" + r.describe() + "]");
}

// Adds K and its rotations to pool; returns how many were new.
std::size_t insert_orbit(GraphPool& pool, const BilabelledGraph& K) {
  std::size_t added = 0;
  for (const auto& R : rotation_orbit(K))
    if (pool.insert(R)) ++added;
  return added;
}

}  // namespace

GraphPool algorithm_A(std::size_t k0, std::size_t sweep_guard) {
  GraphPool conn;
  conn.k0 = k0;

  // (1) Single-vertex seeds. Odd k+l would give an odd extended degree.
  for (std::size_t n = 4; n <= k0; n += 2)
    for (std::size_t k = 0; k <= n; ++k) {
      conn.insert(graphs::M(k, n - k));
      conn.insert(graphs::X(k, n - k));
    }

  // (2A), (2B), (3) until a sweep adds nothing.
  while (true) {
    if (conn.sweeps >= sweep_guard) throw Error("algorithm A did not reach a fixpoint within the sweep guard");
    ++conn.sweeps;
    std::size_t added = 0;
    const auto snapshot = conn.cells;

    for (std::size_t k = 1; k + 3 <= k0; k += 2) {
      auto it = snapshot.find({k, 1});
      if (it == snapshot.end()) continue;
      for (std::size_t l = 3; k + l <= k0; l += 2) {
        for (const auto& [form, H] : it->second) {
          const auto d = derived_graphs(H);
          const bool stub = d.core_to_original[d.core.outputs()[0]] != H.outputs()[0];
          const auto K = stub ? compose(graphs::M(1, l), H) : compose(graphs::X(1, l), H);
          check_member(K, "2A");
          const auto child = canonical_form(K);
          const bool fresh = !conn.contains(K);
          added += insert_orbit(conn, K);
          conn.trace.push_back({"2A", conn.sweeps, {k, 1}, {k, l}, form, child, fresh});
        }
      }
    }

    for (std::size_t k = 0; k + 2 <= k0; k += 2) {
      auto it = snapshot.find({k, 2});
      if (it == snapshot.end()) continue;
      for (std::size_t l = 2; k + l <= k0; l += 2) {
        for (const auto& [form, H] : it->second) {
          const auto d = derived_graphs(H);
          const auto b1 = d.core_to_original[d.core.outputs()[0]];
          const auto b2 = d.core_to_original[d.core.outputs()[1]];
          if (b1 == b2) continue;
          const auto parity = vertex_parity(H);
          if (!parity || (*parity)[b1] != (*parity)[b2]) continue;
          const auto K = (*parity)[b1] == 1 ? compose(graphs::M(2, l), H) : compose(graphs::X(2, l), H);
          check_member(K, "2B");
          const auto child = canonical_form(K);
          const bool fresh = !conn.contains(K);
          added += insert_orbit(conn, K);
          conn.trace.push_back({"2B", conn.sweeps, {k, 2}, {k, l}, form, child, fresh});
        }
      }
    }
    if (added == 0) break;
  }

  // (5) Two-point graphs, then disconnected graphs as rotated tensor products.
  if (k0 >= 2) insert_orbit(conn, graphs::M(0, 2));

  GraphPool pool;
  pool.k0 = k0;
  pool.trace = std::move(conn.trace);
  pool.sweeps = conn.sweeps;

  // all_zero[n]: every (0,n) member; built as shifts of (all ⊗ connected).
  std::vector<std::map<std::string, BilabelledGraph>> all_zero(k0 + 1);
  all_zero[0].emplace(canonical_form(graphs::null_graph()), graphs::null_graph());
  for (std::size_t n = 1; n <= k0; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      auto cit = conn.cells.find({0, m});
      if (cit == conn.cells.end()) continue;
      for (const auto& [fa, A] : all_zero[n - m])
        for (const auto& [fc, C] : cit->second) {
          BilabelledGraph W = tensor(A, C);
          for (std::size_t s = 0; s < n; ++s) {
            auto form = canonical_form(W);
            if (!all_zero[n].count(form)) all_zero[n].emplace(std::move(form), canonical_graph(W));
            W = cyclic_shift(W);
          }
        }
    }
  }
  for (std::size_t n = 0; n <= k0; ++n)
    for (const auto& [form, W] : all_zero[n])
      for (std::size_t k = 0; k <= n; ++k) pool.insert(from_zero_form(W, k));
  // Cells with no members still appear in the table.
  for (std::size_t n = 0; n <= k0; ++n)
    for (std::size_t k = 0; k <= n; ++k) pool.cells[{k, n - k}];
  return pool;
}

// ----------------------------------------------------------- brute force

std::set<std::string> brute_force_C(std::size_t k, std::size_t l, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t n = k + l;
  if (max_vertices > 12 || max_edges > 16 || n > 10) throw CapacityError("brute_force_C bounds too large");
  std::set<std::string> found;
  if (n == 0) {
    // Only the null graph: any vertex would form a boundary-free component.
    found.insert(canonical_form(graphs::null_graph()));
    return found;
  }

  // Boundary: a set partition of the n points (restricted growth string).
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> boundary = [&](std::size_t pos, std::size_t blocks) {
    if (pos < n) {
      for (std::size_t b = 0; b <= blocks && b < max_vertices; ++b) {
        rgs[pos] = b;
        boundary(pos + 1, std::max(blocks, b + 1));
      }
      return;
    }
    const std::size_t nb = blocks;
    std::vector<std::size_t> occurrences(nb, 0);
    for (auto b : rgs) ++occurrences[b];
    // Inner vertices need extended degree >= 4, all edges cross the bipartition.
    for (std::size_t io = 0; nb + io <= max_vertices && 4 * io <= max_edges; ++io) {
      for (std::size_t ie = 0; nb + io + ie <= max_vertices && 4 * ie <= max_edges; ++ie) {
        if (ie > 0 && io < 4) continue;
        const std::size_t even = nb + ie;
        const std::size_t total = even + io;
        std::vector<Edge> pairs;
        for (std::size_t u = 0; u < even; ++u)
          for (std::size_t v = even; v < total; ++v) pairs.emplace_back(u, v);
        std::vector<std::size_t> deg(total, 0);
        std::vector<Edge> chosen;
        std::function<void(std::size_t)> edges = [&](std::size_t idx) {
          // Emit the current edge set if the degree conditions hold.
          bool ok = true;
          for (std::size_t v = 0; v < total && ok; ++v) {
            const std::size_t ext = deg[v] + (v < nb ? occurrences[v] : 0);
            if (ext % 2 != 0) ok = false;
            if (v >= nb && ext < 4) ok = false;
          }
          if (ok) {
            std::vector<std::size_t> a(rgs.begin(), rgs.begin() + static_cast<std::ptrdiff_t>(k));
            std::vector<std::size_t> b(rgs.begin() + static_cast<std::ptrdiff_t>(k), rgs.end());
            BilabelledGraph K(total, chosen, a, b);
            if (check_conditions(K).all()) found.insert(canonical_form(K));
          }
          if (chosen.size() == max_edges) return;
          for (std::size_t i = idx; i < pairs.size(); ++i) {
            chosen.push_back(pairs[i]);
            ++deg[pairs[i].first];
            ++deg[pairs[i].second];
            edges(i + 1);
            --deg[pairs[i].first];
            --deg[pairs[i].second];
            chosen.pop_back();
          }
        };
        edges(0);
      }
    }
  };
  boundary(0, 0);
  return found;
}

std::vector<CountRow> counts(const GraphPool& pool) {
  std::vector<CountRow> rows;
  for (std::size_t n = 0; n <= pool.k0; ++n)
    for (std::size_t k = 0; k <= n; ++k) rows.push_back({k, n - k, pool.count(k, n - k)});
  return rows;
}

std::string counts_csv(const std::vector<CountRow>& rows) {
  std::ostringstream os;
  os << "k,l,count\n";
  for (const auto& r : rows) os << r.k << "," << r.l << "," << r.count << "\n";
  return os.str();
}

}  // namespace d4
