#include "d4plus/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "d4plus/errors.hpp"
#include "d4plus/graph_functor.hpp"

namespace d4 {

namespace {

using Outcome = std::pair<bool, std::string>;

Scalar frac(long a, long b) {
  Scalar s(a);
  s /= b;
  return s;
}

Scalar factorial(std::size_t n) {
  Scalar f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

CheckResult timed(std::string id, std::string title, double budget, const std::function<Outcome()>& body) {
  CheckResult r{std::move(id), std::move(title), false, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && r.seconds > budget) {
    r.passed = false;
    std::ostringstream os;
    os << r.detail << "; over the " << budget << "s budget";
    r.detail = os.str();
  }
  return r;
}

const GraphPool& pool8() {
  static const GraphPool pool = algorithm_A(8);
  return pool;
}

PartitionVector pv(const Partition& p) { return PartitionVector(p); }

Partition lower(std::vector<std::vector<std::size_t>> blocks) {
  const std::size_t n = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0},
                                        [](std::size_t s, const auto& b) { return s + b.size(); });
  return Partition::from_blocks(0, n, blocks);
}

std::string orbit_key(const BilabelledGraph& K) {
  std::string best;
  bool first = true;
  for (const auto& R : rotation_orbit(K)) {
    auto f = canonical_form(R);
    if (first || f < best) best = std::move(f);
    first = false;
  }
  return best;
}

// Plain connectivity of (n, edges) with the doomed vertex removed.
bool connected_without(const BilabelledGraph& G, std::size_t doomed) {
  const std::size_t n = G.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : G.edges()) {
    if (u == doomed || v == doomed) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  seen[doomed] = true;
  std::size_t start = doomed == 0 ? 1 : 0;
  if (start >= n) return true;
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Occurrences of v in the cyclic sequence form one run (or none).
bool cyclically_consecutive(const std::vector<std::size_t>& seq, std::size_t v) {
  const std::size_t n = seq.size();
  std::size_t runs = 0, hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seq[i] != v) continue;
    ++hits;
    if (seq[(i + n - 1) % n] != v) ++runs;
  }
  return hits == n || runs <= 1;
}

// ------------------------------------------------------------ random data

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
  long between(long a, long b) { return std::uniform_int_distribution<long>(a, b)(gen); }
};

Partition random_partition(Rng& rng, std::size_t k, std::size_t l) {
  std::vector<int> labels(k + l);
  const std::size_t spread = std::max<std::size_t>(1, k + l);
  for (auto& x : labels) x = static_cast<int>(rng.below(spread));
  return Partition(k, l, labels);
}

PartitionVector random_vector(Rng& rng, std::size_t k, std::size_t l) {
  PartitionVector x(k, l);
  const std::size_t terms = 1 + rng.below(3);
  for (std::size_t t = 0; t < terms; ++t) {
    const long num = rng.between(-3, 3);
    const Scalar c = frac(num, rng.between(1, 3));
    if (c != 0) x.add(random_partition(rng, k, l), c);
  }
  return x;
}

BilabelledGraph random_graph(Rng& rng, std::size_t k, std::size_t l) {
  const std::size_t n = 1 + rng.below(4);
  const std::size_t m = rng.below(6);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.emplace_back(rng.below(n), rng.below(n));
  std::vector<std::size_t> a(k), b(l);
  for (auto& x : a) x = rng.below(n);
  for (auto& x : b) x = rng.below(n);
  return BilabelledGraph(n, std::move(edges), std::move(a), std::move(b));
}

// ------------------------------------------------------------------ A1-A12

Outcome a1() {
  const auto lhs = hat(parts::singletons(4));
  const auto rhs = abcd_expansion();
  const bool exact = lhs == rhs;
  const bool tensors = evaluate(lhs, 4) == evaluate(rhs, 4);
  std::ostringstream os;
  os << "hat(singleton^4) has " << lhs.term_count() << " terms, expansion has " << rhs.term_count()
     << "; vectors equal: " << (exact ? "yes" : "no") << ", tensors at N=4 equal: " << (tensors ? "yes" : "no");
  return {exact && tensors, os.str()};
}

Outcome a2() {
  const auto h = hat(parts::singletons(3));
  PartitionVector expected(0, 3);
  expected.add(parts::singletons(3), 1);
  expected.add(lower({{0, 1}, {2}}), -1);
  expected.add(lower({{0, 2}, {1}}), -1);
  expected.add(lower({{1, 2}, {0}}), -1);
  expected.add(lower({{0, 1, 2}}), 2);
  std::ostringstream os;
  os << "coefficients";
  for (const auto& [p, c] : h.terms()) os << ' ' << p.str() << ':' << to_string(c);
  return {h == expected && h.term_count() == 5, os.str()};
}

Outcome a3() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t N : {2, 3, 4}) {
    const auto P = permanent_vector(N);
    const bool via_hat = evaluate(hat(parts::singletons(N)), N) == P;
    const bool direct = evaluate_hat(parts::singletons(N), N) == P;
    ok = ok && via_hat && direct;
    os << "N=" << N << ":" << (via_hat && direct ? "P" : "mismatch") << ' ';
  }
  for (std::size_t N : {2, 3})
    for (std::size_t l = N + 1; l <= N + 2; ++l) {
      const bool zero = evaluate(hat(parts::singletons(l)), N).entries.is_zero() &&
                        evaluate_hat(parts::singletons(l), N).entries.is_zero();
      ok = ok && zero;
      os << "N=" << N << ",l=" << l << ":" << (zero ? "0" : "nonzero") << ' ';
    }
  return {ok, os.str()};
}

Outcome a4() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t N : {3, 4, 5}) {
    const auto expected = permanent_sandwich_expected(N);
    const bool direct = permanent_sandwich(N) == expected;
    ok = ok && direct;
    os << "N=" << N << " direct:" << (direct ? "ok" : "FAIL");
    if (N <= 4) {
      const bool dense = permanent_sandwich_dense(N) == expected;
      ok = ok && dense;
      os << " dense:" << (dense ? "ok" : "FAIL");
    }
    os << "; ";
  }
  return {ok, os.str()};
}

Outcome a5() {
  bool ok = true;
  std::ostringstream os;
  for (long N : {3, 5, 6, 7}) {
    const bool eq = cap_composition(N) == cap_composition_expected(N);
    ok = ok && eq;
    os << "N=" << N << ":" << (eq ? "ok" : "FAIL") << ' ';
  }
  // Independent route at N = 3 through dense matrices.
  const std::size_t N = 3;
  const auto middle = tensor(evaluate(conjugate_by_tau(pv(parts::fourblock()), N), N), evaluate(parts::fourblock(), N));
  const bool dense = compose(evaluate(cap_partition(), N), middle) == evaluate(cap_composition_expected(N), N);
  ok = ok && dense;
  os << "dense N=3:" << (dense ? "ok" : "FAIL");
  return {ok, os.str()};
}

Outcome a6() {
  const auto& pool = pool8();
  const std::size_t want[] = {1, 4, 25, 196};
  bool ok = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t got = pool.count(0, 2 * (i + 1));
    ok = ok && got == want[i];
    os << "#C(0," << 2 * (i + 1) << ")=" << got << ' ';
  }
  std::size_t cells = 0;
  for (std::size_t n = 0; n <= 6; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      std::set<std::string> mine;
      for (const auto& [form, g] : pool.cells.at({k, n - k})) mine.insert(form);
      const auto brute = brute_force_C(k, n - k, 8, 8);
      if (mine != brute) {
        ok = false;
        os << "oracle mismatch at (" << k << ',' << n - k << "): " << mine.size() << " vs " << brute.size() << ' ';
      }
      ++cells;
    }
  os << "; brute force agrees on " << cells << " cells with k+l<=6";
  return {ok, os.str()};
}

Outcome a7() {
  std::size_t checked = 0, failed = 0;
  for (const auto& [cell, members] : pool8().cells) {
    if (cell.first + cell.second > 6) continue;
    for (const auto& [form, K] : members) {
      ++checked;
      if (!consistency_check(K, 4)) ++failed;
    }
  }
  std::ostringstream os;
  os << checked << " pool graphs, " << failed << " failures";
  return {failed == 0 && checked > 0, os.str()};
}

Outcome a8() {
  const auto tp = reducible_test_pool(pool8());
  const auto A = tau_matrix(4);
  std::size_t failed = 0, reduced = 0, loops = 0;
  std::set<RuleKind> kinds;
  for (const auto& K : tp) {
    for (const auto& r : applicable_reductions(K)) kinds.insert(r.kind);
    const auto nz = normalize(K, 4);
    if (nz.steps > 0) ++reduced;
    if (nz.loop_created) ++loops;
    if (evaluate_TA(K, A) != nz.factor * evaluate_TA(nz.graph, A)) ++failed;
  }
  std::ostringstream os;
  os << tp.size() << " graphs, " << reduced << " reducible, " << loops << " with a loop, " << kinds.size()
     << " rule kinds exercised, " << failed << " failures";
  return {failed == 0 && kinds.size() == 3 && loops > 0, os.str()};
}

Outcome a9() {
  // The generators must produce all 192 elements.
  const auto gens = classical_D4_generators();
  std::set<std::vector<Scalar>> seen;
  std::vector<Matrix> frontier{Matrix::identity(4)};
  seen.insert({frontier[0].entries().begin(), frontier[0].entries().end()});
  while (!frontier.empty()) {
    auto X = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      auto Y = g * X;
      std::vector<Scalar> key(Y.entries().begin(), Y.entries().end());
      if (seen.insert(key).second) frontier.push_back(Y);
    }
  }
  const auto A = tau_matrix(4);
  std::size_t vectors = 0, failed = 0;
  for (std::size_t k = 0; k <= 6; k += 2)
    for (const auto& K : pool8().members(0, k)) {
      ++vectors;
      const auto v = as_vector(evaluate_TA(K, A));
      for (const auto& X : gens)
        if (apply_tensor_power(X, k, v) != v) {
          ++failed;
          break;
        }
    }
  std::ostringstream os;
  os << gens.size() << " generators closing to " << seen.size() << " elements; " << vectors << " vectors, " << failed
     << " not fixed";
  return {seen.size() == 192 && failed == 0, os.str()};
}

bool partition_case(Rng& rng, std::size_t N) {
  const std::size_t k = rng.below(3), l = rng.below(3), m = rng.below(3);
  const auto p = random_vector(rng, k, l);
  const auto q = random_vector(rng, l, m);
  const std::size_t rk = rng.below(2), rl = rng.below(3);
  const auto r = random_vector(rng, rk, rl);
  const Scalar n(static_cast<long>(N));
  const auto Tp = evaluate(p, N);
  return evaluate(compose(q, p, n), N) == compose(evaluate(q, N), Tp) &&
         evaluate(tensor(p, r), N) == tensor(Tp, evaluate(r, N)) && evaluate(involution(p), N) == involution(Tp);
}

bool graph_case(Rng& rng, std::size_t N) {
  const std::size_t k = rng.below(3), l = rng.below(3), m = rng.below(3);
  const auto K = random_graph(rng, k, l);
  const auto H = random_graph(rng, l, m);
  const std::size_t jk = rng.below(2), jl = rng.below(2);
  const auto J = random_graph(rng, jk, jl);
  const auto A = tau_matrix(N);
  const Scalar n(static_cast<long>(N));
  const Scalar alpha = 1, beta = Scalar(-2) / n;
  auto F = [&](const BilabelledGraph& G) { return evaluate_Fpi(G, alpha, beta, n); };
  const auto TK = evaluate_TA(K, A);
  const auto FK = F(K);
  return evaluate_TA(compose(H, K), A) == compose(evaluate_TA(H, A), TK) &&
         evaluate_TA(tensor(K, J), A) == tensor(TK, evaluate_TA(J, A)) &&
         evaluate_TA(involution(K), A) == involution(TK) && F(compose(H, K)) == compose(F(H), FK, n) &&
         F(tensor(K, J)) == tensor(FK, F(J)) && F(involution(K)) == involution(FK) && TK == evaluate(FK, N);
}

Outcome a10() {
  Rng rng(20240601);
  const std::size_t Ns[] = {3, 4, 5};
  std::size_t pfail = 0, gfail = 0;
  for (std::size_t i = 0; i < 500; ++i)
    if (!partition_case(rng, Ns[i % 3])) ++pfail;
  for (std::size_t i = 0; i < 500; ++i)
    if (!graph_case(rng, Ns[i % 3])) ++gfail;
  std::ostringstream os;
  os << "partition level 500 cases, " << pfail << " failures; graph level 500 cases, " << gfail << " failures";
  return {pfail == 0 && gfail == 0, os.str()};
}

Outcome a11() {
  std::size_t members = 0, induction = 0, consec = 0, connectivity = 0, words = 0, skipped = 0;
  bool ok = true;
  std::ostringstream bad;
  for (const auto& [cell, graphs] : pool8().cells) {
    if (cell.first + cell.second > 8) continue;
    for (const auto& [form, K] : graphs) {
      if (K.vertex_count() == 0 || !K.is_connected()) continue;
      ++members;
      const auto d = derived_graphs(K);
      const auto& core = d.core;
      if (core.vertex_count() >= 2) {
        std::vector<std::size_t> seq(core.inputs().rbegin(), core.inputs().rend());
        seq.insert(seq.end(), core.outputs().begin(), core.outputs().end());
        bool found = false, consecutive = true;
        for (std::size_t v = 0; v < core.vertex_count(); ++v) {
          if (!connected_without(core, v)) continue;
          if (core.degree(v) <= 2) found = true;
          if (!cyclically_consecutive(seq, v)) consecutive = false;
        }
        induction += found;
        consec += consecutive;
        const bool three = three_connectivity_check(K);
        connectivity += three;
        if (!found || !consecutive || !three) {
          ok = false;
          bad << ' ' << to_string(K);
        }
      } else {
        ++skipped;
      }
      const auto w = boundary_word(K);
      const bool fine = w.size() % 2 == 0 && !is_infinitely_iterable(w);
      words += fine;
      if (!fine) {
        ok = false;
        bad << " word " << w.str();
      }
    }
  }
  std::ostringstream os;
  os << members << " connected members (" << skipped << " with a one-vertex core); induction " << induction
     << ", consecutive " << consec << ", 3-connected " << connectivity << ", non-iterable words " << words;
  if (!ok) os << "; offenders:" << bad.str();
  return {ok && members > 0, os.str()};
}

Outcome a12() {
  const auto rows = dims_report(pool8(), 4, 6);
  bool ok = rows.size() == 3;
  std::ostringstream os;
  for (const auto& r : rows) {
    ok = ok && r.rank <= r.count;
    os << "k=" << r.k << ": rank " << r.rank << " of " << r.count;
    if (r.classical) os << " (classical D4 fixed space " << *r.classical << ")";
    os << (r.rank == r.count ? ", independent" : ", dependent") << "; ";
  }
  return {ok, os.str()};
}

// ---------------------------------------------------------- extra checks

Outcome tau_identities() {
  bool ok = true;
  std::ostringstream os;
  for (long N : {3, 4, 5}) {
    const auto t = parts::tau(N);
    const bool inv = compose(t, t, N) == pv(parts::identity());
    const bool conj = conjugate_by_tau(conjugate_by_tau(pv(parts::fourblock()), N), N) == pv(parts::fourblock());
    ok = ok && inv && conj;
    os << "N=" << N << ":" << (inv && conj ? "ok" : "FAIL") << ' ';
  }
  Matrix expected(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) expected(i, j) = Scalar(i == j ? 1 : 0) - frac(1, 2);
  const bool four = evaluate(parts::tau(4), 4).entries == expected && tau_matrix(4) == expected;
  os << "T(tau) at N=4 is delta-1/2: " << (four ? "yes" : "no");
  return {ok && four, os.str()};
}

Outcome mobius_identities() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto fine = parts::singletons(n);
    const auto coarse = Partition(0, n, std::vector<int>(n, 0));
    const Scalar mu = mobius(fine, coarse);
    Scalar want = factorial(n - 1);
    if (n % 2 == 0) want = -want;
    ok = ok && mu == want && mobius_closed_form(fine, coarse) == want;
    os << "n=" << n << ":" << to_string(mu) << ' ';
  }
  return {ok, os.str()};
}

Outcome schur_relation() {
  const auto AA = graphs::double_edge();
  const auto F = evaluate_Fpi(AA, 1, frac(-1, 2), 4);
  const bool quarter = F == frac(1, 4) * pv(parts::disconnecter());
  const auto A = tau_matrix(4);
  Matrix schur(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) schur(i, j) = A(i, j) * A(i, j);
  const bool entrywise = evaluate_TA(AA, A).entries == schur && evaluate_TA(graphs::edge(), A).entries == A;
  return {quarter && entrywise, std::string("F_tau(AA) = disconnecter/4: ") + (quarter ? "yes" : "no") +
                                    ", T^A(AA) = A*A entrywise: " + (entrywise ? "yes" : "no")};
}

Outcome worked_example() {
  const auto& pool = pool8();
  const auto G1 = compose(graphs::M(1, 3), graphs::X(3, 1));
  const auto G2 = compose(graphs::M(1, 5), graphs::X(3, 1));
  const auto G3 = compose(graphs::M(1, 3), graphs::X(5, 1));
  bool ok = pool.contains(G1) && pool.contains(G2) && pool.contains(G3);
  std::ostringstream os;
  os << "seed products in pool: " << (ok ? "yes" : "no");

  std::set<std::string> first_2a;
  std::size_t first_2b = 0;
  for (const auto& t : pool.trace) {
    if (t.sweep != 1) continue;
    if (t.step == "2B") ++first_2b;
    else first_2a.insert(orbit_key(pool.cells.at(t.child).at(t.child_form)));
  }
  const std::set<std::string> expected{orbit_key(G1), orbit_key(G2), orbit_key(G3)};
  ok = ok && first_2a == expected && first_2b == 0;
  os << "; first sweep: " << first_2a.size() << " 2A classes, " << first_2b << " 2B products";

  // Second round of 2A on G1: both three-vertex paths appear.
  const auto g1 = orbit_key(G1);
  std::set<int> middles;
  bool cycle = false;
  for (const auto& t : pool.trace) {
    const auto& child = pool.cells.at(t.child).at(t.child_form);
    const auto d = derived_graphs(child);
    const auto parity = vertex_parity(child);
    if (t.step == "2A" && orbit_key(pool.cells.at(t.parent).at(t.parent_form)) == g1 &&
        d.core.vertex_count() == 3 && d.core.edge_count() == 2) {
      for (std::size_t v = 0; v < 3; ++v)
        if (d.core.degree(v) == 2) middles.insert((*parity)[d.core_to_original[v]]);
    }
    if (t.step == "2B" && d.core.vertex_count() == 4 && d.core.edge_count() == 4) {
      bool all_two = true;
      for (std::size_t v = 0; v < 4; ++v) all_two = all_two && d.core.degree(v) == 2;
      cycle = cycle || all_two;
    }
  }
  ok = ok && middles == std::set<int>{0, 1} && cycle;
  os << "; paths from G1 with middle parities " << middles.size() << "/2; 2B four-cycle: " << (cycle ? "yes" : "no");
  return {ok, os.str()};
}

Outcome pool_invariants() {
  const auto& pool = pool8();
  std::size_t members = 0, bad_conditions = 0, missing_rotations = 0, shrinking = 0;
  for (const auto& [cell, graphs] : pool.cells)
    for (const auto& [form, K] : graphs) {
      ++members;
      if (!check_conditions(K).all()) ++bad_conditions;
      if (K.l() > 0 && !pool.contains(rotate_right(K))) ++missing_rotations;
      if (K.k() > 0 && !pool.contains(rotate_left(K))) ++missing_rotations;
    }
  for (const auto& t : pool.trace)
    if (t.child.first + t.child.second < t.parent.first + t.parent.second) ++shrinking;
  std::ostringstream os;
  os << members << " members, " << bad_conditions << " failing conditions, " << missing_rotations
     << " missing rotations, " << shrinking << " shrinking trace steps of " << pool.trace.size();
  return {bad_conditions == 0 && missing_rotations == 0 && shrinking == 0, os.str()};
}

Outcome word_derivation() {
  const auto w0 = Word::parse("aaaa");
  const auto w1 = apply_rule_A(w0, 0, 3);
  const auto w2 = apply_rule_A(w1, 3, 5);
  const auto w3 = apply_rule_B(w2, 2, 2);
  bool stuck = true;
  for (std::size_t i = 0; i < w0.size(); ++i) stuck = stuck && !rule_B_applicable(w0, i);
  const bool ok = w1.str() == "BBBaaa" && w2.str() == "BBBCCCCCaa" && w3.str() == "BBddCCCCaa" && stuck;
  return {ok, "aaaa -> " + w1.str() + " -> " + w2.str() + " -> " + w3.str() +
                  (stuck ? "; rule B idle on aaaa" : "; rule B applies to aaaa")};
}

Outcome word_iterability() {
  const bool aabb = is_infinitely_iterable(Word::parse("aabb"));
  const bool abcd = is_infinitely_iterable(Word::parse("aBcD"));
  const bool abbb = is_infinitely_iterable(Word::parse("abbb"));
  std::ostringstream os;
  os << std::boolalpha << "aabb:" << aabb << " aBcD:" << abcd << " abbb:" << abbb;
  return {aabb && !abcd && !abbb, os.str()};
}

Outcome pool_words() {
  std::size_t words = 0, bad = 0;
  for (const auto& [cell, graphs] : pool8().cells)
    for (const auto& [form, K] : graphs) {
      if (K.vertex_count() == 0 || !K.is_connected()) continue;
      const auto w = boundary_word(K);
      ++words;
      if (w.size() % 2 != 0 || is_infinitely_iterable(w)) ++bad;
    }
  std::ostringstream os;
  os << words << " boundary words, " << bad << " odd or infinitely iterable";
  return {bad == 0 && words > 0, os.str()};
}

struct Entry {
  const char* id;
  const char* title;
  double budget;
  Outcome (*body)();
};

const Entry kAcceptance[] = {
    {"A1", "hat of four singletons expands through T(fourblock)", 1, a1},
    {"A2", "Mobius worked example on three points", 1, a2},
    {"A3", "hat(singleton^N) evaluates to the permanent vector", 5, a3},
    {"A4", "permanent sandwich identity for N in {3,4,5}", 10, a4},
    {"A5", "cap composition identity for N in {3,5,6,7}", 5, a5},
    {"A6", "enumeration counts and brute-force agreement", 60, a6},
    {"A7", "T^{T(tau)} agrees with T of F_tau on the pool", 60, a7},
    {"A8", "normalization is sound at N=4", 60, a8},
    {"A9", "pool images are fixed by classical D4", 120, a9},
    {"A10", "random functoriality at N in {3,4,5}", 60, a10},
    {"A11", "structure lemmas on connected pool members", 120, a11},
    {"A12", "rank report for C(0,k), k in {2,4,6}", 300, a12},
};

const Entry kExtra[] = {
    {"tau", "tau is an involution and evaluates to delta-1/2", 5, tau_identities},
    {"mobius", "Mobius closed form against recursion", 5, mobius_identities},
    {"schur", "double edge relation", 5, schur_relation},
    {"worked-example", "k0=8 walk through steps 2A and 2B", 60, worked_example},
    {"pool", "pool membership, rotation closure, monotone trace", 60, pool_invariants},
    {"derivation", "word derivation replay", 1, word_derivation},
    {"iterability", "infinite iterability examples", 5, word_iterability},
    {"pool-words", "pool boundary words are even and not iterable", 60, pool_words},
};

CheckResult run_entry(const Entry& e) { return timed(e.id, e.title, e.budget, e.body); }

const Entry& find_entry(const std::string& id) {
  for (const auto& e : kAcceptance)
    if (id == e.id) return e;
  for (const auto& e : kExtra)
    if (id == e.id) return e;
  throw PreconditionError("unknown check " + id);
}

const std::map<std::string, std::vector<std::string>>& suites() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"identities", {"A1", "A2", "A3", "A4", "A5", "tau", "mobius"}},
      {"functor", {"A7", "A8", "A9", "A10", "schur"}},
      {"enumeration", {"A6", "worked-example", "pool", "A11", "A12"}},
      {"words", {"derivation", "iterability", "pool-words"}},
  };
  return s;
}

}  // namespace

// ------------------------------------------------------------ identities

PartitionVector abcd_expansion() {
  const Scalar N = 4;
  const auto fb = pv(parts::fourblock());
  PartitionVector r = Scalar(-4) * conjugate_by_tau(fb, N);
  r -= Scalar(2) * fb - pv(lower({{0, 2}, {1, 3}}));
  r += pv(lower({{0, 1}, {2, 3}}));
  r += pv(lower({{0, 3}, {1, 2}}));
  return r;
}

Partition cap_partition() { return Partition::from_blocks(8, 2, {{0, 8}, {7, 9}, {1, 6}, {2, 5}, {3, 4}}); }

PartitionVector cap_composition(const Scalar& N) {
  const auto middle = tensor(conjugate_by_tau(pv(parts::fourblock()), N), pv(parts::fourblock()));
  return compose(pv(cap_partition()), middle, N);
}

PartitionVector cap_composition_expected(const Scalar& N) {
  const Scalar a = 1 - Scalar(6) / N + Scalar(12) / (N * N);
  const Scalar b = (Scalar(2) / N) * (1 - Scalar(2) / N) * (1 - Scalar(4) / N);
  return a * pv(parts::pair()) - b * pv(parts::singletons(2));
}

Tensor permanent_sandwich(std::size_t N) {
  if (N < 2) throw PreconditionError("permanent sandwich needs N >= 2");
  Tensor t(N, 2, 2);
  std::vector<std::size_t> m(N);
  std::iota(m.begin(), m.end(), 0);
  do {
    std::vector<bool> used(N, false);
    for (std::size_t i = 2; i < N; ++i) used[m[i]] = true;
    for (std::size_t i1 = 0; i1 < N; ++i1)
      for (std::size_t i2 = 0; i2 < N; ++i2)
        if (i1 != i2 && !used[i1] && !used[i2]) t.entries(m[0] * N + m[1], i1 * N + i2) += 1;
  } while (std::next_permutation(m.begin(), m.end()));
  return t;
}

Tensor permanent_sandwich_dense(std::size_t N) {
  const auto P = permanent_vector(N);
  const auto id = evaluate(parts::identity(), N);
  const auto right = tensor(tensor(P, id), id);
  const auto left = tensor(tensor(id, id), involution(P));
  return compose(left, right);
}

Tensor permanent_sandwich_expected(std::size_t N) {
  const auto sum = evaluate(parts::double_identity(), N) + evaluate(parts::crossing(), N) -
                   Scalar(2) * evaluate(parts::connecter(), N);
  return factorial(N - 2) * sum;
}

// ------------------------------------------------------------- test pool

std::vector<BilabelledGraph> reducible_test_pool(const GraphPool& pool, std::size_t max_boundary) {
  std::map<std::string, BilabelledGraph> out;
  auto add = [&](const BilabelledGraph& G) { out.emplace(canonical_form(G), G); };
  for (const auto& [cell, graphs] : pool.cells)
    if (cell.first + cell.second <= max_boundary)
      for (const auto& [form, K] : graphs) add(K);

  for (const auto& [kc, ks] : pool.cells) {
    if (kc.second == 0) continue;
    for (const auto& [hc, hs] : pool.cells) {
      if (hc.first != kc.second || kc.first + hc.second > max_boundary) continue;
      for (const auto& [kf, K] : ks)
        for (const auto& [hf, H] : hs) add(compose(H, K));
    }
  }

  // Closed pieces: an isolated vertex, a closed double edge, and a triangle
  // whose inner vertex contracts to a loop.
  const BilabelledGraph dot(1, {}, {}, {});
  const auto closed_double = compose(graphs::M(2, 0), graphs::X(0, 2));
  const BilabelledGraph triangle(3, {{0, 1}, {1, 2}, {0, 2}}, {}, {0});
  const BilabelledGraph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}, {2});
  add(triangle);
  add(square);
  add(tensor(triangle, graphs::M(0, 2)));
  for (const auto& K : pool.members(1, 1)) {
    add(tensor(K, dot));
    add(tensor(closed_double, K));
  }
  for (const auto& K : pool.members(0, 2)) {
    add(tensor(K, closed_double));
    add(compose(graphs::double_edge(), rotate_right(K)));
  }
  std::vector<BilabelledGraph> result;
  for (auto& [form, G] : out) result.push_back(std::move(G));
  return result;
}

// ------------------------------------------------------------------ dims

std::vector<DimsRow> dims_report(const GraphPool& pool, std::size_t N, std::size_t max_points) {
  if (max_points > pool.k0) throw PreconditionError("pool does not cover " + std::to_string(max_points) + " points");
  checked_volume(N, max_points);
  const auto A = tau_matrix(N);
  std::vector<DimsRow> rows;
  for (std::size_t k = 2; k <= max_points; k += 2) {
    DimsRow row;
    row.k = k;
    std::vector<Vector> vs;
    for (const auto& K : pool.members(0, k)) vs.push_back(as_vector(evaluate_TA(K, A)));
    row.count = vs.size();
    row.rank = rank(std::span<const Vector>(vs));
    if (N == 4) row.classical = d4_fixed_dimension(k);
    rows.push_back(row);
  }
  return rows;
}

std::string dims_csv(const std::vector<DimsRow>& rows) {
  std::ostringstream os;
  os << "k,count,rank,classical\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.count << ',' << r.rank << ',';
    if (r.classical) os << *r.classical;
    os << '\n';
  }
  return os.str();
}

// --------------------------------------------------------------- runners

std::vector<CheckResult> run_acceptance() {
  std::vector<CheckResult> out;
  for (const auto& e : kAcceptance) out.push_back(run_entry(e));
  return out;
}

CheckResult run_acceptance_check(int index) {
  if (index < 1 || index > 12) throw PreconditionError("acceptance checks are numbered 1..12");
  return run_entry(kAcceptance[index - 1]);
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, ids] : suites()) names.push_back(name);
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  if (suite == "all") {
    for (const auto& name : {"identities", "functor", "enumeration", "words"})
      for (auto& r : run_suite(name)) out.push_back(std::move(r));
    return out;
  }
  auto it = suites().find(suite);
  if (it == suites().end()) throw PreconditionError("unknown suite " + suite);
  for (const auto& id : it->second) out.push_back(run_entry(find_entry(id)));
  return out;
}

std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.id << " (" << std::fixed << std::setprecision(3) << r.seconds << "s) "
     << r.title << ": " << r.detail;
  return os.str();
}

}  // namespace d4
