#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "d4plus/bigraph.hpp"
#include "d4plus/checks.hpp"
#include "d4plus/enumerator.hpp"
#include "d4plus/errors.hpp"

using namespace d4;

namespace {

BilabelledGraph random_graph(std::mt19937& gen, std::size_t n, std::size_t m, std::size_t k, std::size_t l) {
  std::uniform_int_distribution<std::size_t> v(0, n - 1);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.emplace_back(v(gen), v(gen));
  std::vector<std::size_t> a(k), b(l);
  for (auto& x : a) x = v(gen);
  for (auto& x : b) x = v(gen);
  return BilabelledGraph(n, edges, a, b);
}

BilabelledGraph relabel(const BilabelledGraph& K, const std::vector<std::size_t>& perm) {
  std::vector<Edge> edges;
  for (auto [u, v] : K.edges()) edges.emplace_back(perm[u], perm[v]);
  std::vector<std::size_t> a, b;
  for (auto x : K.inputs()) a.push_back(perm[x]);
  for (auto x : K.outputs()) b.push_back(perm[x]);
  return BilabelledGraph(K.vertex_count(), edges, a, b);
}

bool isomorphism_oracle(const BilabelledGraph& K, const BilabelledGraph& H) {
  if (K.vertex_count() != H.vertex_count() || K.edge_count() != H.edge_count() || K.k() != H.k() || K.l() != H.l())
    return false;
  std::vector<std::size_t> perm(K.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (relabel(K, perm) == H) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Exhaustive rotation systems: a connected graph is planar iff some system
// gives V - E + F = 2. Returns nullopt when the search would be too large.
std::optional<bool> planarity_oracle(std::size_t n, std::vector<Edge> edges) {
  std::set<Edge> simple;
  for (auto [u, v] : edges)
    if (u != v) simple.insert({std::min(u, v), std::max(u, v)});
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : simple) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::size_t> comp(n, n);
  bool all = true;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> members{s};
    comp[s] = s;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto w : adj[members[i]])
        if (comp[w] == n) {
          comp[w] = s;
          members.push_back(w);
        }
    std::size_t e = 0;
    double work = 1;
    for (auto v : members) {
      e += adj[v].size();
      for (std::size_t f = 2; f < adj[v].size(); ++f) work *= static_cast<double>(f);
    }
    e /= 2;
    if (e <= 2) continue;
    if (work > 2e4) return std::nullopt;
    // Odometer over the permutations of each rotation (first neighbour fixed).
    std::map<std::size_t, std::vector<std::size_t>> rot;
    for (auto v : members) rot[v] = adj[v];
    bool found = false;
    while (true) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> next;  // (v, u) -> neighbour after u around v
      for (auto& [v, r] : rot)
        for (std::size_t i = 0; i < r.size(); ++i) next[{v, r[i]}] = r[(i + 1) % r.size()];
      std::set<std::pair<std::size_t, std::size_t>> seen;
      std::size_t faces = 0;
      for (auto& [v, r] : rot)
        for (auto u : r) {
          std::pair<std::size_t, std::size_t> dart{v, u};
          if (seen.count(dart)) continue;
          ++faces;
          while (!seen.count(dart)) {
            seen.insert(dart);
            dart = {dart.second, next[{dart.second, dart.first}]};
          }
        }
      if (members.size() + faces == e + 2) {
        found = true;
        break;
      }
      bool advanced = false;
      for (auto& [v, r] : rot)
        if (r.size() > 2 && std::next_permutation(r.begin() + 1, r.end())) {
          advanced = true;
          break;
        }
      if (!advanced) break;
    }
    all = all && found;
    if (!all) return false;
  }
  return all;
}

std::vector<Edge> complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

}  // namespace

TEST_CASE("construction validates ids and sorts edges") {
  BilabelledGraph K(3, {{2, 0}, {1, 1}}, {0}, {2});
  CHECK(K.edges() == std::vector<Edge>{{0, 2}, {1, 1}});
  CHECK_THROWS_AS(BilabelledGraph(2, {{0, 2}}, {}, {}), SchemaError);
  CHECK_THROWS_AS(BilabelledGraph(2, {}, {5}, {}), SchemaError);
  CHECK(K.degree(1) == 2);
  CHECK(K.has_loop());
}

TEST_CASE("category operations") {
  const auto K = compose(graphs::X(1, 2), graphs::edge());
  CHECK(compose(graphs::M(1, 1), graphs::edge()) == graphs::edge());
  CHECK(are_isomorphic(compose(graphs::M(2, 2), graphs::M(0, 2)), graphs::M(0, 2)));
  CHECK(are_isomorphic(compose(tensor(graphs::M(1, 1), graphs::M(1, 1)), compose(graphs::X(1, 2), graphs::M(1, 1))), graphs::X(1, 2)));
  CHECK(compose(graphs::M(2, 2), graphs::X(1, 2)).vertex_count() == 3);
  const auto two_path = compose(graphs::edge(), graphs::edge());
  CHECK(two_path.vertex_count() == 3);
  CHECK(two_path.edge_count() == 2);
  CHECK(two_path.degree(two_path.outputs()[0]) == 1);
  const auto t = tensor(graphs::M(0, 2), graphs::M(0, 2));
  CHECK(t.vertex_count() == 2);
  CHECK(t.edge_count() == 0);
  CHECK(t.outputs() == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK_THROWS_AS(compose(graphs::M(2, 0), graphs::edge()), ArityError);
  CHECK(K.k() == 1);
}

TEST_CASE("category axioms on random graphs") {
  std::mt19937 gen(31);
  for (int i = 0; i < 200; ++i) {
    const std::size_t a = i % 3, b = (i / 3) % 3, c = (i / 9) % 3, d = 1 + i % 2;
    const auto K = random_graph(gen, 1 + i % 3, i % 4, a, b);
    const auto H = random_graph(gen, 1 + i % 4, i % 3, b, c);
    const auto J = random_graph(gen, 2, 1, c, d);
    CHECK(are_isomorphic(compose(J, compose(H, K)), compose(compose(J, H), K)));
    CHECK(are_isomorphic(involution(compose(H, K)), compose(involution(K), involution(H))));
    CHECK(involution(involution(K)) == K);
    if (K.l() > 0) CHECK(unrotate_right(rotate_right(K)) == K);
    if (K.k() > 0) CHECK(unrotate_left(rotate_left(K)) == K);
    const auto S = random_graph(gen, 2, 2, a, b), U = random_graph(gen, 2, 1, d, a);
    const auto R = random_graph(gen, 1, 1, b, c), T = random_graph(gen, 3, 2, a, c);
    CHECK(are_isomorphic(compose(tensor(R, T), tensor(S, U)), tensor(compose(R, S), compose(T, U))));
    CHECK(are_isomorphic(tensor(tensor(K, H), J), tensor(K, tensor(H, J))));
  }
}

TEST_CASE("from_partition and the kernel") {
  CHECK(from_partition(parts::fourblock()) == graphs::M(0, 4));
  CHECK(from_partition(parts::identity()) == graphs::M(1, 1));
  for (const auto& p : all_partitions(2, 2)) CHECK(kernel_partition(from_partition(p)) == p);
}

TEST_CASE("derived graphs") {
  const auto d = derived_graphs(graphs::M(0, 2));
  CHECK(d.envelope.vertex_count() == 3);
  CHECK(d.envelope.edge_count() == 4);  // two pendant edges plus the 2-cycle
  CHECK(graphs::M(2, 3).extended_degree(0) == 5);
  const auto X = graphs::X(0, 4);
  CHECK(X.extended_degree(0) == 4);
  for (std::size_t v = 1; v <= 4; ++v) CHECK(X.extended_degree(v) == 2);
  const auto two_path = compose(graphs::edge(), graphs::edge());
  for (std::size_t v = 0; v < 3; ++v)
    if (two_path.is_inner(v)) CHECK(two_path.extended_degree(v) == 2);
  const auto dx = derived_graphs(X);
  CHECK(dx.core.vertex_count() == 1);
  CHECK(dx.core.outputs() == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(dx.core_to_original == std::vector<std::size_t>{0});
  // The bare edge keeps both ends.
  CHECK(derived_graphs(graphs::edge()).core.vertex_count() == 2);
}

TEST_CASE("planarity examples") {
  for (std::size_t k = 0; k <= 4; ++k)
    for (std::size_t l = 0; l + k <= 6; ++l) {
      CHECK(is_planar_bilabelled(graphs::M(k, l)));
      CHECK(is_planar_bilabelled(graphs::X(k, l)));
    }
  CHECK_FALSE(is_planar_bilabelled(from_partition(parts::crossing())));
  CHECK(is_planar_bilabelled(from_partition(parts::double_identity())));
  CHECK_FALSE(is_planar_graph(5, complete(5)));
  CHECK(is_planar_graph(4, complete(4)));
  std::vector<Edge> k33;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 3; j < 6; ++j) k33.emplace_back(i, j);
  CHECK_FALSE(is_planar_graph(6, k33));
  CHECK(planarity_oracle(5, complete(5)) == false);
  CHECK(planarity_oracle(6, k33) == false);
}

TEST_CASE("planarity agrees with the rotation-system oracle") {
  std::mt19937 gen(41);
  std::size_t compared = 0, nonplanar = 0;
  std::bernoulli_distribution keep(0.75);
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 5 + i % 2;
    std::vector<Edge> edges;
    for (auto e : complete(n))
      if (keep(gen)) edges.push_back(e);
    if (i % 5 == 0 && !edges.empty()) edges.push_back(edges.front());  // a parallel edge
    if (i % 7 == 0) edges.emplace_back(1, 1);
    const auto oracle = planarity_oracle(n, edges);
    if (!oracle) continue;
    ++compared;
    nonplanar += !*oracle;
    CHECK(is_planar_graph(n, edges) == *oracle);
  }
  CHECK(compared > 200);
  CHECK(nonplanar > 5);
  // Bilabelled planarity through K^⊙ on small partition graphs.
  for (std::size_t k = 0; k <= 2; ++k)
    for (const auto& p : all_partitions(k, 4 - k)) {
      const auto G = apex_graph(from_partition(p));
      const auto oracle = planarity_oracle(G.vertex_count(), G.edges());
      if (oracle) CHECK(is_planar_bilabelled(from_partition(p)) == *oracle);
      CHECK(is_planar_bilabelled(from_partition(p)) == is_noncrossing(p));
    }
}

TEST_CASE("condition report") {
  CHECK(check_conditions(graphs::M(0, 4)).all());
  const auto r = check_conditions(rotate_left(graphs::X(1, 1)));
  CHECK_FALSE(r.no_contractible);
  CHECK(r.contractible_vertex == std::optional<std::size_t>(0));
  const auto aa = check_conditions(graphs::double_edge());
  CHECK_FALSE(aa.no_multi_edges);
  CHECK(aa.multi_edge.has_value());
  const auto closed = check_conditions(tensor(graphs::M(0, 2), BilabelledGraph(1, {}, {}, {})));
  CHECK_FALSE(closed.boundary_touching);
  const auto odd = check_conditions(graphs::M(0, 3));
  CHECK_FALSE(odd.even_degrees);
  CHECK_FALSE(check_conditions(graphs::edge()).bipartite);
  CHECK_FALSE(check_conditions(from_partition(parts::crossing())).planar);
  CHECK_FALSE(check_conditions(BilabelledGraph(1, {{0, 0}}, {}, {0, 0})).bipartite);
}

TEST_CASE("two-path contraction") {
  const auto two_path = compose(graphs::edge(), graphs::edge());
  std::size_t mid = 0;
  while (!two_path.is_inner(mid)) ++mid;
  const auto c = two_path_contract(two_path, mid);
  CHECK_FALSE(c.loop_created);
  CHECK(c.graph == graphs::M(1, 1));

  // A 4-cycle with boundary on opposite corners: the neighbours merge into a double edge.
  const BilabelledGraph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}, {2});
  const auto s = two_path_contract(square, 1);
  CHECK(s.graph.vertex_count() == 2);
  CHECK(s.graph.edge_count() == 2);
  CHECK(s.graph.multiplicity(0, 1) == 2);

  const BilabelledGraph triangle(3, {{0, 1}, {1, 2}, {0, 2}}, {}, {0});
  const auto t = two_path_contract(triangle, 1);
  CHECK(t.loop_created);
  CHECK(t.graph.has_loop());

  CHECK_THROWS_AS(two_path_contract(square, 0), PreconditionError);
  CHECK_THROWS_AS(two_path_contract(graphs::X(0, 4), 0), PreconditionError);
}

TEST_CASE("normalize examples") {
  const auto iso = tensor(graphs::M(0, 2), BilabelledGraph(1, {}, {}, {}));
  const auto a = normalize(iso, 5);
  CHECK(a.factor == 5);
  CHECK(a.graph == graphs::M(0, 2));
  const auto b = normalize(graphs::double_edge(), 4);
  CHECK(b.factor == Scalar(1) / 4);
  CHECK(b.graph == from_partition(parts::disconnecter()));
  const auto c = normalize(graphs::X(0, 4), 4);
  CHECK(c.factor == 1);
  CHECK(c.graph == graphs::X(0, 4));
  CHECK(c.steps == 0);
  CHECK_THROWS_AS(normalize(graphs::M(0, 2), 0), PreconditionError);
}

TEST_CASE("normalize is confluent and lands in C") {
  const auto pool = algorithm_A(6);
  auto tp = reducible_test_pool(pool, 4);
  std::mt19937 gen(43);
  std::shuffle(tp.begin(), tp.end(), gen);
  std::size_t tried = 0;
  for (const auto& K : tp) {
    if (applicable_reductions(K).size() < 2) continue;
    if (++tried > 40) break;
    const auto ref = normalize(K, 4);
    const auto ref_form = canonical_form(ref.graph);
    for (int order = 0; order < 100; ++order) {
      Normalized cur{1, K, false, 0};
      while (true) {
        const auto rs = applicable_reductions(cur.graph);
        if (rs.empty()) break;
        const auto r = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(gen)];
        const auto step = apply_reduction(cur.graph, r, 4);
        cur.factor *= step.factor;
        cur.graph = step.graph;
        cur.loop_created = cur.loop_created || step.loop_created;
      }
      CHECK(cur.factor == ref.factor);
      CHECK(canonical_form(cur.graph) == ref_form);
    }
  }
  CHECK(tried > 30);
  for (const auto& K : tp) {
    if (!check_conditions(K).in_scriptC() || K.has_loop()) continue;
    const auto nz = normalize(K, 4);
    CHECK((check_conditions(nz.graph).all() || nz.loop_created));
  }
}

TEST_CASE("canonical forms") {
  const auto X = graphs::X(1, 3);
  CHECK(canonical_form(X) == canonical_form(relabel(X, {4, 3, 1, 0, 2})));
  CHECK(canonical_form(graphs::M(0, 4)) != canonical_form(graphs::X(0, 4)));
  const auto side = tensor(graphs::M(0, 2), graphs::M(0, 2));
  const auto nested = cyclic_shift(side);
  CHECK(canonical_form(side) != canonical_form(nested));
  CHECK_FALSE(isomorphism_oracle(side, nested));
  CHECK(canonical_graph(X).vertex_count() == 5);
  CHECK(are_isomorphic(canonical_graph(X), X));
}

TEST_CASE("canonical form agrees with brute-force isomorphism") {
  std::mt19937 gen(47);
  std::vector<BilabelledGraph> gs;
  for (int i = 0; i < 60; ++i) gs.push_back(random_graph(gen, 4, 4, 1, 1));
  for (int i = 0; i < 40; ++i) gs.push_back(random_graph(gen, 5, 5, 0, 2));
  std::size_t same = 0;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i; j < gs.size(); ++j) {
      const bool oracle = isomorphism_oracle(gs[i], gs[j]);
      same += oracle && i != j;
      CHECK((canonical_form(gs[i]) == canonical_form(gs[j])) == oracle);
    }
  CHECK(same > 0);
  for (const auto& K : gs) {
    std::vector<std::size_t> perm(K.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    CHECK(canonical_form(relabel(K, perm)) == canonical_form(K));
  }
}

TEST_CASE("three-connectivity") {
  // Paths from the k0 = 8 walk.
  CHECK(three_connectivity_check(compose(graphs::M(1, 3), graphs::X(3, 1))));
  CHECK(three_connectivity_check(compose(graphs::M(1, 5), graphs::X(3, 1))));
  // Boundary only on one corner of a 4-cycle: that corner is a cut vertex.
  const BilabelledGraph control(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}, {0, 0, 0});
  CHECK_FALSE(three_connectivity_check(control));
  const BilabelledGraph twin(2, {{0, 1}}, {0, 0, 0}, {1, 1, 1});
  CHECK(three_connectivity_check(twin));
  CHECK_THROWS_AS(three_connectivity_check(graphs::M(2, 2)), PreconditionError);
  CHECK_THROWS_AS(three_connectivity_check(graphs::null_graph()), PreconditionError);
}

TEST_CASE("conditions (i)-(iii) are closed under the operations") {
  const auto pool = algorithm_A(4);
  std::vector<BilabelledGraph> small;
  for (const auto& K : pool.all_members())
    if (K.k() + K.l() <= 4) small.push_back(K);
  for (const auto& K : small) {
    CHECK(check_conditions(involution(K)).in_scriptC());
    if (K.l() > 0) CHECK(check_conditions(rotate_right(K)).in_scriptC());
    if (K.k() > 0) CHECK(check_conditions(rotate_left(K)).in_scriptC());
    for (const auto& H : small) {
      if (K.k() + H.k() + K.l() + H.l() <= 6) CHECK(check_conditions(tensor(K, H)).in_scriptC());
      if (H.k() == K.l()) {
        const auto G = compose(H, K);
        CHECK(check_conditions(G).in_scriptC());
        for (std::size_t v = 0; v < G.vertex_count(); ++v)
          if (G.is_inner(v) && G.degree(v) == 2 && !G.has_loop()) {
            const auto c = two_path_contract(G, v);
            if (!c.loop_created) CHECK(check_conditions(c.graph).in_scriptC());
          }
      }
    }
  }
}
