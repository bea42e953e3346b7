#include "d4plus/bigraph.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "d4plus/detail/dsu.hpp"
#include "d4plus/errors.hpp"

namespace d4 {

namespace {

constexpr std::size_t kGone = std::numeric_limits<std::size_t>::max();

Edge canonical_edge(std::size_t u, std::size_t v) { return u <= v ? Edge{u, v} : Edge{v, u}; }

// Renumbers vertices through map (kGone = delete). Deleted vertices must not be referenced.
BilabelledGraph relabel(const BilabelledGraph& K, const std::vector<std::size_t>& map, std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(K.edge_count());
  for (auto [u, v] : K.edges()) {
    if (map[u] == kGone || map[v] == kGone) throw PreconditionError("relabel: edge touches a deleted vertex");
    edges.push_back(canonical_edge(map[u], map[v]));
  }
  auto tuple = [&](const std::vector<std::size_t>& t) {
    std::vector<std::size_t> out;
    for (auto x : t) {
      if (map[x] == kGone) throw PreconditionError("relabel: boundary vertex deleted");
      out.push_back(map[x]);
    }
    return out;
  };
  return BilabelledGraph(n, std::move(edges), tuple(K.inputs()), tuple(K.outputs()));
}

// Quotient by a union-find; classes are numbered by their smallest vertex.
BilabelledGraph quotient(std::size_t n, const std::vector<Edge>& edges, const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& b, detail::DisjointSets& dsu) {
  std::vector<std::size_t> id(n, kGone);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto r = dsu.find(v);
    if (id[r] == kGone) id[r] = next++;
  }
  std::vector<std::size_t> map(n);
  for (std::size_t v = 0; v < n; ++v) map[v] = id[dsu.find(v)];
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) out.push_back(canonical_edge(map[u], map[v]));
  std::vector<std::size_t> na, nb;
  for (auto x : a) na.push_back(map[x]);
  for (auto x : b) nb.push_back(map[x]);
  return BilabelledGraph(next, std::move(out), std::move(na), std::move(nb));
}

}  // namespace

// ------------------------------------------------------- BilabelledGraph

BilabelledGraph::BilabelledGraph(std::size_t vertices, std::vector<Edge> edges, std::vector<std::size_t> inputs,
                                 std::vector<std::size_t> outputs)
    : n_(vertices), edges_(std::move(edges)), a_(std::move(inputs)), b_(std::move(outputs)) {
  for (auto& e : edges_) {
    if (e.first >= n_ || e.second >= n_) {
      throw SchemaError("edge [" + std::to_string(e.first) + "," + std::to_string(e.second) +
                        "] references a vertex >= " + std::to_string(n_));
    }
    e = canonical_edge(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] >= n_) throw SchemaError("input " + std::to_string(i) + " references a missing vertex");
  for (std::size_t i = 0; i < b_.size(); ++i)
    if (b_[i] >= n_) throw SchemaError("output " + std::to_string(i) + " references a missing vertex");
}

std::size_t BilabelledGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (auto [x, y] : edges_) d += (x == v) + (y == v);
  return d;
}

std::size_t BilabelledGraph::boundary_occurrences(std::size_t v) const {
  return static_cast<std::size_t>(std::count(a_.begin(), a_.end(), v) + std::count(b_.begin(), b_.end(), v));
}

std::size_t BilabelledGraph::extended_degree(std::size_t v) const {
  if (v >= n_) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
  return degree(v) + boundary_occurrences(v);
}

std::size_t BilabelledGraph::multiplicity(std::size_t u, std::size_t v) const {
  const auto e = canonical_edge(u, v);
  auto [lo, hi] = std::equal_range(edges_.begin(), edges_.end(), e);
  return static_cast<std::size_t>(hi - lo);
}

bool BilabelledGraph::has_loop() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; });
}

std::vector<std::size_t> BilabelledGraph::neighbours(std::size_t v) const {
  std::vector<std::size_t> out;
  for (auto [x, y] : edges_) {
    if (x == v) out.push_back(y);
    else if (y == v) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> BilabelledGraph::components() const {
  detail::DisjointSets dsu(n_);
  for (auto [x, y] : edges_) dsu.unite(x, y);
  std::vector<std::size_t> id(n_, kGone), comp(n_);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    auto r = dsu.find(v);
    if (id[r] == kGone) id[r] = next++;
    comp[v] = id[r];
  }
  return comp;
}

std::size_t BilabelledGraph::component_count() const {
  auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// ------------------------------------------------------------ named graphs

namespace graphs {

BilabelledGraph null_graph() { return BilabelledGraph(); }

BilabelledGraph M(std::size_t k, std::size_t l) {
  return BilabelledGraph(1, {}, std::vector<std::size_t>(k, 0), std::vector<std::size_t>(l, 0));
}

BilabelledGraph X(std::size_t k, std::size_t l) {
  std::vector<Edge> edges;
  std::vector<std::size_t> a, b;
  for (std::size_t i = 1; i <= k + l; ++i) edges.emplace_back(0, i);
  for (std::size_t i = 1; i <= k; ++i) a.push_back(i);
  for (std::size_t i = k + 1; i <= k + l; ++i) b.push_back(i);
  return BilabelledGraph(k + l + 1, std::move(edges), std::move(a), std::move(b));
}

BilabelledGraph edge() { return BilabelledGraph(2, {{0, 1}}, {0}, {1}); }
BilabelledGraph double_edge() { return BilabelledGraph(2, {{0, 1}, {0, 1}}, {0}, {1}); }

}  // namespace graphs

BilabelledGraph from_partition(const Partition& p) {
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < p.upper(); ++i) a.push_back(static_cast<std::size_t>(p.block_of(i)));
  for (std::size_t j = 0; j < p.lower(); ++j) b.push_back(static_cast<std::size_t>(p.block_of(p.upper() + j)));
  return BilabelledGraph(p.block_count(), {}, std::move(a), std::move(b));
}

Partition kernel_partition(const BilabelledGraph& K) {
  std::vector<int> labels;
  for (auto x : K.inputs()) labels.push_back(static_cast<int>(x));
  for (auto x : K.outputs()) labels.push_back(static_cast<int>(x));
  return Partition(K.k(), K.l(), std::move(labels));
}

// ------------------------------------------------------ category structure

BilabelledGraph tensor(const BilabelledGraph& K, const BilabelledGraph& H) {
  const std::size_t s = K.vertex_count();
  std::vector<Edge> edges = K.edges();
  for (auto [u, v] : H.edges()) edges.emplace_back(u + s, v + s);
  auto a = K.inputs();
  for (auto x : H.inputs()) a.push_back(x + s);
  auto b = K.outputs();
  for (auto x : H.outputs()) b.push_back(x + s);
  return BilabelledGraph(s + H.vertex_count(), std::move(edges), std::move(a), std::move(b));
}

BilabelledGraph compose(const BilabelledGraph& H, const BilabelledGraph& K) {
  if (K.l() != H.k()) {
    throw ArityError("graph composition: " + std::to_string(K.l()) + " outputs feed " + std::to_string(H.k()) +
                     " inputs");
  }
  const std::size_t s = K.vertex_count();
  const std::size_t n = s + H.vertex_count();
  detail::DisjointSets dsu(n);
  for (std::size_t i = 0; i < K.l(); ++i) dsu.unite(K.outputs()[i], s + H.inputs()[i]);
  std::vector<Edge> edges = K.edges();
  for (auto [u, v] : H.edges()) edges.emplace_back(u + s, v + s);
  std::vector<std::size_t> b;
  for (auto x : H.outputs()) b.push_back(x + s);
  return quotient(n, edges, K.inputs(), b, dsu);
}

BilabelledGraph involution(const BilabelledGraph& K) {
  return BilabelledGraph(K.vertex_count(), K.edges(), K.outputs(), K.inputs());
}

BilabelledGraph rotate_right(const BilabelledGraph& K) {
  if (K.l() == 0) throw PreconditionError("rotate_right needs at least one output");
  auto a = K.inputs();
  auto b = K.outputs();
  a.push_back(b.back());
  b.pop_back();
  return BilabelledGraph(K.vertex_count(), K.edges(), std::move(a), std::move(b));
}

BilabelledGraph rotate_left(const BilabelledGraph& K) {
  if (K.k() == 0) throw PreconditionError("rotate_left needs at least one input");
  auto a = K.inputs();
  auto b = K.outputs();
  b.insert(b.begin(), a.front());
  a.erase(a.begin());
  return BilabelledGraph(K.vertex_count(), K.edges(), std::move(a), std::move(b));
}

BilabelledGraph unrotate_right(const BilabelledGraph& K) {
  if (K.k() == 0) throw PreconditionError("unrotate_right needs at least one input");
  auto a = K.inputs();
  auto b = K.outputs();
  b.push_back(a.back());
  a.pop_back();
  return BilabelledGraph(K.vertex_count(), K.edges(), std::move(a), std::move(b));
}

BilabelledGraph unrotate_left(const BilabelledGraph& K) {
  if (K.l() == 0) throw PreconditionError("unrotate_left needs at least one output");
  auto a = K.inputs();
  auto b = K.outputs();
  a.insert(a.begin(), b.front());
  b.erase(b.begin());
  return BilabelledGraph(K.vertex_count(), K.edges(), std::move(a), std::move(b));
}

BilabelledGraph to_zero_form(const BilabelledGraph& K) {
  BilabelledGraph W = K;
  while (W.k() > 0) W = rotate_left(W);
  return W;
}

BilabelledGraph from_zero_form(const BilabelledGraph& W, std::size_t k) {
  if (W.k() != 0 || k > W.l()) throw PreconditionError("from_zero_form needs a (0,n) graph with n >= k");
  BilabelledGraph K = W;
  for (std::size_t i = 0; i < k; ++i) K = unrotate_left(K);
  return K;
}

BilabelledGraph cyclic_shift(const BilabelledGraph& W) {
  if (W.k() != 0) throw PreconditionError("cyclic_shift needs a (0,n) graph");
  if (W.l() == 0) return W;
  return rotate_left(rotate_right(W));
}

std::vector<BilabelledGraph> rotation_orbit(const BilabelledGraph& K) {
  std::vector<BilabelledGraph> out;
  BilabelledGraph W = to_zero_form(K);
  const std::size_t n = W.l();
  for (std::size_t s = 0; s < std::max<std::size_t>(n, 1); ++s) {
    BilabelledGraph R = W;
    out.push_back(R);
    for (std::size_t k = 0; k < n; ++k) {
      R = rotate_right(R);
      out.push_back(R);
    }
    W = cyclic_shift(W);
  }
  return out;
}

BilabelledGraph remove_vertices(const BilabelledGraph& K, const std::vector<std::size_t>& doomed) {
  std::vector<bool> gone(K.vertex_count(), false);
  for (auto v : doomed) gone.at(v) = true;
  std::vector<std::size_t> map(K.vertex_count(), kGone);
  std::size_t next = 0;
  for (std::size_t v = 0; v < K.vertex_count(); ++v)
    if (!gone[v]) map[v] = next++;
  std::vector<Edge> edges;
  for (auto [u, v] : K.edges())
    if (!gone[u] && !gone[v]) edges.push_back(canonical_edge(map[u], map[v]));
  BilabelledGraph stripped(K.vertex_count(), {}, K.inputs(), K.outputs());
  // Edges are re-added after renumbering; relabel checks the boundary.
  BilabelledGraph r = relabel(stripped, map, next);
  return BilabelledGraph(next, std::move(edges), r.inputs(), r.outputs());
}

// --------------------------------------------------------- derived graphs

BilabelledGraph apex_graph(const BilabelledGraph& K) {
  const std::size_t n = K.vertex_count();
  const std::size_t k = K.k();
  const std::size_t m = k + K.l();
  std::vector<Edge> edges = K.edges();
  // Cycle position 0 is α_k, position k-1 is α_1, position k+j-1 is β_j.
  for (std::size_t i = 0; i < k; ++i) edges.emplace_back(K.inputs()[i], n + (k - 1 - i));
  for (std::size_t j = 0; j < K.l(); ++j) edges.emplace_back(K.outputs()[j], n + k + j);
  for (std::size_t p = 0; p + 1 < m; ++p) edges.emplace_back(n + p, n + p + 1);
  if (m >= 2) edges.emplace_back(n + m - 1, n);
  if (m == 1) edges.emplace_back(n, n);
  const std::size_t apex = n + m;
  for (std::size_t p = 0; p < m; ++p) edges.emplace_back(n + p, apex);
  return BilabelledGraph(n + m + 1, std::move(edges), {}, {});
}

DerivedGraphs derived_graphs(const BilabelledGraph& K) {
  DerivedGraphs d;
  d.apex = apex_graph(K);
  const std::size_t n = K.vertex_count();
  const std::size_t m = K.k() + K.l();
  {
    std::vector<Edge> edges;
    for (auto [u, v] : d.apex.edges())
      if (u != n + m && v != n + m) edges.emplace_back(u, v);
    d.envelope = BilabelledGraph(n + m, std::move(edges), {}, {});
  }

  // Stubs: d_v = 1 and one boundary string. A stub whose neighbour is itself a
  // stub (the bare edge graph) is kept so that a• stays inside K^•.
  auto is_stub = [&](std::size_t v) { return K.degree(v) == 1 && K.extended_degree(v) == 2; };
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> partner(n, kGone);
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_stub(v)) continue;
    const std::size_t w = K.neighbours(v).front();
    if (is_stub(w)) continue;
    removed[v] = true;
    partner[v] = w;
  }
  std::vector<std::size_t> map(n, kGone);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v]) {
      map[v] = next++;
      d.core_to_original.push_back(v);
    }
  std::vector<Edge> edges;
  for (auto [u, v] : K.edges())
    if (!removed[u] && !removed[v]) edges.emplace_back(map[u], map[v]);
  auto bullet = [&](const std::vector<std::size_t>& t) {
    std::vector<std::size_t> out;
    for (auto x : t) out.push_back(removed[x] ? map[partner[x]] : map[x]);
    return out;
  };
  d.core = BilabelledGraph(next, std::move(edges), bullet(K.inputs()), bullet(K.outputs()));
  return d;
}

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

std::vector<Edge> simple_edges(const std::vector<Edge>& edges) {
  std::set<Edge> s;
  for (auto e : edges)
    if (e.first != e.second) s.insert(canonical_edge(e.first, e.second));
  return {s.begin(), s.end()};
}

bool planar_with_witness(std::size_t vertices, const std::vector<Edge>& edges, std::vector<Edge>* witness) {
  const auto simple = simple_edges(edges);
  BoostGraph g(vertices);
  for (auto [u, v] : simple) boost::add_edge(u, v, g);
  auto edge_index = boost::get(boost::edge_index, g);
  int counter = 0;
  boost::graph_traits<BoostGraph>::edge_iterator ei, ei_end;
  for (boost::tie(ei, ei_end) = boost::edges(g); ei != ei_end; ++ei) boost::put(edge_index, *ei, counter++);
  if (witness == nullptr) return boost::boyer_myrvold_planarity_test(g);
  std::vector<boost::graph_traits<BoostGraph>::edge_descriptor> kuratowski;
  const bool planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                                          boost::boyer_myrvold_params::kuratowski_subgraph =
                                                              std::back_inserter(kuratowski));
  for (const auto& e : kuratowski) {
    witness->push_back(canonical_edge(boost::source(e, g), boost::target(e, g)));
  }
  std::sort(witness->begin(), witness->end());
  return planar;
}

}  // namespace

bool is_planar_graph(std::size_t vertices, const std::vector<Edge>& edges) {
  return planar_with_witness(vertices, edges, nullptr);
}

bool is_planar_bilabelled(const BilabelledGraph& K) {
  const auto apex = apex_graph(K);
  return is_planar_graph(apex.vertex_count(), apex.edges());
}

std::optional<std::vector<int>> vertex_parity(const BilabelledGraph& K) {
  if (K.has_loop()) return std::nullopt;
  const std::size_t n = K.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : K.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> colour(n, -1);
  auto bfs = [&](std::size_t root) {
    colour[root] = 0;
    std::vector<std::size_t> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto u = queue[i];
      for (auto w : adj[u]) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
        } else if (colour[w] == colour[u]) {
          return false;
        }
      }
    }
    return true;
  };
  for (auto x : K.inputs())
    if (colour[x] == -1 && !bfs(x)) return std::nullopt;
  for (auto x : K.outputs())
    if (colour[x] == -1 && !bfs(x)) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v)
    if (colour[v] == -1 && !bfs(v)) return std::nullopt;
  for (auto x : K.inputs())
    if (colour[x] != 0) return std::nullopt;
  for (auto x : K.outputs())
    if (colour[x] != 0) return std::nullopt;
  return colour;
}

// -------------------------------------------------------------- conditions

std::string ConditionReport::describe() const {
  std::ostringstream os;
  os << "(i) " << (planar ? "ok" : "FAIL") << " (ii) " << (even_degrees ? "ok" : "FAIL") << " (iii) "
     << (bipartite ? "ok" : "FAIL") << " (iv) " << (no_contractible ? "ok" : "FAIL") << " (v) "
     << (no_multi_edges ? "ok" : "FAIL") << " (vi) " << (boundary_touching ? "ok" : "FAIL");
  if (!planar) os << "; K^⊙ has a Kuratowski subgraph with " << kuratowski_edges.size() << " edges";
  if (odd_degree_vertex) os << "; odd extended degree at " << *odd_degree_vertex;
  if (parity_witness) os << "; parity conflict at " << *parity_witness;
  if (contractible_vertex) os << "; contractible vertex " << *contractible_vertex;
  if (multi_edge) os << "; multi-edge " << multi_edge->first << "-" << multi_edge->second;
  if (boundary_free_vertex) os << "; boundary-free component containing " << *boundary_free_vertex;
  return os.str();
}

ConditionReport check_conditions(const BilabelledGraph& K) {
  ConditionReport r;
  const std::size_t n = K.vertex_count();

  const auto apex = apex_graph(K);
  r.planar = planar_with_witness(apex.vertex_count(), apex.edges(), &r.kuratowski_edges);

  for (std::size_t v = 0; v < n; ++v) {
    if (K.extended_degree(v) % 2 != 0) {
      r.even_degrees = false;
      r.odd_degree_vertex = v;
      break;
    }
  }

  if (!vertex_parity(K)) {
    r.bipartite = false;
    // Witness: a loop vertex, else the first vertex whose BFS colour clashes.
    for (auto [u, v] : K.edges())
      if (u == v) {
        r.parity_witness = u;
        break;
      }
    if (!r.parity_witness) {
      std::vector<int> colour(n, -1);
      std::vector<std::vector<std::size_t>> adj(n);
      for (auto [u, v] : K.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::vector<std::size_t> roots(K.inputs());
      roots.insert(roots.end(), K.outputs().begin(), K.outputs().end());
      for (std::size_t v = 0; v < n; ++v) roots.push_back(v);
      for (auto root : roots) {
        if (colour[root] != -1) {
          if (K.boundary_occurrences(root) > 0 && colour[root] != 0 && !r.parity_witness) r.parity_witness = root;
          continue;
        }
        colour[root] = 0;
        std::vector<std::size_t> queue{root};
        for (std::size_t i = 0; i < queue.size(); ++i) {
          for (auto w : adj[queue[i]]) {
            if (colour[w] == -1) {
              colour[w] = 1 - colour[queue[i]];
              queue.push_back(w);
            } else if (colour[w] == colour[queue[i]] && !r.parity_witness) {
              r.parity_witness = w;
            }
          }
        }
      }
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (K.degree(v) == 2 && K.extended_degree(v) == 2) {
      r.no_contractible = false;
      r.contractible_vertex = v;
      break;
    }
  }

  const auto& edges = K.edges();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) {
      r.no_multi_edges = false;
      r.multi_edge = edges[i];
      break;
    }
  }

  const auto comp = K.components();
  std::vector<bool> touched(K.component_count(), false);
  for (auto x : K.inputs()) touched[comp[x]] = true;
  for (auto x : K.outputs()) touched[comp[x]] = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (!touched[comp[v]]) {
      r.boundary_touching = false;
      r.boundary_free_vertex = v;
      break;
    }
  }
  return r;
}

// ------------------------------------------------------------ contractions

ContractResult two_path_contract(const BilabelledGraph& K, std::size_t v) {
  if (v >= K.vertex_count()) throw PreconditionError("two_path_contract: vertex out of range");
  if (!K.is_inner(v)) throw PreconditionError("two_path_contract: vertex " + std::to_string(v) + " is on the boundary");
  if (K.degree(v) != 2) {
    throw PreconditionError("two_path_contract: vertex " + std::to_string(v) + " has degree " +
                            std::to_string(K.degree(v)));
  }
  if (K.multiplicity(v, v) != 0) throw PreconditionError("two_path_contract: vertex carries a loop");
  const auto nb = K.neighbours(v);
  const std::size_t x = std::min(nb[0], nb[1]);
  const std::size_t y = std::max(nb[0], nb[1]);

  ContractResult out;
  out.loop_created = x != y && K.multiplicity(x, y) > 0;
  std::vector<Edge> kept;
  for (auto e : K.edges())
    if (e.first != v && e.second != v) kept.push_back(e);
  BilabelledGraph without_edges(K.vertex_count(), kept, K.inputs(), K.outputs());
  std::vector<std::size_t> map(K.vertex_count(), kGone);
  std::size_t next = 0;
  for (std::size_t w = 0; w < K.vertex_count(); ++w) {
    if (w == v || (w == y && x != y)) continue;
    map[w] = next++;
  }
  if (x != y) map[y] = map[x];
  out.graph = relabel(without_edges, map, next);
  return out;
}

std::vector<Reduction> applicable_reductions(const BilabelledGraph& K) {
  std::vector<Reduction> out;
  const std::size_t n = K.vertex_count();
  for (std::size_t v = 0; v < n; ++v)
    if (K.extended_degree(v) == 0) out.push_back({RuleKind::IsolatedVertex, v, v});
  const auto& edges = K.edges();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1] && edges[i].first != edges[i].second &&
        (i == 0 || edges[i - 1] != edges[i])) {
      out.push_back({RuleKind::DoubleEdge, edges[i].first, edges[i].second});
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (K.is_inner(v) && K.degree(v) == 2 && K.multiplicity(v, v) == 0) out.push_back({RuleKind::TwoPath, v, v});
  return out;
}

Normalized apply_reduction(const BilabelledGraph& K, const Reduction& r, const Scalar& N) {
  if (N == 0) throw PreconditionError("normalize is undefined for N = 0");
  Normalized out;
  out.steps = 1;
  switch (r.kind) {
    case RuleKind::IsolatedVertex:
      if (K.extended_degree(r.u) != 0) throw PreconditionError("vertex is not isolated");
      out.graph = remove_vertices(K, {r.u});
      out.factor = N;
      break;
    case RuleKind::DoubleEdge: {
      if (r.u == r.v || K.multiplicity(r.u, r.v) < 2) throw PreconditionError("no double edge there");
      std::vector<Edge> edges;
      std::size_t skipped = 0;
      for (auto e : K.edges()) {
        if (e == Edge{r.u, r.v} && skipped < 2) {
          ++skipped;
          continue;
        }
        edges.push_back(e);
      }
      out.graph = BilabelledGraph(K.vertex_count(), std::move(edges), K.inputs(), K.outputs());
      out.factor = Scalar(1) / N;
      break;
    }
    case RuleKind::TwoPath: {
      auto c = two_path_contract(K, r.u);
      out.graph = std::move(c.graph);
      out.loop_created = c.loop_created;
      out.factor = 1;
      break;
    }
  }
  return out;
}

Normalized normalize(const BilabelledGraph& K, const Scalar& N) {
  if (N == 0) throw PreconditionError("normalize is undefined for N = 0");
  Normalized acc;
  acc.graph = K;
  while (true) {
    const auto rs = applicable_reductions(acc.graph);
    if (rs.empty()) return acc;
    auto step = apply_reduction(acc.graph, rs.front(), N);
    acc.factor *= step.factor;
    acc.graph = std::move(step.graph);
    acc.loop_created = acc.loop_created || step.loop_created;
    ++acc.steps;
  }
}

// --------------------------------------------------------- canonical forms

namespace {

struct Adjacency {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> nbr;  // (w, multiplicity), w != v
  std::vector<std::size_t> loops;
};

Adjacency adjacency(const BilabelledGraph& K) {
  Adjacency adj;
  adj.nbr.resize(K.vertex_count());
  adj.loops.assign(K.vertex_count(), 0);
  std::map<Edge, std::size_t> mult;
  for (auto e : K.edges()) ++mult[e];
  for (auto [e, m] : mult) {
    if (e.first == e.second) {
      adj.loops[e.first] = m;
      continue;
    }
    adj.nbr[e.first].emplace_back(e.second, m);
    adj.nbr[e.second].emplace_back(e.first, m);
  }
  return adj;
}

std::size_t count_classes(const std::vector<std::size_t>& colour) {
  return std::set<std::size_t>(colour.begin(), colour.end()).size();
}

// Equitable refinement; colours are ranks of sorted signatures, so the result is label-independent.
std::vector<std::size_t> refine(const Adjacency& adj, std::vector<std::size_t> colour) {
  const std::size_t n = colour.size();
  std::size_t classes = count_classes(colour);
  using Key = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
  while (true) {
    std::vector<Key> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::pair<std::size_t, std::size_t>> sig;
      for (auto [w, m] : adj.nbr[v]) sig.emplace_back(colour[w], m);
      std::sort(sig.begin(), sig.end());
      keys[v] = {colour[v], std::move(sig)};
    }
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (std::size_t v = 0; v < n; ++v)
      next[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    const std::size_t c = sorted.size();
    colour = std::move(next);
    if (c == classes) return colour;
    classes = c;
  }
}

std::vector<std::size_t> encode(const BilabelledGraph& K, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> code{K.vertex_count(), K.k(), K.l(), K.edge_count()};
  std::vector<Edge> edges;
  for (auto [u, v] : K.edges()) edges.push_back(canonical_edge(order[u], order[v]));
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) {
    code.push_back(u);
    code.push_back(v);
  }
  for (auto x : K.inputs()) code.push_back(order[x]);
  for (auto x : K.outputs()) code.push_back(order[x]);
  return code;
}

bool are_twins(const Adjacency& adj, std::size_t u, std::size_t w) {
  if (adj.loops[u] != adj.loops[w]) return false;
  auto strip = [](std::vector<std::pair<std::size_t, std::size_t>> list, std::size_t drop) {
    std::erase_if(list, [drop](const auto& p) { return p.first == drop; });
    std::sort(list.begin(), list.end());
    return list;
  };
  return strip(adj.nbr[u], w) == strip(adj.nbr[w], u);
}

struct Search {
  const BilabelledGraph& K;
  Adjacency adj;
  std::vector<std::size_t> best_code;
  std::vector<std::size_t> best_order;

  void run(std::vector<std::size_t> colour) {
    colour = refine(adj, std::move(colour));
    const std::size_t n = colour.size();
    std::vector<std::size_t> size(n, 0);
    for (auto c : colour) ++size[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c)
      if (size[c] > 1) {
        target = c;
        break;
      }
    if (target == n) {
      auto code = encode(K, colour);
      if (best_code.empty() || code < best_code) {
        best_code = std::move(code);
        best_order = colour;
      }
      return;
    }
    std::vector<std::size_t> cell;
    for (std::size_t v = 0; v < n; ++v)
      if (colour[v] == target) cell.push_back(v);
    bool all_twins = true;
    for (std::size_t i = 1; i < cell.size() && all_twins; ++i) all_twins = are_twins(adj, cell[0], cell[i]);
    if (all_twins) cell.resize(1);
    for (auto v : cell) {
      std::vector<std::size_t> c2(n);
      for (std::size_t w = 0; w < n; ++w) c2[w] = 2 * colour[w] + ((colour[w] == target && w != v) ? 1 : 0);
      run(std::move(c2));
    }
  }
};

Search canonical_search(const BilabelledGraph& K) {
  Search s{K, adjacency(K), {}, {}};
  const std::size_t n = K.vertex_count();
  // Initial colour: boundary positions, loops, degree.
  using Key = std::tuple<std::vector<std::size_t>, std::size_t, std::size_t>;
  std::vector<Key> keys(n);
  for (std::size_t v = 0; v < n; ++v) std::get<2>(keys[v]) = K.degree(v);
  for (std::size_t i = 0; i < K.k(); ++i) std::get<0>(keys[K.inputs()[i]]).push_back(i);
  for (std::size_t j = 0; j < K.l(); ++j) std::get<0>(keys[K.outputs()[j]]).push_back(K.k() + j);
  for (std::size_t v = 0; v < n; ++v) {
    std::get<1>(keys[v]) = s.adj.loops[v];
    // Boundary vertices first so they get small canonical labels.
    if (std::get<0>(keys[v]).empty()) std::get<0>(keys[v]).push_back(std::numeric_limits<std::size_t>::max());
  }
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> colour(n);
  for (std::size_t v = 0; v < n; ++v)
    colour[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  s.run(std::move(colour));
  return s;
}

}  // namespace

std::string canonical_form(const BilabelledGraph& K) {
  const auto s = canonical_search(K);
  std::string out;
  std::vector<std::size_t> code = s.best_code.empty() ? encode(K, {}) : s.best_code;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(code[i]);
  }
  return out;
}

BilabelledGraph canonical_graph(const BilabelledGraph& K) {
  if (K.vertex_count() == 0) return K;
  const auto s = canonical_search(K);
  return relabel(K, s.best_order, K.vertex_count());
}

bool are_isomorphic(const BilabelledGraph& K, const BilabelledGraph& H) {
  return canonical_form(K) == canonical_form(H);
}

bool three_connectivity_check(const BilabelledGraph& K) {
  if (!K.is_connected()) throw PreconditionError("three_connectivity_check needs a connected graph");
  const auto d = derived_graphs(K);
  if (d.core.vertex_count() < 2) throw PreconditionError("three_connectivity_check needs |V(K^•)| >= 2");
  const auto G = apex_graph(d.core);
  const std::size_t n = G.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : G.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  auto connected_without = [&](std::size_t x, std::size_t y) {
    std::vector<bool> seen(n, false);
    seen[x] = seen[y] = true;
    std::size_t start = 0;
    while (start < n && seen[start]) ++start;
    if (start == n) return true;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    const std::size_t expected = n - (x == y ? 1 : 2);
    return reached == expected;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y)
      if (!connected_without(x, y)) return false;
  return true;
}

std::string to_string(const BilabelledGraph& K) {
  std::ostringstream os;
  os << "G(" << K.k() << "," << K.l() << "; n=" << K.vertex_count() << "; E=";
  for (std::size_t i = 0; i < K.edge_count(); ++i)
    os << (i ? " " : "") << K.edges()[i].first << "-" << K.edges()[i].second;
  os << "; a=";
  for (std::size_t i = 0; i < K.k(); ++i) os << (i ? "," : "") << K.inputs()[i];
  os << "; b=";
  for (std::size_t i = 0; i < K.l(); ++i) os << (i ? "," : "") << K.outputs()[i];
  os << ")";
  return os.str();
}

}  // namespace d4
