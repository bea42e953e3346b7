#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "d4plus/exactnum.hpp"
#include "d4plus/partition.hpp"

namespace d4 {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected multigraph (loops allowed) with an ordered input tuple a and
/// output tuple b. Edges are kept as sorted (min,max) pairs; a repeated pair
/// is a multi-edge.
class BilabelledGraph {
 public:
  BilabelledGraph() = default;
  BilabelledGraph(std::size_t vertices, std::vector<Edge> edges, std::vector<std::size_t> inputs,
                  std::vector<std::size_t> outputs);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& inputs() const { return a_; }
  const std::vector<std::size_t>& outputs() const { return b_; }
  std::size_t k() const { return a_.size(); }
  std::size_t l() const { return b_.size(); }

  /// Degree in K; a loop counts twice.
  std::size_t degree(std::size_t v) const;
  /// Degree in K° = degree plus occurrences in a and b.
  std::size_t extended_degree(std::size_t v) const;
  std::size_t boundary_occurrences(std::size_t v) const;
  bool is_inner(std::size_t v) const { return boundary_occurrences(v) == 0; }
  std::size_t multiplicity(std::size_t u, std::size_t v) const;
  bool has_loop() const;
  /// Neighbours with repetition for multi-edges; a loop lists v once.
  std::vector<std::size_t> neighbours(std::size_t v) const;
  /// Component id per vertex, numbered by smallest vertex.
  std::vector<std::size_t> components() const;
  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }

  friend bool operator==(const BilabelledGraph&, const BilabelledGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> a_;
  std::vector<std::size_t> b_;
};

// ------------------------------------------------------- named graphs

namespace graphs {
/// The graph with no vertices, 𝟎 ∈ (0,0).
BilabelledGraph null_graph();
/// One vertex carrying all k inputs and l outputs.
BilabelledGraph M(std::size_t k, std::size_t l);
/// Star: centre 0, leaves 1..k inputs and k+1..k+l outputs.
BilabelledGraph X(std::size_t k, std::size_t l);
/// The (1,1) single-edge graph 𝐀.
BilabelledGraph edge();
/// The (1,1) graph with two parallel edges, 𝐀𝐀.
BilabelledGraph double_edge();
}  // namespace graphs

/// One vertex per block, no edges.
BilabelledGraph from_partition(const Partition& p);
/// ker(a,b): partition of boundary points by vertex equality.
Partition kernel_partition(const BilabelledGraph& K);

// ------------------------------------------------- category operations

BilabelledGraph tensor(const BilabelledGraph& K, const BilabelledGraph& H);
/// H∘K: K's outputs are glued to H's inputs. Throws ArityError.
BilabelledGraph compose(const BilabelledGraph& H, const BilabelledGraph& K);
BilabelledGraph involution(const BilabelledGraph& K);
/// Last output becomes the last input.
BilabelledGraph rotate_right(const BilabelledGraph& K);
/// First input becomes the first output.
BilabelledGraph rotate_left(const BilabelledGraph& K);
BilabelledGraph unrotate_right(const BilabelledGraph& K);
BilabelledGraph unrotate_left(const BilabelledGraph& K);

/// (0,k+l) form with outputs a_k..a_1 b_1..b_l.
BilabelledGraph to_zero_form(const BilabelledGraph& K);
/// Inverse of to_zero_form for a (0,n) graph: move the first k outputs back to inputs.
BilabelledGraph from_zero_form(const BilabelledGraph& W, std::size_t k);
/// (0,n) graph with outputs shifted right by one place cyclically.
BilabelledGraph cyclic_shift(const BilabelledGraph& W);
/// Every graph reachable by rotations: all cyclic shifts in all (k,l) splits.
std::vector<BilabelledGraph> rotation_orbit(const BilabelledGraph& K);

/// Removes the listed vertices (and their edges). Boundary entries must not point at them.
BilabelledGraph remove_vertices(const BilabelledGraph& K, const std::vector<std::size_t>& doomed);

// ------------------------------------------------------ derived graphs

struct DerivedGraphs {
  /// K°: K plus the enveloping cycle on n..n+k+l-1 in the order α_k..α_1 β_1..β_l.
  BilabelledGraph envelope;
  /// K^⊙: envelope plus an apex (the last vertex) adjacent to the whole cycle.
  BilabelledGraph apex;
  /// K^• with boundary (a•, b•), vertices renumbered.
  BilabelledGraph core;
  /// core vertex -> vertex of K.
  std::vector<std::size_t> core_to_original;
};

DerivedGraphs derived_graphs(const BilabelledGraph& K);
/// Adds the enveloping cycle and apex of a bilabelled graph; used for K^⊙ and K^{•⊙}.
BilabelledGraph apex_graph(const BilabelledGraph& K);

/// Planarity of K^⊙ after dropping loops and merging parallel edges.
bool is_planar_bilabelled(const BilabelledGraph& K);
/// Planarity of a plain graph (tuples ignored).
bool is_planar_graph(std::size_t vertices, const std::vector<Edge>& edges);

/// 0 = even, 1 = odd per vertex, with boundary vertices even; nullopt if (iii) fails.
std::optional<std::vector<int>> vertex_parity(const BilabelledGraph& K);

// ------------------------------------------------------------ conditions

struct ConditionReport {
  bool planar = true;             // (i)
  bool even_degrees = true;       // (ii)
  bool bipartite = true;          // (iii)
  bool no_contractible = true;    // (iv)
  bool no_multi_edges = true;     // (v)
  bool boundary_touching = true;  // (vi)

  std::vector<Edge> kuratowski_edges;  // witness for (i), edges of K^⊙
  std::optional<std::size_t> odd_degree_vertex;
  std::optional<std::size_t> parity_witness;  // vertex on an odd cycle, a loop, or an odd boundary vertex
  std::optional<std::size_t> contractible_vertex;
  std::optional<Edge> multi_edge;
  std::optional<std::size_t> boundary_free_vertex;

  bool in_scriptC() const { return planar && even_degrees && bipartite; }
  bool all() const { return in_scriptC() && no_contractible && no_multi_edges && boundary_touching; }
  std::string describe() const;
};

ConditionReport check_conditions(const BilabelledGraph& K);

// -------------------------------------------------------- contractions

struct ContractResult {
  BilabelledGraph graph;
  bool loop_created = false;
};

/// Deletes the inner degree-2 vertex v and its two edges, then identifies its
/// two neighbours. An existing edge between them becomes a loop (flagged).
/// Throws PreconditionError unless v is inner with degree 2 and no loop.
ContractResult two_path_contract(const BilabelledGraph& K, std::size_t v);

enum class RuleKind { IsolatedVertex, DoubleEdge, TwoPath };

struct Reduction {
  RuleKind kind;
  std::size_t u = 0;  // the vertex (isolated / two-path) or the smaller endpoint
  std::size_t v = 0;  // other endpoint for DoubleEdge
  friend bool operator==(const Reduction&, const Reduction&) = default;
};

/// Every rule application available on K, in priority order (vi), (v), (iv).
std::vector<Reduction> applicable_reductions(const BilabelledGraph& K);

struct Normalized {
  Scalar factor = 1;
  BilabelledGraph graph;
  bool loop_created = false;
  std::size_t steps = 0;
};

/// Applies one reduction: factor N for (vi), 1/N for (v), 1 for (iv).
Normalized apply_reduction(const BilabelledGraph& K, const Reduction& r, const Scalar& N);
/// Rewrites to a fixpoint, always taking the first applicable reduction.
Normalized normalize(const BilabelledGraph& K, const Scalar& N);

// ------------------------------------------------------ canonical forms

/// Encoding that is equal for two graphs iff they are isomorphic by a vertex
/// bijection that maps both tuples pointwise.
std::string canonical_form(const BilabelledGraph& K);
/// The graph relabelled into canonical vertex order.
BilabelledGraph canonical_graph(const BilabelledGraph& K);
bool are_isomorphic(const BilabelledGraph& K, const BilabelledGraph& H);

/// K^{•⊙} stays connected after deleting any one or two vertices.
/// Needs K connected with |V(K^•)| >= 2 (PreconditionError otherwise).
bool three_connectivity_check(const BilabelledGraph& K);

std::string to_string(const BilabelledGraph& K);

}  // namespace d4
