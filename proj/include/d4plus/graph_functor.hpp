#pragma once

#include <cstddef>
#include <vector>

#include "d4plus/bigraph.hpp"
#include "d4plus/exactnum.hpp"
#include "d4plus/partition.hpp"
#include "d4plus/tensor.hpp"

namespace d4 {

/// T^A_K by variable elimination over the inner vertices (fast path).
/// A must be a symmetric N x N matrix; N is taken from A.
Tensor evaluate_TA(const BilabelledGraph& K, const Matrix& A);
/// T^A_K summing over every colouring; reference implementation.
Tensor evaluate_TA_bruteforce(const BilabelledGraph& K, const Matrix& A);

/// Greedy min-degree elimination order of the inner vertices (fill-in aware,
/// ties broken by vertex id).
std::vector<std::size_t> contraction_order(const BilabelledGraph& K);

/// T(τ_(N)) as an N x N matrix: δ_ij - 2/N.
Matrix tau_matrix(std::size_t N);

/// Largest edge count accepted by evaluate_Fpi.
inline constexpr std::size_t kFpiEdgeCap = 22;

/// F_π K with π = α·identity + β·disconnecter:
/// Σ_{S⊆E} α^{|E∖S|} β^{|S|} N^{rl(K∖S)} p_{K∖S}.
PartitionVector evaluate_Fpi(const BilabelledGraph& K, const Scalar& alpha, const Scalar& beta, const Scalar& N);
/// Same with π given as a (1,1) vector; anything outside span{identity, disconnecter} is rejected.
PartitionVector evaluate_Fpi(const BilabelledGraph& K, const PartitionVector& pi, const Scalar& N);

/// T^{T(τ)}_K == T_{F_τ K} at integer N.
bool consistency_check(const BilabelledGraph& K, std::size_t N);

}  // namespace d4
