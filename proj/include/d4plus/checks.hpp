#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "d4plus/bigraph.hpp"
#include "d4plus/enumerator.hpp"
#include "d4plus/partition.hpp"
#include "d4plus/tensor.hpp"

namespace d4 {

struct CheckResult {
  std::string id;     // "A1".."A12" or a short slug
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// ------------------------------------------------------------ identities

/// Right-hand side of the hat(singleton^4) expansion at N = 4.
PartitionVector abcd_expansion();
/// Cap partition in P(8,2) used by the N != 2,4 lemma: u1-l1, u8-l2, {u2,u7}, {u3,u6}, {u4,u5}.
Partition cap_partition();
/// cap ∘ (T_N(fourblock) ⊗ fourblock) at loop parameter N.
PartitionVector cap_composition(const Scalar& N);
/// (1 - 6/N + 12/N²) pair - (2/N)(1 - 2/N)(1 - 4/N) singleton⊗singleton.
PartitionVector cap_composition_expected(const Scalar& N);
/// (1⊗1⊗P*)(P⊗1⊗1) as a (2,2) tensor, summed directly over permutation tuples.
Tensor permanent_sandwich(std::size_t N);
/// Same product built from dense tensors; subject to the tensor cap.
Tensor permanent_sandwich_dense(std::size_t N);
/// (N-2)! (T_{id⊗id} + T_crossing - 2 T_connecter).
Tensor permanent_sandwich_expected(std::size_t N);

// ------------------------------------------------------------- test pool

/// Pool graphs plus compositions H∘K of pool members with k+m <= max_boundary,
/// which brings in two-paths, multi-edges and closed components, and a few
/// tensor products with closed graphs. Deduplicated by canonical form.
std::vector<BilabelledGraph> reducible_test_pool(const GraphPool& pool, std::size_t max_boundary = 4);

// ------------------------------------------------------------------ dims

struct DimsRow {
  std::size_t k = 0;
  std::size_t count = 0;  // #C(0,k)
  std::size_t rank = 0;   // rank of {T^A_K : K in C(0,k)}, A = T(τ_N)
  std::optional<std::size_t> classical;  // classical D4 fixed-space dimension (N = 4 only)
};

/// Rows for even k in [2, max_points]; the pool must cover max_points.
std::vector<DimsRow> dims_report(const GraphPool& pool, std::size_t N, std::size_t max_points);
std::string dims_csv(const std::vector<DimsRow>& rows);

// --------------------------------------------------------------- runners

/// A1..A12 in order.
std::vector<CheckResult> run_acceptance();
CheckResult run_acceptance_check(int index);

/// "identities", "functor", "enumeration", "words" or "all". Throws PreconditionError otherwise.
std::vector<CheckResult> run_suite(const std::string& suite);
std::vector<std::string> suite_names();

/// "PASS A1 (0.012s) title: detail"
std::string format_result(const CheckResult& r);

}  // namespace d4
