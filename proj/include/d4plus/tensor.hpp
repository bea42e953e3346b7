#pragma once

#include <cstddef>
#include <vector>

#include "d4plus/exactnum.hpp"
#include "d4plus/partition.hpp"

namespace d4 {

/// Linear map (C^N)^{⊗k} -> (C^N)^{⊗l} as an N^l x N^k matrix.
/// Rows index outputs (j_1..j_l), columns inputs (i_1..i_k), both big-endian
/// with 0-based index values.
struct Tensor {
  std::size_t N = 1;
  std::size_t k = 0;
  std::size_t l = 0;
  Matrix entries;

  Tensor() : entries(1, 1) {}
  Tensor(std::size_t n, std::size_t upper, std::size_t lower);

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Largest N^(k+l) accepted by dense evaluation. Default 4^10; the
/// D4_TENSOR_CAP environment variable overrides it.
std::size_t tensor_cap();
/// N^points, or throws CapacityError when above tensor_cap().
std::size_t checked_volume(std::size_t N, std::size_t points);

Tensor evaluate(const Partition& p, std::size_t N);
Tensor evaluate(const PartitionVector& x, std::size_t N);
/// δ̂_p: indices equal exactly when the points share a block.
Tensor evaluate_hat(const Partition& p, std::size_t N);

Tensor tensor(const Tensor& a, const Tensor& b);
/// g∘f (f first).
Tensor compose(const Tensor& g, const Tensor& f);
Tensor involution(const Tensor& t);
Tensor operator*(const Scalar& s, Tensor t);
Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);

/// (0,N) tensor with 1 on the tuples that are permutations of 0..N-1.
Tensor permanent_vector(std::size_t N);
Scalar permanent(const Matrix& X);

/// All 192 signed 4x4 permutation matrices with permanent 1.
std::vector<Matrix> classical_D4_elements();
/// Three adjacent transpositions and one signed swap; they generate classical_D4_elements().
std::vector<Matrix> classical_D4_generators();

/// X^{⊗k} v for v of length N^k, applied one tensor factor at a time.
Vector apply_tensor_power(const Matrix& X, std::size_t k, const Vector& v);
/// X^{⊗l} T = T X^{⊗k}.
bool is_intertwiner(const Matrix& X, const Tensor& t);

/// Flattened (0,k) tensor: the single column as a vector.
Vector as_vector(const Tensor& t);

/// dim of {v in (C^4)^{⊗k} : X^{⊗k} v = v for all X in classical D4}.
/// Counts signed orbits of index tuples that carry no sign conflict.
std::size_t d4_fixed_dimension(std::size_t k);
/// Same number from the character average (1/192) Σ tr(X)^k.
Scalar d4_fixed_dimension_by_characters(std::size_t k);

}  // namespace d4
