#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace d4 {

/// Exact rational scalar. GMP keeps it in lowest terms with a positive
/// denominator as long as values are built through the helpers below.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Scalar& s);

/// Parses "p", "-p" or "p/q" and canonicalizes. Throws SchemaError.
Scalar parse_scalar(std::string_view text);

/// s^e for any integer e; throws PreconditionError on 0^(negative).
Scalar power(const Scalar& s, long e);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> entries() const { return data_; }
  std::span<Scalar> entries() { return data_; }

  Matrix transpose() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;
  std::size_t nonzero_count() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, const Scalar& s);
Matrix operator*(const Scalar& s, Matrix a);
/// Matrix product; skips zero entries of the left factor.
Matrix operator*(const Matrix& a, const Matrix& b);
/// Kronecker product with big-endian block layout.
Matrix kron(const Matrix& a, const Matrix& b);

/// Incrementally maintained row echelon basis of a rational span.
/// Pivot rows are stored sparsely and normalized to a leading 1.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t length) : length_(length) {}

  /// Reduces v against the basis; adds it when independent. Returns whether it was added.
  bool insert(std::span<const Scalar> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t length() const { return length_; }

 private:
  struct SparseRow {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Scalar>> entries;  // sorted by column, pivot entry first
  };
  std::size_t length_;
  std::vector<SparseRow> rows_;
  std::vector<std::ptrdiff_t> pivot_owner_;  // column -> index into rows_, or -1
};

/// Dimension of the rational span of equal-length vectors.
std::size_t rank(std::span<const Vector> vectors);
std::size_t rank(const Matrix& m);

/// Pairwise standard inner products.
Matrix gram(std::span<const Vector> vectors);

/// Exact determinant by fraction-free (Bareiss) elimination on the integer-scaled matrix.
Scalar determinant(const Matrix& m);

/// Basis of {x : m x = 0}, read off the reduced row echelon form.
std::vector<Vector> nullspace(const Matrix& m);

}  // namespace d4
