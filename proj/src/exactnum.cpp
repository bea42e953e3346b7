#include "d4plus/exactnum.hpp"

#include <algorithm>
#include <utility>

#include "d4plus/errors.hpp"

namespace d4 {

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar parse_scalar(std::string_view text) {
  const std::string str(text);
  if (str.empty()) throw SchemaError("empty scalar literal");
  const auto slash = str.find('/');
  const auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::string num = str.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw SchemaError("malformed scalar literal '" + str + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw SchemaError("zero denominator in '" + str + "'");
  Scalar s(n, d);
  s.canonicalize();
  return s;
}

Scalar power(const Scalar& s, long e) {
  if (e < 0) {
    if (s == 0) throw PreconditionError("zero raised to a negative power");
    return power(Scalar(1) / s, -e);
  }
  Scalar result = 1;
  Scalar base = s;
  auto n = static_cast<unsigned long>(e);
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
}

std::size_t Matrix::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Scalar& s) { return s != 0; }));
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  Scalar tmp;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b(k, j);
        if (bkj == 0) continue;
        tmp = aik * bkj;
        out(i, j) += tmp;
      }
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
          if (b(r, c) == 0) continue;
          out(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
        }
    }
  return out;
}

// ---------------------------------------------------------- elimination

bool EchelonBasis::insert(std::span<const Scalar> v) {
  if (v.size() != length_) throw DimensionError("vector length does not match basis length");
  if (pivot_owner_.empty()) pivot_owner_.assign(length_, -1);

  Vector work(v.begin(), v.end());
  Scalar tmp;
  for (std::size_t col = 0; col < length_; ++col) {
    if (work[col] == 0) continue;
    const auto owner = pivot_owner_[col];
    if (owner < 0) {
      const Scalar lead = work[col];
      SparseRow row{col, {}};
      for (std::size_t c = col; c < length_; ++c) {
        if (work[c] != 0) row.entries.emplace_back(c, work[c] / lead);
      }
      pivot_owner_[col] = static_cast<std::ptrdiff_t>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const Scalar factor = work[col];
    for (const auto& [c, x] : rows_[static_cast<std::size_t>(owner)].entries) {
      tmp = factor * x;
      work[c] -= tmp;
    }
  }
  return false;
}

std::size_t rank(std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis basis(vectors.front().size());
  for (const auto& v : vectors) {
    if (v.size() != basis.length()) throw DimensionError("rank: vectors differ in length");
    basis.insert(v);
  }
  return basis.rank();
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0) return 0;
  EchelonBasis basis(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.entries().subspan(r * m.cols(), m.cols()));
  return basis.rank();
}

Matrix gram(std::span<const Vector> vectors) {
  const std::size_t n = vectors.size();
  Matrix g(n, n);
  if (n == 0) return g;
  const std::size_t len = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != len) throw DimensionError("gram: vectors differ in length");
  Scalar tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Scalar acc = 0;
      for (std::size_t t = 0; t < len; ++t) {
        if (vectors[i][t] == 0 || vectors[j][t] == 0) continue;
        tmp = vectors[i][t] * vectors[j][t];
        acc += tmp;
      }
      g(i, j) = acc;
      g(j, i) = acc;
    }
  return g;
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  // Clear denominators row by row; det(m) = det(scaled) / prod(scales).
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale_product = 1;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    scale_product *= l;
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Scalar det(a[n - 1][n - 1] * sign, scale_product);
  det.canonicalize();
  return det;
}

std::vector<Vector> nullspace(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Vector> r(rows, Vector(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r[i][j] = m(i, j);

  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  Scalar tmp;
  for (std::size_t col = 0; col < cols && lead_row < rows; ++col) {
    std::size_t p = lead_row;
    while (p < rows && r[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(r[p], r[lead_row]);
    const Scalar lead = r[lead_row][col];
    for (auto& x : r[lead_row]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead_row || r[i][col] == 0) continue;
      const Scalar f = r[i][col];
      for (std::size_t j = col; j < cols; ++j) {
        if (r[lead_row][j] == 0) continue;
        tmp = f * r[lead_row][j];
        r[i][j] -= tmp;
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace d4
