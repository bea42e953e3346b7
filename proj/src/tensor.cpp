#include "d4plus/tensor.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "d4plus/errors.hpp"

namespace d4 {

namespace {

constexpr std::size_t kDefaultCap = 1u << 20;  // 4^10

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// Calls fn(labels) for every map blocks -> [N], injective ones only if asked.
template <class Fn>
void for_each_labelling(std::size_t blocks, std::size_t N, bool injective, Fn&& fn) {
  std::vector<std::size_t> c(blocks, 0);
  if (injective && blocks > N) return;
  std::vector<int> used(N, 0);
  // Plain odometer; injectivity filtered on the fly.
  while (true) {
    bool ok = true;
    if (injective) {
      std::fill(used.begin(), used.end(), 0);
      for (auto x : c) {
        if (used[x]++) {
          ok = false;
          break;
        }
      }
    }
    if (ok) fn(c);
    std::size_t i = blocks;
    while (i > 0) {
      --i;
      if (++c[i] < N) break;
      c[i] = 0;
      if (i == 0) return;
    }
    if (blocks == 0) return;
  }
}

void accumulate(Tensor& t, const Partition& p, const Scalar& coeff, bool injective) {
  const std::size_t N = t.N;
  for_each_labelling(p.block_count(), N, injective, [&](const std::vector<std::size_t>& c) {
    std::size_t col = 0;
    for (std::size_t i = 0; i < p.upper(); ++i) col = col * N + c[static_cast<std::size_t>(p.block_of(i))];
    std::size_t row = 0;
    for (std::size_t j = 0; j < p.lower(); ++j) row = row * N + c[static_cast<std::size_t>(p.block_of(p.upper() + j))];
    t.entries(row, col) += coeff;
  });
}

void require_positive(std::size_t N) {
  if (N == 0) throw PreconditionError("tensor evaluation needs N >= 1");
}

}  // namespace

Tensor::Tensor(std::size_t n, std::size_t upper, std::size_t lower)
    : N(n), k(upper), l(lower), entries(ipow(n, lower), ipow(n, upper)) {}

std::size_t tensor_cap() {
  if (const char* env = std::getenv("D4_TENSOR_CAP")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw PreconditionError(std::string("D4_TENSOR_CAP is not a positive integer: '") + env + "'");
  }
  return kDefaultCap;
}

std::size_t checked_volume(std::size_t N, std::size_t points) {
  const std::size_t cap = tensor_cap();
  std::size_t v = 1;
  for (std::size_t i = 0; i < points; ++i) {
    if (N != 0 && v > cap / N) {
      throw CapacityError(std::to_string(N) + "^" + std::to_string(points) + " exceeds the tensor cap " +
                          std::to_string(cap) + " (set D4_TENSOR_CAP to raise it)");
    }
    v *= N;
  }
  if (v > cap) throw CapacityError("tensor volume exceeds the cap " + std::to_string(cap));
  return v;
}

Tensor evaluate(const Partition& p, std::size_t N) { return evaluate(PartitionVector(p), N); }

Tensor evaluate(const PartitionVector& x, std::size_t N) {
  require_positive(N);
  checked_volume(N, x.upper() + x.lower());
  Tensor t(N, x.upper(), x.lower());
  for (const auto& [p, c] : x.terms()) accumulate(t, p, c, false);
  return t;
}

Tensor evaluate_hat(const Partition& p, std::size_t N) {
  require_positive(N);
  checked_volume(N, p.size());
  Tensor t(N, p.upper(), p.lower());
  accumulate(t, p, Scalar(1), true);
  return t;
}

Tensor tensor(const Tensor& a, const Tensor& b) {
  if (a.N != b.N) throw DimensionError("tensor product of tensors over different N");
  checked_volume(a.N, a.k + a.l + b.k + b.l);
  Tensor t;
  t.N = a.N;
  t.k = a.k + b.k;
  t.l = a.l + b.l;
  t.entries = kron(a.entries, b.entries);
  return t;
}

Tensor compose(const Tensor& g, const Tensor& f) {
  if (g.N != f.N) throw DimensionError("composition of tensors over different N");
  if (f.l != g.k) throw ArityError("tensor composition: " + std::to_string(f.l) + " outputs feed " +
                                   std::to_string(g.k) + " inputs");
  Tensor t;
  t.N = f.N;
  t.k = f.k;
  t.l = g.l;
  t.entries = g.entries * f.entries;
  return t;
}

Tensor involution(const Tensor& t) {
  Tensor r;
  r.N = t.N;
  r.k = t.l;
  r.l = t.k;
  r.entries = t.entries.transpose();
  return r;
}

Tensor operator*(const Scalar& s, Tensor t) {
  t.entries *= s;
  return t;
}

Tensor operator+(Tensor a, const Tensor& b) {
  if (a.N != b.N || a.k != b.k || a.l != b.l) throw DimensionError("tensor sum shape mismatch");
  a.entries += b.entries;
  return a;
}

Tensor operator-(Tensor a, const Tensor& b) {
  if (a.N != b.N || a.k != b.k || a.l != b.l) throw DimensionError("tensor difference shape mismatch");
  a.entries -= b.entries;
  return a;
}

Tensor permanent_vector(std::size_t N) {
  require_positive(N);
  return evaluate_hat(parts::singletons(N), N);
}

Scalar permanent(const Matrix& X) {
  if (!X.is_square()) throw DimensionError("permanent of a non-square matrix");
  const std::size_t n = X.rows();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar total = 0;
  do {
    Scalar term = 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= X(i, sigma[i]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

std::vector<Matrix> classical_D4_elements() {
  std::vector<Matrix> out;
  std::vector<std::size_t> sigma{0, 1, 2, 3};
  do {
    for (unsigned signs = 0; signs < 16; ++signs) {
      Matrix X(4, 4);
      for (std::size_t i = 0; i < 4; ++i) X(sigma[i], i) = (signs >> i) & 1U ? -1 : 1;
      if (permanent(X) == 1) out.push_back(std::move(X));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<Matrix> classical_D4_generators() {
  std::vector<Matrix> gens;
  for (std::size_t s = 0; s < 3; ++s) {
    Matrix X = Matrix::identity(4);
    X(s, s) = 0;
    X(s + 1, s + 1) = 0;
    X(s, s + 1) = 1;
    X(s + 1, s) = 1;
    gens.push_back(std::move(X));
  }
  Matrix Y = Matrix::identity(4);
  Y(0, 0) = 0;
  Y(1, 1) = 0;
  Y(0, 1) = -1;
  Y(1, 0) = -1;
  gens.push_back(std::move(Y));
  return gens;
}

Vector apply_tensor_power(const Matrix& X, std::size_t k, const Vector& v) {
  if (!X.is_square()) throw DimensionError("apply_tensor_power needs a square matrix");
  const std::size_t N = X.rows();
  if (v.size() != ipow(N, k)) throw DimensionError("vector length is not N^k");
  Vector cur = v;
  Vector next(v.size());
  Scalar tmp;
  // Factor m has stride N^(k-1-m) in the big-endian layout.
  for (std::size_t m = 0; m < k; ++m) {
    const std::size_t stride = ipow(N, k - 1 - m);
    for (auto& x : next) x = 0;
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      if (cur[idx] == 0) continue;
      const std::size_t digit = (idx / stride) % N;
      const std::size_t base = idx - digit * stride;
      for (std::size_t r = 0; r < N; ++r) {
        if (X(r, digit) == 0) continue;
        tmp = X(r, digit) * cur[idx];
        next[base + r * stride] += tmp;
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

bool is_intertwiner(const Matrix& X, const Tensor& t) {
  if (X.rows() != t.N || X.cols() != t.N) throw DimensionError("matrix size does not match tensor N");
  Matrix xk = Matrix::identity(1);
  for (std::size_t i = 0; i < t.k; ++i) xk = kron(xk, X);
  Matrix xl = Matrix::identity(1);
  for (std::size_t i = 0; i < t.l; ++i) xl = kron(xl, X);
  return xl * t.entries == t.entries * xk;
}

Vector as_vector(const Tensor& t) {
  if (t.k != 0) throw DimensionError("as_vector needs a tensor with no inputs");
  return Vector(t.entries.entries().begin(), t.entries.entries().end());
}

std::size_t d4_fixed_dimension(std::size_t k) {
  const std::size_t N = 4;
  const std::size_t total = checked_volume(N, k);
  // Each generator as (image, sign) per basis vector.
  struct Monomial {
    std::vector<std::size_t> image;
    std::vector<int> sign;
  };
  std::vector<Monomial> gens;
  for (const auto& X : classical_D4_generators()) {
    Monomial g{std::vector<std::size_t>(N), std::vector<int>(N)};
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t r = 0; r < N; ++r)
        if (X(r, c) != 0) {
          g.image[c] = r;
          g.sign[c] = X(r, c) > 0 ? 1 : -1;
        }
    gens.push_back(std::move(g));
  }
  std::vector<int> sign_of(total, 0);  // 0 = unvisited
  std::size_t dim = 0;
  std::vector<std::size_t> digits(k);
  for (std::size_t root = 0; root < total; ++root) {
    if (sign_of[root] != 0) continue;
    bool conflict = false;
    sign_of[root] = 1;
    std::vector<std::size_t> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t cur = queue[qi];
      for (const auto& g : gens) {
        std::size_t rest = cur;
        for (std::size_t m = k; m-- > 0;) {
          digits[m] = rest % N;
          rest /= N;
        }
        int s = sign_of[cur];
        std::size_t img = 0;
        for (std::size_t m = 0; m < k; ++m) {
          s *= g.sign[digits[m]];
          img = img * N + g.image[digits[m]];
        }
        // A fixed vector satisfies c[img] = s_rel * c[cur]; record c[img] relative to the root.
        if (sign_of[img] == 0) {
          sign_of[img] = s;
          queue.push_back(img);
        } else if (sign_of[img] != s) {
          conflict = true;
        }
      }
    }
    if (!conflict) ++dim;
  }
  return dim;
}

Scalar d4_fixed_dimension_by_characters(std::size_t k) {
  Scalar sum = 0;
  const auto group = classical_D4_elements();
  for (const auto& X : group) {
    Scalar tr = 0;
    for (std::size_t i = 0; i < 4; ++i) tr += X(i, i);
    sum += power(tr, static_cast<long>(k));
  }
  return sum / static_cast<long>(group.size());
}

}  // namespace d4
