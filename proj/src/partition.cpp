#include "d4plus/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "d4plus/detail/dsu.hpp"
#include "d4plus/errors.hpp"

namespace d4 {

namespace {

std::vector<int> normalize_labels(const std::vector<int>& raw, std::size_t& blocks) {
  std::unordered_map<int, int> rename;
  std::vector<int> out;
  out.reserve(raw.size());
  for (int x : raw) {
    auto [it, inserted] = rename.try_emplace(x, static_cast<int>(rename.size()));
    out.push_back(it->second);
  }
  blocks = rename.size();
  return out;
}

// Restricted growth strings of length n: every set partition of n items once.
template <class Fn>
void for_each_set_partition(std::size_t n, Fn&& fn) {
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  if (n == 0) {
    fn(rgs);
    return;
  }
  while (true) {
    fn(rgs);
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

Partition merge_blocks(const Partition& p, const std::vector<int>& block_map) {
  std::vector<int> labels;
  labels.reserve(p.size());
  for (int b : p.labels()) labels.push_back(block_map[static_cast<std::size_t>(b)]);
  return Partition(p.upper(), p.lower(), std::move(labels));
}

Scalar factorial(long n) {
  Scalar f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

// ------------------------------------------------------------- Partition

Partition::Partition(std::size_t upper, std::size_t lower, std::vector<int> labels)
    : upper_(upper), lower_(lower) {
  if (labels.size() != upper + lower) throw DimensionError("partition label count must equal k + l");
  labels_ = normalize_labels(labels, block_count_);
}

Partition Partition::from_blocks(std::size_t upper, std::size_t lower,
                                 const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t n = upper + lower;
  std::vector<int> labels(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw SchemaError("partition block " + std::to_string(b) + " is empty");
    for (auto pt : blocks[b]) {
      if (pt >= n) throw SchemaError("point " + std::to_string(pt) + " out of range");
      if (labels[pt] != -1) throw SchemaError("point " + std::to_string(pt) + " appears in two blocks");
      labels[pt] = static_cast<int>(b);
    }
  }
  for (std::size_t pt = 0; pt < n; ++pt)
    if (labels[pt] == -1) throw SchemaError("point " + std::to_string(pt) + " is in no block");
  return Partition(upper, lower, std::move(labels));
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
  std::vector<std::vector<std::size_t>> out(block_count_);
  for (std::size_t pt = 0; pt < labels_.size(); ++pt) out[static_cast<std::size_t>(labels_[pt])].push_back(pt);
  return out;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "P(" << upper_ << "," << lower_ << ")";
  for (const auto& b : blocks()) {
    os << "{";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "}";
  }
  return os.str();
}

// ----------------------------------------------------- category structure

Partition tensor(const Partition& p, const Partition& q) {
  const int shift = static_cast<int>(p.block_count());
  std::vector<int> labels;
  labels.reserve(p.size() + q.size());
  const auto& pl = p.labels();
  const auto& ql = q.labels();
  labels.insert(labels.end(), pl.begin(), pl.begin() + static_cast<std::ptrdiff_t>(p.upper()));
  for (std::size_t i = 0; i < q.upper(); ++i) labels.push_back(ql[i] + shift);
  labels.insert(labels.end(), pl.begin() + static_cast<std::ptrdiff_t>(p.upper()), pl.end());
  for (std::size_t i = q.upper(); i < q.size(); ++i) labels.push_back(ql[i] + shift);
  return Partition(p.upper() + q.upper(), p.lower() + q.lower(), std::move(labels));
}

Composite compose(const Partition& q, const Partition& p) {
  if (p.lower() != q.upper()) {
    throw ArityError("compose: lower row of p (" + std::to_string(p.lower()) +
                     ") does not match upper row of q (" + std::to_string(q.upper()) + ")");
  }
  const std::size_t bp = p.block_count();
  detail::DisjointSets dsu(bp + q.block_count());
  for (std::size_t i = 0; i < p.lower(); ++i) {
    dsu.unite(static_cast<std::size_t>(p.block_of(p.upper() + i)), bp + static_cast<std::size_t>(q.block_of(i)));
  }
  std::vector<int> labels;
  labels.reserve(p.upper() + q.lower());
  std::set<std::size_t> outer;
  for (std::size_t i = 0; i < p.upper(); ++i) {
    labels.push_back(static_cast<int>(dsu.find(static_cast<std::size_t>(p.block_of(i)))));
    outer.insert(static_cast<std::size_t>(labels.back()));
  }
  for (std::size_t j = 0; j < q.lower(); ++j) {
    labels.push_back(static_cast<int>(dsu.find(bp + static_cast<std::size_t>(q.block_of(q.upper() + j)))));
    outer.insert(static_cast<std::size_t>(labels.back()));
  }
  std::set<std::size_t> all_roots;
  for (std::size_t x = 0; x < dsu.size(); ++x) all_roots.insert(dsu.find(x));
  return {Partition(p.upper(), q.lower(), std::move(labels)), all_roots.size() - outer.size()};
}

Partition involution(const Partition& p) {
  const auto& l = p.labels();
  std::vector<int> labels(l.begin() + static_cast<std::ptrdiff_t>(p.upper()), l.end());
  labels.insert(labels.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(p.upper()));
  return Partition(p.lower(), p.upper(), std::move(labels));
}

Partition rotate_right(const Partition& p) {
  if (p.lower() == 0) throw PreconditionError("rotate_right needs at least one lower point");
  std::vector<int> labels = p.labels();
  std::rotate(labels.begin() + static_cast<std::ptrdiff_t>(p.upper()), labels.end() - 1, labels.end());
  return Partition(p.upper() + 1, p.lower() - 1, std::move(labels));
}

Partition rotate_left(const Partition& p) {
  if (p.upper() == 0) throw PreconditionError("rotate_left needs at least one upper point");
  std::vector<int> labels = p.labels();
  std::rotate(labels.begin(), labels.begin() + 1, labels.begin() + static_cast<std::ptrdiff_t>(p.upper()));
  return Partition(p.upper() - 1, p.lower() + 1, std::move(labels));
}

Partition unrotate_right(const Partition& p) {
  if (p.upper() == 0) throw PreconditionError("unrotate_right needs at least one upper point");
  std::vector<int> labels = p.labels();
  std::rotate(labels.begin() + static_cast<std::ptrdiff_t>(p.upper()) - 1,
              labels.begin() + static_cast<std::ptrdiff_t>(p.upper()), labels.end());
  return Partition(p.upper() - 1, p.lower() + 1, std::move(labels));
}

Partition unrotate_left(const Partition& p) {
  if (p.lower() == 0) throw PreconditionError("unrotate_left needs at least one lower point");
  std::vector<int> labels = p.labels();
  std::rotate(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(p.upper()),
              labels.begin() + static_cast<std::ptrdiff_t>(p.upper()) + 1);
  return Partition(p.upper() + 1, p.lower() - 1, std::move(labels));
}

// ------------------------------------------------------ lattice structure

bool is_coarsening(const Partition& q, const Partition& p) {
  if (q.upper() != p.upper() || q.lower() != p.lower()) return false;
  std::vector<int> image(p.block_count(), -1);
  for (std::size_t pt = 0; pt < p.size(); ++pt) {
    auto& slot = image[static_cast<std::size_t>(p.block_of(pt))];
    if (slot == -1) slot = q.block_of(pt);
    else if (slot != q.block_of(pt)) return false;
  }
  return true;
}

std::vector<Partition> coarsenings(const Partition& p) {
  std::vector<Partition> out;
  for_each_set_partition(p.block_count(), [&](const std::vector<int>& rgs) { out.push_back(merge_blocks(p, rgs)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> all_partitions(std::size_t upper, std::size_t lower) {
  std::vector<Partition> out;
  for_each_set_partition(upper + lower, [&](const std::vector<int>& rgs) { out.emplace_back(upper, lower, rgs); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// μ(p, ·) on every q >= p, by μ(p,p) = 1 and Σ_{p<=r<=q} μ(p,r) = 0.
std::map<Partition, Scalar> mobius_row(const Partition& p) {
  auto upset = coarsenings(p);
  std::stable_sort(upset.begin(), upset.end(), [](const Partition& a, const Partition& b) {
    return a.block_count() > b.block_count();
  });
  std::map<Partition, Scalar> mu;
  for (std::size_t i = 0; i < upset.size(); ++i) {
    const auto& q = upset[i];
    if (q == p) {
      mu[q] = 1;
      continue;
    }
    Scalar acc = 0;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& r = upset[j];
      if (r.block_count() > q.block_count() && is_coarsening(q, r)) acc += mu[r];
    }
    mu[q] = -acc;
  }
  return mu;
}

}  // namespace

Scalar mobius(const Partition& p, const Partition& q) {
  if (!is_coarsening(q, p)) throw PreconditionError("mobius(p, q) requires q >= p");
  if (p == q) return 1;
  // Restrict to the interval [p, q] only.
  std::vector<Partition> interval;
  for (auto& r : coarsenings(p))
    if (is_coarsening(q, r)) interval.push_back(std::move(r));
  std::stable_sort(interval.begin(), interval.end(), [](const Partition& a, const Partition& b) {
    return a.block_count() > b.block_count();
  });
  std::map<Partition, Scalar> mu;
  for (std::size_t i = 0; i < interval.size(); ++i) {
    const auto& r = interval[i];
    if (r == p) {
      mu[r] = 1;
      continue;
    }
    Scalar acc = 0;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& s = interval[j];
      if (s.block_count() > r.block_count() && is_coarsening(r, s)) acc += mu[s];
    }
    mu[r] = -acc;
  }
  return mu.at(q);
}

Scalar mobius_closed_form(const Partition& p, const Partition& q) {
  if (!is_coarsening(q, p)) throw PreconditionError("mobius(p, q) requires q >= p");
  std::vector<std::set<int>> merged(q.block_count());
  for (std::size_t pt = 0; pt < p.size(); ++pt)
    merged[static_cast<std::size_t>(q.block_of(pt))].insert(p.block_of(pt));
  Scalar mu = 1;
  for (const auto& m : merged) {
    const long n = static_cast<long>(m.size());
    mu *= factorial(n - 1);
    if ((n - 1) % 2 == 1) mu = -mu;
  }
  return mu;
}

bool is_noncrossing(const Partition& p) {
  const std::size_t n = p.size();
  std::vector<int> cyc(n);
  for (std::size_t i = 0; i < p.upper(); ++i) cyc[p.upper() - 1 - i] = p.block_of(i);
  for (std::size_t j = 0; j < p.lower(); ++j) cyc[p.upper() + j] = p.block_of(p.upper() + j);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (cyc[b] == cyc[a]) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (cyc[c] != cyc[a]) continue;
        for (std::size_t d = c + 1; d < n; ++d)
          if (cyc[d] == cyc[b]) return false;
      }
    }
  return true;
}

// -------------------------------------------------------- PartitionVector

PartitionVector::PartitionVector(const Partition& p, Scalar coeff) : upper_(p.upper()), lower_(p.lower()) {
  add(p, coeff);
}

Scalar PartitionVector::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void PartitionVector::add(const Partition& p, const Scalar& coeff) {
  if (p.upper() != upper_ || p.lower() != lower_) {
    throw DimensionError("partition " + p.str() + " does not fit a vector in P(" + std::to_string(upper_) + "," +
                         std::to_string(lower_) + ")");
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

PartitionVector& PartitionVector::operator+=(const PartitionVector& other) {
  if (other.upper_ != upper_ || other.lower_ != lower_) throw DimensionError("partition vector shape mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PartitionVector& PartitionVector::operator-=(const PartitionVector& other) {
  if (other.upper_ != upper_ || other.lower_ != lower_) throw DimensionError("partition vector shape mismatch");
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

PartitionVector& PartitionVector::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

PartitionVector operator+(PartitionVector a, const PartitionVector& b) { return a += b; }
PartitionVector operator-(PartitionVector a, const PartitionVector& b) { return a -= b; }
PartitionVector operator-(PartitionVector a) { return a *= Scalar(-1); }
PartitionVector operator*(const Scalar& s, PartitionVector a) { return a *= s; }

PartitionVector tensor(const PartitionVector& x, const PartitionVector& y) {
  PartitionVector out(x.upper() + y.upper(), x.lower() + y.lower());
  for (const auto& [p, a] : x.terms())
    for (const auto& [q, b] : y.terms()) out.add(tensor(p, q), a * b);
  return out;
}

PartitionVector tensor_power(const PartitionVector& x, std::size_t n) {
  PartitionVector out(parts::empty());
  for (std::size_t i = 0; i < n; ++i) out = tensor(out, x);
  return out;
}

PartitionVector compose(const PartitionVector& y, const PartitionVector& x, const Scalar& N) {
  if (x.lower() != y.upper()) throw ArityError("compose: partition vector arities do not match");
  PartitionVector out(x.upper(), y.lower());
  for (const auto& [p, a] : x.terms())
    for (const auto& [q, b] : y.terms()) {
      auto [r, loops] = compose(q, p);
      out.add(r, a * b * power(N, static_cast<long>(loops)));
    }
  return out;
}

PartitionVector involution(const PartitionVector& x) {
  PartitionVector out(x.lower(), x.upper());
  for (const auto& [p, c] : x.terms()) out.add(involution(p), c);
  return out;
}

PartitionVector rotate_right(const PartitionVector& x) {
  if (x.lower() == 0) throw PreconditionError("rotate_right needs at least one lower point");
  PartitionVector out(x.upper() + 1, x.lower() - 1);
  for (const auto& [p, c] : x.terms()) out.add(rotate_right(p), c);
  return out;
}

PartitionVector rotate_left(const PartitionVector& x) {
  if (x.upper() == 0) throw PreconditionError("rotate_left needs at least one upper point");
  PartitionVector out(x.upper() - 1, x.lower() + 1);
  for (const auto& [p, c] : x.terms()) out.add(rotate_left(p), c);
  return out;
}

PartitionVector hat(const Partition& p) {
  PartitionVector out(p.upper(), p.lower());
  for (const auto& [q, mu] : mobius_row(p)) out.add(q, mu);
  return out;
}

PartitionVector hat(const PartitionVector& x) {
  PartitionVector out(x.upper(), x.lower());
  for (const auto& [p, c] : x.terms()) out += c * hat(p);
  return out;
}

PartitionVector conjugate_by_tau(const PartitionVector& x, const Scalar& N) {
  const auto t = parts::tau(N);
  const auto inner = compose(x, tensor_power(t, x.upper()), N);
  return compose(tensor_power(t, x.lower()), inner, N);
}

// ------------------------------------------------------------ generators

namespace parts {
Partition empty() { return Partition(); }
Partition singleton() { return Partition(0, 1, {0}); }
Partition pair() { return Partition(0, 2, {0, 0}); }
Partition uppair() { return Partition(2, 0, {0, 0}); }
Partition identity() { return Partition(1, 1, {0, 0}); }
Partition disconnecter() { return Partition(1, 1, {0, 1}); }
Partition crossing() { return Partition(2, 2, {0, 1, 1, 0}); }
Partition double_identity() { return Partition(2, 2, {0, 1, 0, 1}); }
Partition connecter() { return Partition(2, 2, {0, 0, 0, 0}); }
Partition fourblock() { return Partition(0, 4, {0, 0, 0, 0}); }

Partition singletons(std::size_t lower) {
  std::vector<int> labels(lower);
  std::iota(labels.begin(), labels.end(), 0);
  return Partition(0, lower, std::move(labels));
}

PartitionVector tau(const Scalar& N) {
  if (N == 0) throw PreconditionError("tau is undefined for N = 0");
  PartitionVector t(identity());
  t.add(disconnecter(), Scalar(-2) / N);
  return t;
}
}  // namespace parts

std::map<std::string, PartitionVector> generators(const Scalar& N) {
  if (N == 0) throw PreconditionError("generators are undefined for N = 0");
  return {
      {"pair", PartitionVector(parts::pair())},
      {"uppair", PartitionVector(parts::uppair())},
      {"identity", PartitionVector(parts::identity())},
      {"disconnecter", PartitionVector(parts::disconnecter())},
      {"crossing", PartitionVector(parts::crossing())},
      {"connecter", PartitionVector(parts::connecter())},
      {"fourblock", PartitionVector(parts::fourblock())},
      {"singleton", PartitionVector(parts::singleton())},
      {"tau", parts::tau(N)},
  };
}

}  // namespace d4
