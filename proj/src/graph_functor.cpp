#include "d4plus/graph_functor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "d4plus/detail/dsu.hpp"
#include "d4plus/errors.hpp"

namespace d4 {

namespace {

void check_weight_matrix(const Matrix& A) {
  if (!A.is_square() || A.rows() == 0) throw DimensionError("T^A needs a non-empty square matrix");
  if (!A.is_symmetric()) throw PreconditionError("T^A needs a symmetric matrix");
}

std::vector<bool> boundary_mask(const BilabelledGraph& K) {
  std::vector<bool> m(K.vertex_count(), false);
  for (auto x : K.inputs()) m[x] = true;
  for (auto x : K.outputs()) m[x] = true;
  return m;
}

// Dense table over a sorted variable list, big-endian in that order.
struct Factor {
  std::vector<std::size_t> vars;
  std::vector<Scalar> table;
};

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// Product of the given factors over the union of their scopes.
Factor multiply(const std::vector<const Factor*>& fs, std::size_t N) {
  std::set<std::size_t> scope;
  for (auto f : fs) scope.insert(f->vars.begin(), f->vars.end());
  Factor out{{scope.begin(), scope.end()}, {}};
  const std::size_t size = checked_volume(N, out.vars.size());
  out.table.assign(size, Scalar(1));
  // Position of each factor variable inside the output scope.
  std::vector<std::vector<std::size_t>> pos;
  for (auto f : fs) {
    std::vector<std::size_t> p;
    for (auto v : f->vars)
      p.push_back(static_cast<std::size_t>(std::lower_bound(out.vars.begin(), out.vars.end(), v) - out.vars.begin()));
    pos.push_back(std::move(p));
  }
  std::vector<std::size_t> digits(out.vars.size());
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t rest = idx;
    for (std::size_t m = digits.size(); m-- > 0;) {
      digits[m] = rest % N;
      rest /= N;
    }
    Scalar& cell = out.table[idx];
    for (std::size_t i = 0; i < fs.size() && cell != 0; ++i) {
      std::size_t sub = 0;
      for (auto p : pos[i]) sub = sub * N + digits[p];
      cell *= fs[i]->table[sub];
    }
  }
  return out;
}

Factor sum_out(const Factor& f, std::size_t var, std::size_t N) {
  const auto it = std::find(f.vars.begin(), f.vars.end(), var);
  const std::size_t p = static_cast<std::size_t>(it - f.vars.begin());
  Factor out;
  for (auto v : f.vars)
    if (v != var) out.vars.push_back(v);
  const std::size_t stride = ipow(N, f.vars.size() - 1 - p);
  out.table.assign(ipow(N, out.vars.size()), Scalar(0));
  for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
    if (f.table[idx] == 0) continue;
    const std::size_t high = idx / (stride * N);
    const std::size_t low = idx % stride;
    out.table[high * stride + low] += f.table[idx];
  }
  return out;
}

std::vector<Factor> edge_factors(const BilabelledGraph& K, const Matrix& A) {
  const std::size_t N = A.rows();
  std::map<Edge, std::size_t> mult;
  for (auto e : K.edges()) ++mult[e];
  std::vector<Factor> fs;
  for (auto [e, m] : mult) {
    Factor f;
    if (e.first == e.second) {
      f.vars = {e.first};
      for (std::size_t i = 0; i < N; ++i) f.table.push_back(power(A(i, i), static_cast<long>(m)));
    } else {
      f.vars = {e.first, e.second};
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) f.table.push_back(power(A(i, j), static_cast<long>(m)));
    }
    fs.push_back(std::move(f));
  }
  return fs;
}

// Writes a value table over the distinct boundary vertices into the tensor.
Tensor expand_boundary(const BilabelledGraph& K, const Factor& f, std::size_t N) {
  checked_volume(N, K.k() + K.l());
  Tensor t(N, K.k(), K.l());
  std::vector<std::size_t> digits(f.vars.size());
  std::vector<std::size_t> value_of(K.vertex_count(), 0);
  for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
    if (f.table[idx] == 0) continue;
    std::size_t rest = idx;
    for (std::size_t m = digits.size(); m-- > 0;) {
      value_of[f.vars[m]] = rest % N;
      rest /= N;
    }
    std::size_t col = 0;
    for (auto x : K.inputs()) col = col * N + value_of[x];
    std::size_t row = 0;
    for (auto x : K.outputs()) row = row * N + value_of[x];
    t.entries(row, col) = f.table[idx];
  }
  return t;
}

}  // namespace

std::vector<std::size_t> contraction_order(const BilabelledGraph& K) {
  const std::size_t n = K.vertex_count();
  const auto boundary = boundary_mask(K);
  std::vector<std::set<std::size_t>> adj(n);
  for (auto [u, v] : K.edges())
    if (u != v) {
      adj[u].insert(v);
      adj[v].insert(u);
    }
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  while (true) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || boundary[v]) continue;
      if (best == n || adj[v].size() < adj[best].size()) best = v;
    }
    if (best == n) break;
    done[best] = true;
    order.push_back(best);
    // Eliminating a vertex joins its neighbours into one factor scope.
    std::vector<std::size_t> nb(adj[best].begin(), adj[best].end());
    for (auto x : nb) {
      adj[x].erase(best);
      for (auto y : nb)
        if (x != y) adj[x].insert(y);
    }
    adj[best].clear();
  }
  return order;
}

Tensor evaluate_TA(const BilabelledGraph& K, const Matrix& A) {
  check_weight_matrix(A);
  const std::size_t N = A.rows();
  std::vector<Factor> pool = edge_factors(K, A);
  Scalar constant = 1;
  const auto boundary = boundary_mask(K);
  for (std::size_t v = 0; v < K.vertex_count(); ++v)
    if (!boundary[v] && K.degree(v) == 0) constant *= static_cast<long>(N);

  for (auto v : contraction_order(K)) {
    if (K.degree(v) == 0) continue;
    std::vector<const Factor*> touching;
    std::vector<Factor> rest;
    for (const auto& f : pool)
      if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) touching.push_back(&f);
    Factor merged = sum_out(multiply(touching, N), v, N);
    for (auto& f : pool)
      if (std::find(f.vars.begin(), f.vars.end(), v) == f.vars.end()) rest.push_back(std::move(f));
    rest.push_back(std::move(merged));
    pool = std::move(rest);
  }

  // Remaining factors only involve boundary vertices; include every boundary vertex in the scope.
  Factor scope;
  for (std::size_t v = 0; v < K.vertex_count(); ++v)
    if (boundary[v]) scope.vars.push_back(v);
  scope.table.assign(checked_volume(N, scope.vars.size()), constant);
  std::vector<const Factor*> all{&scope};
  for (const auto& f : pool) all.push_back(&f);
  return expand_boundary(K, multiply(all, N), N);
}

Tensor evaluate_TA_bruteforce(const BilabelledGraph& K, const Matrix& A) {
  check_weight_matrix(A);
  const std::size_t N = A.rows();
  const std::size_t n = K.vertex_count();
  const std::size_t colourings = checked_volume(N, n);
  checked_volume(N, K.k() + K.l());
  Tensor t(N, K.k(), K.l());
  std::vector<std::size_t> phi(n, 0);
  for (std::size_t idx = 0; idx < colourings; ++idx) {
    std::size_t rest = idx;
    for (std::size_t m = n; m-- > 0;) {
      phi[m] = rest % N;
      rest /= N;
    }
    Scalar w = 1;
    for (auto [u, v] : K.edges()) {
      w *= A(phi[u], phi[v]);
      if (w == 0) break;
    }
    if (w == 0) continue;
    std::size_t col = 0;
    for (auto x : K.inputs()) col = col * N + phi[x];
    std::size_t row = 0;
    for (auto x : K.outputs()) row = row * N + phi[x];
    t.entries(row, col) += w;
  }
  return t;
}

Matrix tau_matrix(std::size_t N) { return evaluate(parts::tau(Scalar(static_cast<long>(N))), N).entries; }

PartitionVector evaluate_Fpi(const BilabelledGraph& K, const Scalar& alpha, const Scalar& beta, const Scalar& N) {
  const std::size_t m = K.edge_count();
  if (m > kFpiEdgeCap) {
    throw CapacityError("F_pi sums over 2^" + std::to_string(m) + " edge subsets; cap is 2^" +
                        std::to_string(kFpiEdgeCap));
  }
  const std::size_t n = K.vertex_count();
  PartitionVector out(K.k(), K.l());
  std::vector<Scalar> alpha_pow(m + 1), beta_pow(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    alpha_pow[i] = power(alpha, static_cast<long>(i));
    beta_pow[i] = power(beta, static_cast<long>(i));
  }
  std::map<std::pair<Partition, std::size_t>, Scalar> collected;
  for (std::size_t S = 0; S < (std::size_t{1} << m); ++S) {
    const std::size_t resolved = static_cast<std::size_t>(__builtin_popcountll(S));
    const Scalar weight = alpha_pow[m - resolved] * beta_pow[resolved];
    if (weight == 0) continue;
    detail::DisjointSets dsu(n);
    for (std::size_t e = 0; e < m; ++e)
      if (!((S >> e) & 1U)) dsu.unite(K.edges()[e].first, K.edges()[e].second);
    std::vector<bool> touched(n, false);
    std::vector<int> labels;
    for (auto x : K.inputs()) {
      touched[dsu.find(x)] = true;
      labels.push_back(static_cast<int>(dsu.find(x)));
    }
    for (auto x : K.outputs()) {
      touched[dsu.find(x)] = true;
      labels.push_back(static_cast<int>(dsu.find(x)));
    }
    std::size_t free_components = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (dsu.find(v) == v && !touched[v]) ++free_components;
    collected[{Partition(K.k(), K.l(), std::move(labels)), free_components}] += weight;
  }
  for (const auto& [key, w] : collected) out.add(key.first, w * power(N, static_cast<long>(key.second)));
  return out;
}

PartitionVector evaluate_Fpi(const BilabelledGraph& K, const PartitionVector& pi, const Scalar& N) {
  if (pi.upper() != 1 || pi.lower() != 1) throw DimensionError("F_pi needs pi in P(1,1)");
  for (const auto& [p, c] : pi.terms()) {
    if (p != parts::identity() && p != parts::disconnecter()) {
      throw PreconditionError("F_pi supports only combinations of identity and disconnecter");
    }
  }
  return evaluate_Fpi(K, pi.coefficient(parts::identity()), pi.coefficient(parts::disconnecter()), N);
}

bool consistency_check(const BilabelledGraph& K, std::size_t N) {
  const Scalar n(static_cast<long>(N));
  const auto lhs = evaluate_TA(K, tau_matrix(N));
  const auto rhs = evaluate(evaluate_Fpi(K, Scalar(1), Scalar(-2) / n, n), N);
  return lhs == rhs;
}

}  // namespace d4
