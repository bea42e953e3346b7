#include <doctest.h>

#include <random>
#include <set>

#include "d4plus/errors.hpp"
#include "d4plus/graph_functor.hpp"
#include "d4plus/partition.hpp"
#include "d4plus/tensor.hpp"

using namespace d4;

namespace {

Scalar q(long a, long b) {
  Scalar s(a);
  s /= b;
  return s;
}

Partition lower(std::vector<std::vector<std::size_t>> blocks, std::size_t n) {
  return Partition::from_blocks(0, n, blocks);
}

Partition random_partition(std::mt19937& gen, std::size_t k, std::size_t l) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(std::max<std::size_t>(1, k + l)) - 1);
  std::vector<int> labels(k + l);
  for (auto& x : labels) x = d(gen);
  return Partition(k, l, labels);
}

PartitionVector random_vector(std::mt19937& gen, std::size_t k, std::size_t l) {
  std::uniform_int_distribution<long> c(-3, 3);
  PartitionVector x(k, l);
  for (int i = 0; i < 3; ++i) {
    const Scalar s = c(gen);
    if (s != 0) x.add(random_partition(gen, k, l), s);
  }
  return x;
}

// Interleaving test on the circle u_k..u_1 l_1..l_l, written independently of the library.
bool crossing_oracle(const Partition& p) {
  std::vector<int> around;
  for (std::size_t i = p.upper(); i-- > 0;) around.push_back(p.block_of(i));
  for (std::size_t j = 0; j < p.lower(); ++j) around.push_back(p.block_of(p.upper() + j));
  const std::size_t n = around.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (around[a] == around[c] && around[b] == around[d] && around[a] != around[b]) return true;
  return false;
}

const std::size_t kBell[] = {1, 1, 2, 5, 15, 52, 203};

}  // namespace

TEST_CASE("labels are normalized by first occurrence") {
  Partition p(1, 2, {7, 3, 7});
  CHECK(p.labels() == std::vector<int>{0, 1, 0});
  CHECK(p.block_count() == 2);
  CHECK(p == Partition::from_blocks(1, 2, {{1}, {0, 2}}));
  CHECK_THROWS_AS(Partition(1, 1, {0}), DimensionError);
  CHECK_THROWS_AS(Partition::from_blocks(0, 2, {{0}}), SchemaError);
  CHECK_THROWS_AS(Partition::from_blocks(0, 2, {{0, 1}, {1}}), SchemaError);
  CHECK(Partition().size() == 0);
}

TEST_CASE("all_partitions matches the Bell numbers") {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto ps = all_partitions(n / 2, n - n / 2);
    CHECK(ps.size() == kBell[n]);
    CHECK(std::set<Partition>(ps.begin(), ps.end()).size() == kBell[n]);
  }
}

TEST_CASE("tensor examples") {
  const auto p = parts::fourblock();
  CHECK(tensor(parts::empty(), p) == p);
  CHECK(tensor(parts::singleton(), parts::singleton()) == parts::singletons(2));
  CHECK(tensor(parts::pair(), parts::pair()) == lower({{0, 1}, {2, 3}}, 4));
}

TEST_CASE("compose examples") {
  std::mt19937 gen(5);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_partition(gen, 2, 1);
    const auto c = compose(parts::identity(), p);
    CHECK(c.partition == p);
    CHECK(c.loops == 0);
  }
  const auto loop = compose(parts::uppair(), parts::pair());
  CHECK(loop.partition == parts::empty());
  CHECK(loop.loops == 1);
  CHECK(compose(PartitionVector(parts::uppair()), PartitionVector(parts::pair()), 5) == PartitionVector(parts::empty(), 5));
  CHECK_THROWS_AS(compose(parts::pair(), parts::identity()), ArityError);
}

TEST_CASE("rotations") {
  CHECK(rotate_right(parts::pair()) == parts::identity());
  CHECK(rotate_left(parts::identity()) == parts::pair());
  CHECK(rotate_right(PartitionVector(parts::pair())) == PartitionVector(parts::identity()));
  CHECK_THROWS_AS(rotate_right(parts::uppair()), PreconditionError);
  CHECK_THROWS_AS(rotate_left(parts::pair()), PreconditionError);
  // Rotating the nested pair gives the double identity and back.
  CHECK(rotate_left(rotate_left(parts::double_identity())) == lower({{0, 3}, {1, 2}}, 4));
  CHECK(unrotate_left(unrotate_left(lower({{0, 3}, {1, 2}}, 4))) == parts::double_identity());

  std::mt19937 gen(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = i % 3, l = 1 + i % 4;
    const auto p = random_partition(gen, k, l);
    CHECK(involution(involution(p)) == p);
    CHECK(unrotate_right(rotate_right(p)) == p);
    CHECK(rotate_right(unrotate_right(rotate_right(p))) == rotate_right(p));
    const auto r = random_partition(gen, l, k);
    CHECK(unrotate_left(rotate_left(r)) == r);
    // Moving all upper points to the lower row and back is the identity.
    auto s = p;
    for (std::size_t j = 0; j < k; ++j) s = rotate_left(s);
    CHECK(s.upper() == 0);
    for (std::size_t j = 0; j < k; ++j) s = unrotate_left(s);
    CHECK(s == p);
  }
}

TEST_CASE("category axioms on random samples") {
  std::mt19937 gen(17);
  for (int i = 0; i < 150; ++i) {
    const std::size_t a = i % 3, b = (i / 3) % 3, c = (i / 9) % 3, d = 1 + i % 2;
    const Scalar N = 3 + i % 3;
    const auto p = random_vector(gen, a, b);
    const auto r = random_vector(gen, b, c);
    const auto s = random_vector(gen, c, d);
    CHECK(compose(s, compose(r, p, N), N) == compose(compose(s, r, N), p, N));
    CHECK(involution(compose(r, p, N)) == compose(involution(p), involution(r), N));
    const auto t = random_vector(gen, d, a);
    CHECK(tensor(tensor(p, r), t) == tensor(p, tensor(r, t)));
    // (R⊗T)(S⊗U) = (RS)⊗(TU)
    const auto S = random_vector(gen, a, b), R = random_vector(gen, b, c);
    const auto U = random_vector(gen, d, a), T = random_vector(gen, a, c);
    CHECK(compose(tensor(R, T), tensor(S, U), N) == tensor(compose(R, S, N), compose(T, U, N)));
  }
}

TEST_CASE("duality of pair and uppair") {
  const auto id = PartitionVector(parts::identity());
  const auto left = compose(tensor(id, PartitionVector(parts::uppair())), tensor(PartitionVector(parts::pair()), id), 4);
  CHECK(left == id);
}

TEST_CASE("coarsenings") {
  CHECK(coarsenings(parts::fourblock()).size() == 1);
  CHECK(coarsenings(parts::singletons(3)).size() == 5);
  CHECK(coarsenings(parts::singletons(4)).size() == 15);
  const auto p = lower({{0, 1}, {2}, {3}}, 4);
  for (const auto& c : coarsenings(p)) CHECK(is_coarsening(c, p));
  CHECK(coarsenings(p).size() == 5);
}

TEST_CASE("Mobius function") {
  const auto s3 = parts::singletons(3);
  CHECK(mobius(s3, s3) == 1);
  CHECK(mobius(s3, lower({{0, 1, 2}}, 3)) == 2);
  CHECK(mobius(parts::singletons(4), parts::fourblock()) == -6);
  CHECK_THROWS_AS(mobius(parts::fourblock(), parts::singletons(4)), PreconditionError);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& p : all_partitions(0, n))
      for (const auto& c : coarsenings(p)) CHECK(mobius(p, c) == mobius_closed_form(p, c));
}

TEST_CASE("hat examples") {
  CHECK(hat(parts::fourblock()) == PartitionVector(parts::fourblock()));
  PartitionVector h3(0, 3);
  h3.add(parts::singletons(3), 1);
  h3.add(lower({{0, 1}, {2}}, 3), -1);
  h3.add(lower({{0, 2}, {1}}, 3), -1);
  h3.add(lower({{1, 2}, {0}}, 3), -1);
  h3.add(lower({{0, 1, 2}}, 3), 2);
  CHECK(hat(parts::singletons(3)) == h3);
  CHECK(hat(parts::singletons(4)).term_count() == 15);
}

TEST_CASE("Mobius inversion recovers p for up to five points") {
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t k : {std::size_t{0}, n / 2}) {
      for (const auto& p : all_partitions(k, n - k)) {
        PartitionVector sum(k, n - k);
        for (const auto& c : coarsenings(p)) sum += hat(c);
        CHECK(sum == PartitionVector(p));
      }
    }
}

TEST_CASE("hat is injective up to four points") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::set<std::map<Partition, Scalar>> seen;
    const auto ps = all_partitions(1, n - 1);
    for (const auto& p : ps) seen.insert(hat(p).terms());
    CHECK(seen.size() == ps.size());
  }
}

TEST_CASE("non-crossing partitions") {
  CHECK_FALSE(is_noncrossing(parts::crossing()));
  CHECK(is_noncrossing(parts::fourblock()));
  CHECK(is_noncrossing(parts::double_identity()));
  std::size_t count = 0;
  for (const auto& p : all_partitions(0, 6)) count += is_noncrossing(p);
  CHECK(count == 132);
  for (std::size_t k = 0; k <= 5; ++k)
    for (const auto& p : all_partitions(k, 5 - k)) CHECK(is_noncrossing(p) == !crossing_oracle(p));
}

TEST_CASE("tau and generators") {
  for (long N : {3, 4, 5, 7}) {
    const auto t = parts::tau(N);
    CHECK(t.coefficient(parts::identity()) == 1);
    CHECK(t.coefficient(parts::disconnecter()) == q(-2, N));
    CHECK(compose(t, t, N) == PartitionVector(parts::identity()));
  }
  CHECK_THROWS_AS(parts::tau(0), PreconditionError);
  const auto g = generators(4);
  for (const char* name : {"pair", "identity", "crossing", "fourblock", "singleton", "tau"}) CHECK(g.count(name) == 1);
  PartitionVector relation = -PartitionVector(parts::crossing()) + Scalar(2) * PartitionVector(parts::connecter());
  CHECK(relation.term_count() == 2);
}

TEST_CASE("conjugation by tau") {
  for (long N : {3, 4, 5}) {
    CHECK(conjugate_by_tau(PartitionVector(parts::identity()), N) == PartitionVector(parts::identity()));
    const auto fb = PartitionVector(parts::fourblock());
    CHECK(conjugate_by_tau(conjugate_by_tau(fb, N), N) == fb);
  }
  // Dense route: T(τ)^{⊗4} applied to the fourblock vector.
  for (std::size_t N : {3, 4}) {
    const auto conj = conjugate_by_tau(PartitionVector(parts::fourblock()), N);
    CHECK(as_vector(evaluate(conj, N)) == apply_tensor_power(tau_matrix(N), 4, as_vector(evaluate(parts::fourblock(), N))));
  }
  CHECK_THROWS_AS(conjugate_by_tau(PartitionVector(parts::pair()), 0), PreconditionError);
}

TEST_CASE("vector bookkeeping") {
  PartitionVector x(0, 2);
  x.add(parts::pair(), 3);
  x.add(parts::pair(), -3);
  CHECK(x.is_zero());
  CHECK_THROWS_AS(x.add(parts::identity(), 1), DimensionError);
  CHECK((Scalar(0) * PartitionVector(parts::pair())).is_zero());
}
