#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "d4plus/exactnum.hpp"

namespace d4 {

/// Set partition of k upper and l lower points.
///
/// Points share one index space: upper points are 0..k-1 (left to right),
/// lower points are k..k+l-1. Each point carries a block label; labels are
/// renumbered so that they first occur in increasing order, which makes the
/// label sequence a canonical form (equality and ordering are structural).
class Partition {
 public:
  Partition() = default;  // the empty partition in P(0,0)
  Partition(std::size_t upper, std::size_t lower, std::vector<int> labels);

  static Partition from_blocks(std::size_t upper, std::size_t lower,
                               const std::vector<std::vector<std::size_t>>& blocks);

  std::size_t upper() const { return upper_; }
  std::size_t lower() const { return lower_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t block_count() const { return block_count_; }
  const std::vector<int>& labels() const { return labels_; }
  int block_of(std::size_t point) const { return labels_.at(point); }

  /// Blocks as sorted point lists, ordered by first point.
  std::vector<std::vector<std::size_t>> blocks() const;

  /// Readable form such as "P(0,3){0,1}{2}".
  std::string str() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::size_t upper_ = 0;
  std::size_t lower_ = 0;
  std::vector<int> labels_;
  std::size_t block_count_ = 0;
};

struct Composite {
  Partition partition;
  std::size_t loops = 0;  // closed components that fell off in the middle row
};

Partition tensor(const Partition& p, const Partition& q);
/// q∘p: p's lower row is glued to q's upper row. Throws ArityError.
Composite compose(const Partition& q, const Partition& p);
Partition involution(const Partition& p);
/// Rightmost lower point becomes the rightmost upper point (needs l >= 1).
Partition rotate_right(const Partition& p);
/// Leftmost upper point becomes the leftmost lower point (needs k >= 1).
Partition rotate_left(const Partition& p);
/// Inverse of rotate_right: rightmost upper point becomes the rightmost lower point.
Partition unrotate_right(const Partition& p);
/// Inverse of rotate_left: leftmost lower point becomes the leftmost upper point.
Partition unrotate_left(const Partition& p);

/// Whether q arises from p by merging blocks (q >= p); both must share (k,l).
bool is_coarsening(const Partition& q, const Partition& p);
/// All q >= p, p included, in ascending order.
std::vector<Partition> coarsenings(const Partition& p);
/// Möbius function of [p,q] by recursive inversion. Throws PreconditionError unless q >= p.
Scalar mobius(const Partition& p, const Partition& q);
/// Product formula over the blocks of q: prod (-1)^(n-1) (n-1)!, n = merged p-blocks.
Scalar mobius_closed_form(const Partition& p, const Partition& q);

/// Non-crossing with respect to the cyclic order u_k..u_1 l_1..l_l.
bool is_noncrossing(const Partition& p);

/// All partitions of P(k,l).
std::vector<Partition> all_partitions(std::size_t upper, std::size_t lower);

/// Formal rational combination of partitions sharing (k,l). Zero terms are never stored.
class PartitionVector {
 public:
  PartitionVector(std::size_t upper = 0, std::size_t lower = 0) : upper_(upper), lower_(lower) {}
  PartitionVector(const Partition& p, Scalar coeff = 1);

  std::size_t upper() const { return upper_; }
  std::size_t lower() const { return lower_; }
  const std::map<Partition, Scalar>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Partition& p) const;

  /// Adds coeff * p; throws DimensionError if p has another shape.
  void add(const Partition& p, const Scalar& coeff);

  PartitionVector& operator+=(const PartitionVector& other);
  PartitionVector& operator-=(const PartitionVector& other);
  PartitionVector& operator*=(const Scalar& s);

  friend bool operator==(const PartitionVector&, const PartitionVector&) = default;

 private:
  std::size_t upper_;
  std::size_t lower_;
  std::map<Partition, Scalar> terms_;
};

PartitionVector operator+(PartitionVector a, const PartitionVector& b);
PartitionVector operator-(PartitionVector a, const PartitionVector& b);
PartitionVector operator-(PartitionVector a);
PartitionVector operator*(const Scalar& s, PartitionVector a);

PartitionVector tensor(const PartitionVector& x, const PartitionVector& y);
PartitionVector tensor_power(const PartitionVector& x, std::size_t n);
/// y∘x with loop parameter N.
PartitionVector compose(const PartitionVector& y, const PartitionVector& x, const Scalar& N);
PartitionVector involution(const PartitionVector& x);
PartitionVector rotate_right(const PartitionVector& x);
PartitionVector rotate_left(const PartitionVector& x);

/// p̂ = Σ_{q≥p} μ(p,q) q, extended linearly.
PartitionVector hat(const Partition& p);
PartitionVector hat(const PartitionVector& x);

/// τ^{⊗l} x τ^{⊗k} with τ = τ_(N). Throws PreconditionError for N = 0.
PartitionVector conjugate_by_tau(const PartitionVector& x, const Scalar& N);

/// Named building blocks. Pictures: u = upper, l = lower point.
namespace parts {
Partition empty();
Partition singleton();      // {l1}
Partition pair();           // {l1,l2}
Partition uppair();         // {u1,u2}
Partition identity();       // {u1,l1}
Partition disconnecter();   // {u1}{l1}
Partition crossing();       // {u1,l2}{u2,l1}
Partition double_identity();  // {u1,l1}{u2,l2}; rotates to the nested pair {l1,l4}{l2,l3}
Partition connecter();      // {u1,u2,l1,l2}
Partition fourblock();      // {l1,l2,l3,l4}
Partition singletons(std::size_t lower);  // singleton^{⊗lower}
/// τ_(N) = identity - (2/N) disconnecter.
PartitionVector tau(const Scalar& N);
}  // namespace parts

/// pair, uppair, identity, disconnecter, crossing, connecter, fourblock, singleton, tau.
std::map<std::string, PartitionVector> generators(const Scalar& N);

}  // namespace d4
