#pragma once

#include <cstdint>
#include <vector>

#include "vext/rational.hpp"

namespace vext::repn {

/// Integer partition / Young diagram. Parts are strictly positive and
/// non-increasing; trailing zeros are stripped on construction.
class Partition {
 public:
  Partition() = default;  // empty partition (n = 0), recursion base only
  explicit Partition(std::vector<int> parts);

  int n() const { return n_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int part(int i) const { return i < rows() ? parts_[i] : 0; }
  bool empty() const { return parts_.empty(); }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string str() const;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// One-row partition (n), the fully symmetric label.
inline Partition sym(int n) { return Partition(std::vector<int>{n}); }

/// All partitions of n with at most d rows, in reverse-lexicographic
/// (descending) order: (n) first.
std::vector<Partition> partitions(int n, int d);

/// All diagrams obtained from alpha by adding one box, row count capped at d.
std::vector<Partition> grow(const Partition& alpha, int d);

/// Number of standard Young tableaux m_lambda (hook length formula).
long long syt_count(const Partition& lambda);

/// Number of semistandard Young tableaux with entries in {1..d}
/// (hook content formula); 0 when the diagram has more than d rows.
long long ssyt_count(const Partition& lambda, int d);

/// Irreducible character of S_n: chi^lambda evaluated on the conjugacy
/// class of the given cycle type (Murnaghan-Nakayama recursion, memoized).
/// Throws std::invalid_argument if the two partitions have different n.
long long character(const Partition& lambda, const Partition& cycle_type);

/// Permutation of {0..n-1} stored as the list of images.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// From cycle notation, e.g. {{0,1,2}} is the 3-cycle (1 2 3).
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation compose(const Permutation& o) const;  // (*this) after o
  Permutation inverse() const;
  Partition cycle_type() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }

 private:
  std::vector<int> img_;
};

/// All n! permutations in a fixed deterministic order.
std::vector<Permutation> all_permutations(int n);

struct CycleStats {
  int cycles;            // c(tau)
  int first_cycle_len;   // L(tau): length of the cycle containing position 1
};
CycleStats cycle_stats(const Permutation& tau);

/// K(n) = sum_{tau in S_n} d^{c(tau)} = d(d+1)...(d+n-1),
/// Q(n) = sum over tau with a fixed j != 1 in the cycle of 1,
/// W(n) = sum_tau L(tau) d^{c(tau)} = K(n) + (n-1) Q(n).
/// Q is defined for n >= 2 (returned as 0 for n = 1).
struct StirlingSums {
  Rat K, Q, W;
};
StirlingSums stirling_sums(int n, int d);

}  // namespace vext::repn
