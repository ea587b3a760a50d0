#pragma once

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vext/rational.hpp"
#include "vext/repn.hpp"

namespace vext::tensor {

/// Ordered list of local dimensions, one per labeled subsystem.
struct SystemShape {
  std::vector<int> dims;

  SystemShape() = default;
  SystemShape(std::initializer_list<int> d) : dims(d) { validate(); }
  explicit SystemShape(std::vector<int> d) : dims(std::move(d)) { validate(); }
  static SystemShape uniform(int n, int d) {
    return SystemShape(std::vector<int>(n, d));
  }

  int count() const { return static_cast<int>(dims.size()); }
  int total() const {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  }
  bool operator==(const SystemShape& o) const { return dims == o.dims; }

  /// Row-major mixed-radix decode: index -> per-subsystem digits.
  void decode(int idx, std::vector<int>& digits) const {
    digits.resize(dims.size());
    for (int s = count() - 1; s >= 0; --s) {
      digits[s] = idx % dims[s];
      idx /= dims[s];
    }
  }
  int encode(const std::vector<int>& digits) const {
    int idx = 0;
    for (int s = 0; s < count(); ++s) idx = idx * dims[s] + digits[s];
    return idx;
  }

 private:
  void validate() const {
    for (int d : dims)
      if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
  }
};

/// Dense square operator on a tensor product of labeled subsystems.
/// Scalar is one of Rat, CRat (exact backends) or Cplx (float backend).
template <class S>
class MultiOp {
 public:
  MultiOp() = default;
  explicit MultiOp(SystemShape shape)
      : shape_(std::move(shape)), n_(shape_.total()), a_(size_t(n_) * n_, S(0)) {}

  static MultiOp identity(SystemShape shape) {
    MultiOp m(std::move(shape));
    for (int i = 0; i < m.n_; ++i) m.at(i, i) = S(1);
    return m;
  }
  static MultiOp zero(SystemShape shape) { return MultiOp(std::move(shape)); }

  const SystemShape& shape() const { return shape_; }
  int dim() const { return n_; }

  S& at(int i, int j) { return a_[size_t(i) * n_ + j]; }
  const S& at(int i, int j) const { return a_[size_t(i) * n_ + j]; }

  MultiOp operator+(const MultiOp& o) const {
    check_same(o);
    MultiOp r(*this);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  MultiOp operator-(const MultiOp& o) const {
    check_same(o);
    MultiOp r(*this);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  MultiOp operator*(const MultiOp& o) const {
    check_same(o);
    MultiOp r(shape_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const S& x = at(i, k);
        if (is_zero(x)) continue;
        for (int j = 0; j < n_; ++j) {
          const S& y = o.at(k, j);
          if (is_zero(y)) continue;
          r.at(i, j) += x * y;
        }
      }
    return r;
  }
  MultiOp scaled(const S& c) const {
    MultiOp r(*this);
    for (auto& v : r.a_) v *= c;
    return r;
  }
  MultiOp adjoint() const {
    MultiOp r(shape_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = conj_s(at(j, i));
    return r;
  }

  S trace() const {
    S t(0);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  bool operator==(const MultiOp& o) const {
    return shape_ == o.shape_ && a_ == o.a_;
  }
  bool is_zero_op() const {
    for (const auto& v : a_)
      if (!is_zero(v)) return false;
    return true;
  }
  /// tol = 0 demands exact equality (the rational backends); a positive
  /// tolerance compares entry deviations in absolute value.
  bool is_hermitian(double tol = 0.0) const {
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        if (at(i, j) == conj_s(at(j, i))) continue;
        if (tol <= 0.0) return false;
        if (std::abs(to_cplx(at(i, j)) - to_cplx(conj_s(at(j, i)))) > tol)
          return false;
      }
    return true;
  }

 private:
  void check_same(const MultiOp& o) const {
    if (!(shape_ == o.shape_)) throw std::invalid_argument("shape mismatch");
  }

  SystemShape shape_;
  int n_ = 0;
  std::vector<S> a_;
};

using RatOp = MultiOp<Rat>;
using CRatOp = MultiOp<CRat>;
using CxOp = MultiOp<Cplx>;

template <class S>
MultiOp<S> kron(const MultiOp<S>& a, const MultiOp<S>& b) {
  std::vector<int> dims = a.shape().dims;
  dims.insert(dims.end(), b.shape().dims.begin(), b.shape().dims.end());
  MultiOp<S> r{SystemShape(std::move(dims))};
  int nb = b.dim();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const S& x = a.at(i, j);
      if (is_zero(x)) continue;
      for (int p = 0; p < nb; ++p)
        for (int q = 0; q < nb; ++q) {
          const S& y = b.at(p, q);
          if (is_zero(y)) continue;
          r.at(i * nb + p, j * nb + q) = x * y;
        }
    }
  return r;
}

/// P(sigma)|i_1...i_n> = |i_{sigma^{-1}(1)}...i_{sigma^{-1}(n)}>, all local
/// dimensions equal. 0/1 matrix; group homomorphism.
template <class S>
MultiOp<S> permutation_op(const SystemShape& shape, const repn::Permutation& sigma);

/// Partial trace keeping the listed subsystems (0-based, ascending output order
/// follows the order given in `keep`).
template <class S>
MultiOp<S> partial_trace(const MultiOp<S>& op, const std::vector<int>& keep);

/// Transpose on the listed subsystems; involution.
template <class S>
MultiOp<S> partial_transpose(const MultiOp<S>& op, const std::vector<int>& which);

/// Reorder subsystems: output system s is input system perm[s].
template <class S>
MultiOp<S> permute_systems(const MultiOp<S>& op, const std::vector<int>& perm);

/// Average over all permutations of the non-fixed subsystems (which must share
/// one dimension): (1/k!) sum_pi V(pi) M V(pi)^dagger. Idempotent, trace- and
/// fixed-marginal-preserving.
template <class S>
MultiOp<S> twirl_symmetric(const MultiOp<S>& op, int fixed);

/// Sum of absolute eigenvalues of a Hermitian operator (float path).
/// Throws std::invalid_argument on non-Hermitian input.
double trace_norm(const CxOp& op);

CxOp to_float(const RatOp& op);
CxOp to_float(const CRatOp& op);

/// Max entrywise |difference| between a float operator and an exact one.
double max_abs_diff(const CxOp& a, const CxOp& b);

}  // namespace vext::tensor
