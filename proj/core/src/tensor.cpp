#include "vext/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "vext/solver.hpp"

namespace vext::tensor {

template <class S>
MultiOp<S> permutation_op(const SystemShape& shape, const repn::Permutation& sigma) {
  int n = shape.count();
  if (sigma.size() != n)
    throw std::invalid_argument("permutation size must match subsystem count");
  for (int s = 1; s < n; ++s)
    if (shape.dims[s] != shape.dims[0])
      throw std::invalid_argument("permutation_op needs equal local dims");
  MultiOp<S> r(shape);
  std::vector<int> in(n), out(n);
  for (int col = 0; col < r.dim(); ++col) {
    shape.decode(col, in);
    // output digit at slot s is the input digit at slot sigma^{-1}(s),
    // i.e. digit j of the input moves to slot sigma(j)
    for (int j = 0; j < n; ++j) out[sigma(j)] = in[j];
    r.at(shape.encode(out), col) = S(1);
  }
  return r;
}

template <class S>
MultiOp<S> partial_trace(const MultiOp<S>& op, const std::vector<int>& keep) {
  const auto& shape = op.shape();
  int n = shape.count();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> kept(n, false);
  std::vector<int> kd;
  for (int s : keep) {
    if (s < 0 || s >= n || kept[s])
      throw std::invalid_argument("partial_trace: bad keep index");
    kept[s] = true;
    kd.push_back(shape.dims[s]);
  }
  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (!kept[s]) traced.push_back(s);
  SystemShape out_shape(kd);
  SystemShape tr_shape;
  for (int s : traced) tr_shape.dims.push_back(shape.dims[s]);
  int tr_total = tr_shape.total();

  MultiOp<S> r(out_shape);
  std::vector<int> row(n), col(n), kr(keep.size()), kc(keep.size()), td;
  for (int a = 0; a < r.dim(); ++a) {
    out_shape.decode(a, kr);
    for (int b = 0; b < r.dim(); ++b) {
      out_shape.decode(b, kc);
      S acc(0);
      for (int t = 0; t < tr_total; ++t) {
        tr_shape.decode(t, td);
        for (size_t i = 0; i < keep.size(); ++i) {
          row[keep[i]] = kr[i];
          col[keep[i]] = kc[i];
        }
        for (size_t i = 0; i < traced.size(); ++i) {
          row[traced[i]] = td[i];
          col[traced[i]] = td[i];
        }
        acc += op.at(shape.encode(row), shape.encode(col));
      }
      r.at(a, b) = acc;
    }
  }
  return r;
}

template <class S>
MultiOp<S> partial_transpose(const MultiOp<S>& op, const std::vector<int>& which) {
  const auto& shape = op.shape();
  int n = shape.count();
  std::vector<bool> flip(n, false);
  for (int s : which) {
    if (s < 0 || s >= n) throw std::invalid_argument("partial_transpose: bad index");
    flip[s] = true;
  }
  MultiOp<S> r(shape);
  std::vector<int> row(n), col(n);
  for (int i = 0; i < op.dim(); ++i) {
    shape.decode(i, row);
    for (int j = 0; j < op.dim(); ++j) {
      shape.decode(j, col);
      std::vector<int> ri(row), ci(col);
      for (int s = 0; s < n; ++s)
        if (flip[s]) std::swap(ri[s], ci[s]);
      r.at(shape.encode(ri), shape.encode(ci)) = op.at(i, j);
    }
  }
  return r;
}

template <class S>
MultiOp<S> permute_systems(const MultiOp<S>& op, const std::vector<int>& perm) {
  const auto& shape = op.shape();
  int n = shape.count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_systems: size mismatch");
  std::vector<int> od(n);
  for (int s = 0; s < n; ++s) od[s] = shape.dims[perm[s]];
  SystemShape out_shape(od);
  MultiOp<S> r(out_shape);
  std::vector<int> row(n), col(n), orow(n), ocol(n);
  for (int i = 0; i < op.dim(); ++i) {
    shape.decode(i, row);
    for (int j = 0; j < op.dim(); ++j) {
      shape.decode(j, col);
      for (int s = 0; s < n; ++s) {
        orow[s] = row[perm[s]];
        ocol[s] = col[perm[s]];
      }
      r.at(out_shape.encode(orow), out_shape.encode(ocol)) = op.at(i, j);
    }
  }
  return r;
}

template <class S>
MultiOp<S> twirl_symmetric(const MultiOp<S>& op, int fixed) {
  const auto& shape = op.shape();
  int n = shape.count();
  if (fixed < 0 || fixed >= n) throw std::invalid_argument("twirl: bad fixed index");
  std::vector<int> bsys;
  for (int s = 0; s < n; ++s)
    if (s != fixed) bsys.push_back(s);
  for (size_t i = 1; i < bsys.size(); ++i)
    if (shape.dims[bsys[i]] != shape.dims[bsys[0]])
      throw std::invalid_argument("twirl: B systems must share one dimension");
  int k = static_cast<int>(bsys.size());
  auto perms = repn::all_permutations(k);
  MultiOp<S> acc = MultiOp<S>::zero(shape);
  for (const auto& pi : perms) {
    // lift pi on the B slots to a permutation of all n systems fixing `fixed`
    std::vector<int> full(n);
    full[fixed] = fixed;
    for (int i = 0; i < k; ++i) full[bsys[pi(i)]] = bsys[i];
    // permute_systems with perm[s] = source system for output slot s realizes
    // V(pi) M V(pi)^dagger
    acc = acc + permute_systems(op, full);
  }
  long fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  return acc.scaled(S(1) / S(fact));
}

double trace_norm(const CxOp& op) {
  auto eig = solver::hermitian_eigen(op);
  double s = 0;
  for (double v : eig.values) s += std::abs(v);
  return s;
}

CxOp to_float(const RatOp& op) {
  CxOp r(op.shape());
  for (int i = 0; i < op.dim(); ++i)
    for (int j = 0; j < op.dim(); ++j) r.at(i, j) = to_cplx(op.at(i, j));
  return r;
}

CxOp to_float(const CRatOp& op) {
  CxOp r(op.shape());
  for (int i = 0; i < op.dim(); ++i)
    for (int j = 0; j < op.dim(); ++j) r.at(i, j) = to_cplx(op.at(i, j));
  return r;
}

double max_abs_diff(const CxOp& a, const CxOp& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("shape mismatch");
  double m = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
  return m;
}

template MultiOp<Rat> permutation_op<Rat>(const SystemShape&, const repn::Permutation&);
template MultiOp<CRat> permutation_op<CRat>(const SystemShape&, const repn::Permutation&);
template MultiOp<Cplx> permutation_op<Cplx>(const SystemShape&, const repn::Permutation&);
template MultiOp<Rat> partial_trace<Rat>(const MultiOp<Rat>&, const std::vector<int>&);
template MultiOp<CRat> partial_trace<CRat>(const MultiOp<CRat>&, const std::vector<int>&);
template MultiOp<Cplx> partial_trace<Cplx>(const MultiOp<Cplx>&, const std::vector<int>&);
template MultiOp<Rat> partial_transpose<Rat>(const MultiOp<Rat>&, const std::vector<int>&);
template MultiOp<CRat> partial_transpose<CRat>(const MultiOp<CRat>&, const std::vector<int>&);
template MultiOp<Cplx> partial_transpose<Cplx>(const MultiOp<Cplx>&, const std::vector<int>&);
template MultiOp<Rat> permute_systems<Rat>(const MultiOp<Rat>&, const std::vector<int>&);
template MultiOp<CRat> permute_systems<CRat>(const MultiOp<CRat>&, const std::vector<int>&);
template MultiOp<Cplx> permute_systems<Cplx>(const MultiOp<Cplx>&, const std::vector<int>&);
template MultiOp<Rat> twirl_symmetric<Rat>(const MultiOp<Rat>&, int);
template MultiOp<CRat> twirl_symmetric<CRat>(const MultiOp<CRat>&, int);
template MultiOp<Cplx> twirl_symmetric<Cplx>(const MultiOp<Cplx>&, int);

}  // namespace vext::tensor
