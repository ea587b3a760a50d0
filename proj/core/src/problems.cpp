#include "vext/problems.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "vext/projectors.hpp"

namespace vext::problems {

using solver::SdpConstraint;
using solver::SdpEntry;
using tensor::SystemShape;

int dimension_cap() {
  if (const char* env = std::getenv("VEXT_DIM_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 256;
}

CapExceeded::CapExceeded(int required, int cap)
    : std::runtime_error("problem block dimension " + std::to_string(required) +
                         " exceeds the cap " + std::to_string(cap) +
                         " (raise VEXT_DIM_CAP to allow)"),
      required(required),
      cap(cap) {}

namespace {

void check_cap(int required, int cap) {
  int limit = cap > 0 ? cap : dimension_cap();
  if (required > limit) throw CapExceeded(required, limit);
}

bool has_imag(const tensor::CxOp& op) {
  for (int i = 0; i < op.dim(); ++i)
    for (int j = 0; j < op.dim(); ++j)
      if (std::abs(op.at(i, j).imag()) > 1e-14) return true;
  return false;
}

// Lowers complex Hermitian coefficient data to the solver's real symmetric
// blocks. With embed=false all data must be real and maps through unchanged;
// with embed=true each block of dimension n becomes the 2n-dimensional real
// embedding [[Re,-Im],[Im,Re]], inner products double, and the caller doubles
// rhs values and sets scale = 0.5.
struct Lowerer {
  bool embed = false;
  std::vector<int> orig_dims;

  std::vector<int> block_dims() const {
    std::vector<int> out;
    for (int d : orig_dims) out.push_back(embed ? 2 * d : d);
    return out;
  }

  void add(std::vector<SdpEntry>& out, int block, int i, int j, Cplx v) const {
    if (std::abs(v) < 1e-300) return;
    if (i > j) {
      std::swap(i, j);
      v = std::conj(v);
    }
    if (!embed) {
      out.push_back({block, i, j, v.real()});
      return;
    }
    int n = orig_dims[block];
    if (v.real() != 0.0) {
      out.push_back({block, i, j, v.real()});
      out.push_back({block, n + i, n + j, v.real()});
    }
    if (v.imag() != 0.0) {
      out.push_back({block, i, n + j, -v.imag()});
      out.push_back({block, j, n + i, v.imag()});
    }
  }

  double rhs(double v) const { return embed ? 2.0 * v : v; }
  double scale() const { return embed ? 0.5 : 1.0; }
};

// Hermitian matrix-unit basis element on a space of dimension m: pair
// (u, v) with u <= v plus a flavor, re: E_uv + E_vu (u < v), im:
// i E_uv - i E_vu (u < v), or the diagonal unit E_uu (u == v).
struct BasisElt {
  int u, v;
  bool im;
  Cplx val() const { return im ? Cplx(0, 1) : Cplx(1, 0); }
};

template <class F>
void for_each_basis(int m, bool include_imag, F&& f) {
  for (int u = 0; u < m; ++u) {
    f(BasisElt{u, u, false});
    for (int v = u + 1; v < m; ++v) {
      f(BasisElt{u, v, false});
      if (include_imag) f(BasisElt{u, v, true});
    }
  }
}

// tr[H rho] for a basis element H.
double pair_target(const BasisElt& e, const tensor::CxOp& rho) {
  Cplx x = rho.at(e.u, e.v);
  if (e.u == e.v) return x.real();
  return e.im ? 2.0 * x.imag() : 2.0 * x.real();
}

// Index of |a>|b_1..b_k> on A B^k where slot j (1-based) holds b and the
// remaining k-1 B slots hold the digits of m (base dB, row-major).
int lift_index(int a, int b, int j, int m, int dB, int k) {
  int idx = a;
  std::vector<int> rest(k - 1);
  for (int s = k - 2; s >= 0; --s) {
    rest[s] = m % dB;
    m /= dB;
  }
  int r = 0;
  for (int s = 1; s <= k; ++s)
    idx = idx * dB + (s == j ? b : rest[r++]);
  return idx;
}

struct Bipartite {
  int dA, dB;
};

Bipartite bipartite_dims(const DensityMatrix& rho) {
  if (rho.shape().count() != 2 || rho.cut != std::vector<int>{0})
    throw std::invalid_argument(
        "builder: state must be bipartite with A = first subsystem");
  return {rho.shape().dims[0], rho.shape().dims[1]};
}

int pow_int(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Adds to `out` the lift of basis element e (on AB) to systems (A, B_j) of
// A B^k, on the given block, with an overall sign.
void add_lifted(const Lowerer& low, std::vector<SdpEntry>& out, int block,
                const BasisElt& e, int j, int dA, int dB, int k, double sign) {
  int au = e.u / dB, bu = e.u % dB;
  int av = e.v / dB, bv = e.v % dB;
  int rest = pow_int(dB, k - 1);
  for (int m = 0; m < rest; ++m) {
    int row = lift_index(au, bu, j, m, dB, k);
    int col = lift_index(av, bv, j, m, dB, k);
    low.add(out, block, row, col, sign * e.val());
  }
}

}  // namespace

SdpProblem build_eta_primal(const DensityMatrix& rho, int k, int cap) {
  auto [dA, dB] = bipartite_dims(rho);
  if (k < 1) throw std::invalid_argument("build_eta_primal: k >= 1");
  int D = dA * pow_int(dB, k);
  check_cap(D, cap);

  Lowerer low{has_imag(rho.op), {D, D}};
  SdpProblem p;
  p.block_dims = low.block_dims();
  p.scale = low.scale();
  p.description = "eta-primal k=" + std::to_string(k) + " dA=" +
                  std::to_string(dA) + " dB=" + std::to_string(dB);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < D; ++i) low.add(p.objective, b, i, i, 1.0);
  for (int j = 1; j <= k; ++j) {
    for_each_basis(dA * dB, low.embed, [&](const BasisElt& e) {
      SdpConstraint c;
      add_lifted(low, c.coeff, 0, e, j, dA, dB, k, 1.0);
      add_lifted(low, c.coeff, 1, e, j, dA, dB, k, -1.0);
      c.rhs = low.rhs(pair_target(e, rho.op));
      p.constraints.push_back(std::move(c));
    });
  }
  return p;
}

SdpProblem build_eta_dual(const DensityMatrix& rho, int k, int cap) {
  auto [dA, dB] = bipartite_dims(rho);
  if (k < 1) throw std::invalid_argument("build_eta_dual: k >= 1");
  int D = dA * pow_int(dB, k);
  check_cap(D, cap);
  int dAB = dA * dB;

  // blocks: U_1..U_k, V_1..V_k (X_j = U_j - V_j), then the slack
  // S = I - sum_j X_j (x) I.
  Lowerer low{has_imag(rho.op), {}};
  for (int j = 0; j < 2 * k; ++j) low.orig_dims.push_back(dAB);
  low.orig_dims.push_back(D);
  int slack = 2 * k;

  SdpProblem p;
  p.block_dims = low.block_dims();
  // raw objective is min -sum_j tr[X_j rho]; report the maximum.
  p.scale = -low.scale();
  p.description = "eta-dual k=" + std::to_string(k) + " dA=" +
                  std::to_string(dA) + " dB=" + std::to_string(dB);
  for (int j = 0; j < k; ++j)
    for (int u = 0; u < dAB; ++u)
      for (int v = u; v < dAB; ++v) {
        Cplx r = rho.op.at(u, v);
        low.add(p.objective, j, u, v, -r);
        low.add(p.objective, k + j, u, v, r);
      }

  SystemShape shape = [&] {
    std::vector<int> dims{dA};
    for (int j = 0; j < k; ++j) dims.push_back(dB);
    return SystemShape(dims);
  }();
  std::vector<int> du(k + 1), dv(k + 1);
  for_each_basis(D, low.embed, [&](const BasisElt& e) {
    SdpConstraint c;
    low.add(c.coeff, slack, e.u, e.v, e.val());
    shape.decode(e.u, du);
    shape.decode(e.v, dv);
    for (int j = 1; j <= k; ++j) {
      bool match = true;
      for (int s = 1; s <= k && match; ++s)
        if (s != j && du[s] != dv[s]) match = false;
      if (!match) continue;
      int ru = du[0] * dB + du[j], rv = dv[0] * dB + dv[j];
      low.add(c.coeff, j - 1, ru, rv, e.val());
      low.add(c.coeff, k + j - 1, ru, rv, -e.val());
    }
    c.rhs = low.rhs(e.u == e.v ? 1.0 : 0.0);
    p.constraints.push_back(std::move(c));
  });
  return p;
}

std::vector<tensor::CxOp> eta_dual_witness(const DensityMatrix& rho, int k,
                                           const Eigen::VectorXd& y) {
  auto [dA, dB] = bipartite_dims(rho);
  bool embed = has_imag(rho.op);
  std::vector<tensor::CxOp> xs(k, tensor::CxOp{SystemShape{dA, dB}});
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    for_each_basis(dA * dB, embed, [&](const BasisElt& e) {
      double w = y[idx++];
      if (w != 0.0) {
        Cplx v = w * e.val();
        xs[j].at(e.u, e.v) += v;
        if (e.u != e.v) xs[j].at(e.v, e.u) += std::conj(v);
      }
    });
  }
  return xs;
}

SdpProblem build_rob_absolute(const DensityMatrix& rho, int k, int cap) {
  auto [dA, dB] = bipartite_dims(rho);
  if (k < 1) throw std::invalid_argument("build_rob_absolute: k >= 1");
  int D = dA * pow_int(dB, k);
  check_cap(D, cap);

  Lowerer low{has_imag(rho.op), {D, D}};
  SdpProblem p;
  p.block_dims = low.block_dims();
  p.scale = low.scale();
  p.description = "rob-absolute k=" + std::to_string(k);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < D; ++i) low.add(p.objective, b, i, i, 1.0);

  for_each_basis(dA * dB, low.embed, [&](const BasisElt& e) {
    // equal AB_j marginals, each of M+, M- separately
    for (int j = 2; j <= k; ++j)
      for (int b = 0; b < 2; ++b) {
        SdpConstraint c;
        add_lifted(low, c.coeff, b, e, j, dA, dB, k, 1.0);
        add_lifted(low, c.coeff, b, e, 1, dA, dB, k, -1.0);
        c.rhs = 0.0;
        p.constraints.push_back(std::move(c));
      }
    // marginal difference reproduces rho
    SdpConstraint c;
    add_lifted(low, c.coeff, 0, e, 1, dA, dB, k, 1.0);
    add_lifted(low, c.coeff, 1, e, 1, dA, dB, k, -1.0);
    c.rhs = low.rhs(pair_target(e, rho.op));
    p.constraints.push_back(std::move(c));
  });
  return p;
}

SdpProblem build_rob_global(const DensityMatrix& rho, int k, int cap) {
  auto [dA, dB] = bipartite_dims(rho);
  if (k < 1) throw std::invalid_argument("build_rob_global: k >= 1");
  int D = dA * pow_int(dB, k);
  check_cap(D, cap);
  int dAB = dA * dB;

  Lowerer low{has_imag(rho.op), {D, dAB}};  // T and the dominance slack
  SdpProblem p;
  p.block_dims = low.block_dims();
  p.scale = low.scale();
  p.offset = -1.0;
  p.description = "rob-global k=" + std::to_string(k);
  for (int i = 0; i < D; ++i) low.add(p.objective, 0, i, i, 1.0);

  for_each_basis(dAB, low.embed, [&](const BasisElt& e) {
    for (int j = 2; j <= k; ++j) {
      SdpConstraint c;
      add_lifted(low, c.coeff, 0, e, j, dA, dB, k, 1.0);
      add_lifted(low, c.coeff, 0, e, 1, dA, dB, k, -1.0);
      c.rhs = 0.0;
      p.constraints.push_back(std::move(c));
    }
    SdpConstraint c;
    add_lifted(low, c.coeff, 0, e, 1, dA, dB, k, 1.0);
    low.add(c.coeff, 1, e.u, e.v, -e.val());
    c.rhs = low.rhs(pair_target(e, rho.op));
    p.constraints.push_back(std::move(c));
  });
  return p;
}

SdpProblem build_broadcast_reduced(int d, int k, int cap) {
  if (d < 2 || k < 1) throw std::invalid_argument("build_broadcast_reduced: d >= 2, k >= 1");
  check_cap(pow_int(d, k + 1), cap);

  // Basis of invariant PSD operators on B_1..B_k A: the F_mu(alpha)
  // projectors and the complementary-ideal projectors P^mu_S. Each Choi
  // operator is a nonnegative combination, giving an LP with variable pairs
  // (coefficient in J1, coefficient in J2) as 1x1 blocks.
  std::vector<tensor::RatOp> basis;
  for (const auto& alpha : repn::partitions(k - 1, d))
    for (const auto& mu : repn::grow(alpha, d))
      basis.push_back(projectors::brauer_projector(mu, alpha, d).op);
  for (const auto& mu : repn::partitions(k, d)) {
    tensor::RatOp op = projectors::s_ideal_projector(mu, k, d);
    if (!op.is_zero_op()) basis.push_back(std::move(op));
  }

  int nb = static_cast<int>(basis.size());
  std::vector<tensor::RatOp> marg;
  std::vector<double> tr_over_d;
  for (const auto& op : basis) {
    marg.push_back(partial_trace(op, std::vector<int>{0, k}));  // keep (B_1, A)
    tr_over_d.push_back((op.trace() / d).get_d());
  }

  SdpProblem p;
  p.description = "broadcast-reduced d=" + std::to_string(d) + " k=" + std::to_string(k);
  p.block_dims.assign(2 * nb, 1);
  for (int e = 0; e < 2 * nb; ++e)
    p.objective.push_back({e, 0, 0, tr_over_d[e % nb]});

  tensor::RatOp psi = projectors::psi_unnormalized(d);
  for_each_basis(d * d, false, [&](const BasisElt& be) {
    SdpConstraint c;
    for (int e = 0; e < nb; ++e) {
      Rat m = marg[e].at(be.u, be.v);
      if (be.u != be.v) m *= 2;
      double v = m.get_d();
      if (v == 0.0) continue;
      c.coeff.push_back({e, 0, 0, v});
      c.coeff.push_back({nb + e, 0, 0, -v});
    }
    Rat t = psi.at(be.u, be.v);
    if (be.u != be.v) t *= 2;
    c.rhs = t.get_d();
    p.constraints.push_back(std::move(c));
  });
  return p;
}

}  // namespace vext::problems
