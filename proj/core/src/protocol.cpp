#include "vext/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vext::protocol {

using nlohmann::json;
using tensor::CxOp;
using tensor::SystemShape;

namespace {

int pow_int(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void check_cap(int required, int cap) {
  int limit = cap > 0 ? cap : problems::dimension_cap();
  if (required > limit) throw problems::CapExceeded(required, limit);
}

Rat dim_sym(int k, int d) { return Rat(repn::ssyt_count(repn::sym(k), d)); }

// Lift of an (A, B_j) operator into (A, B_1..B_k), identity elsewhere.
CxOp lift_ab(const CxOp& x, int j, int dA, int dB, int k) {
  SystemShape shape = [&] {
    std::vector<int> dims{dA};
    for (int s = 0; s < k; ++s) dims.push_back(dB);
    return SystemShape(dims);
  }();
  CxOp out{shape};
  int rest = pow_int(dB, k - 1);
  auto lift = [&](int a, int b, int m) {
    int digits[16];
    for (int s = k - 2; s >= 0; --s) {
      digits[s] = m % dB;
      m /= dB;
    }
    int idx = a, r = 0;
    for (int s = 1; s <= k; ++s) idx = idx * dB + (s == j ? b : digits[r++]);
    return idx;
  };
  for (int u = 0; u < dA * dB; ++u)
    for (int v = 0; v < dA * dB; ++v) {
      Cplx val = x.at(u, v);
      if (val == Cplx(0.0, 0.0)) continue;
      for (int m = 0; m < rest; ++m)
        out.at(lift(u / dB, u % dB, m), lift(v / dB, v % dB, m)) += val;
    }
  return out;
}

}  // namespace

BroadcastProtocol build_optimal_protocol(int d, int k, int cap) {
  if (d < 2 || k < 2) throw std::invalid_argument("build_optimal_protocol: d >= 2, k >= 2");
  check_cap(pow_int(d, k + 1), cap);
  Rat dsk = dim_sym(k, d);
  BroadcastProtocol pr;
  pr.d = d;
  pr.k = k;
  pr.a = Rat(d * d) / dsk;
  pr.b = Rat(d * (k - 1)) / (dsk * (d + k));
  pr.choi_pos =
      projectors::brauer_projector(repn::sym(k), repn::sym(k - 1), d).op.scaled(pr.a);
  pr.choi_neg = projectors::s_ideal_projector(repn::sym(k), k, d).scaled(pr.b);
  pr.p1 = pr.choi_pos.trace() / d;
  pr.p2 = pr.choi_neg.trace() / d;
  pr.target = projectors::psi_unnormalized(d);
  pr.normalized_marginals = false;
  return pr;
}

BroadcastProtocol build_optimal_isotropic(int d, int k, const Rat& r, int cap) {
  if (d < 2 || k < 2) throw std::invalid_argument("build_optimal_isotropic: d >= 2, k >= 2");
  Rat threshold = frac(k + d - 1, k * d);
  if (r <= threshold)
    throw std::invalid_argument(
        "build_optimal_isotropic: r at or below the extendibility threshold; "
        "the cost is zero and any exact extension is the witness");
  if (r > 1) throw std::invalid_argument("build_optimal_isotropic: r <= 1");
  check_cap(pow_int(d, k + 1), cap);
  Rat dsk = dim_sym(k, d);
  BroadcastProtocol pr;
  pr.d = d;
  pr.k = k;
  pr.a = d * r / dsk;
  pr.b = (r * k * d - (k + d - 1)) / (k * d - (k + d - 1)) * Rat(k - 1) /
         (dsk * (k + d));
  pr.choi_pos =
      projectors::brauer_projector(repn::sym(k), repn::sym(k - 1), d).op.scaled(pr.a);
  pr.choi_neg = projectors::s_ideal_projector(repn::sym(k), k, d).scaled(pr.b);
  pr.p1 = pr.choi_pos.trace();
  pr.p2 = pr.choi_neg.trace();
  pr.target = *states::isotropic(d, r).exact;
  pr.normalized_marginals = true;
  return pr;
}

MarginalReport verify_marginals(const BroadcastProtocol& proto) {
  MarginalReport rep;
  auto record = [&](const tensor::RatOp& diff, int j) {
    Rat local = 0;
    for (int i = 0; i < diff.dim(); ++i)
      for (int c = 0; c < diff.dim(); ++c) {
        Rat v = abs(diff.at(i, c));
        if (v > local) local = v;
      }
    if (local > 0) {
      rep.pass = false;
      rep.failed_j.push_back(j);
      if (local > rep.max_residual) rep.max_residual = local;
    }
  };

  int d = proto.d, k = proto.k;
  tensor::RatOp j_op = proto.choi_pos - proto.choi_neg;
  for (int j = 1; j <= k; ++j) {
    // systems are (B_1..B_k, A); keep (B_j, A)
    tensor::RatOp marg = partial_trace(j_op, std::vector<int>{j - 1, k});
    record(marg - proto.target, j);
  }
  tensor::RatOp ia = tensor::RatOp::identity(SystemShape{d});
  Rat f1 = proto.choi_pos.trace() / d;
  Rat f2 = proto.choi_neg.trace() / d;
  record(partial_trace(proto.choi_pos, std::vector<int>{k}) - ia.scaled(f1), 0);
  record(partial_trace(proto.choi_neg, std::vector<int>{k}) - ia.scaled(f2), 0);
  // the advertised weights must be consistent with those traces
  Rat q1 = proto.normalized_marginals ? Rat(proto.p1 / d) : proto.p1;
  Rat q2 = proto.normalized_marginals ? Rat(proto.p2 / d) : proto.p2;
  if (f1 != q1 || f2 != q2) {
    rep.pass = false;
    rep.failed_j.push_back(0);
  }
  return rep;
}

DualPointReport verify_dual_point(int d, int k, double x_scale) {
  DualPointReport rep;
  CxOp phi = states::max_entangled(d).op;
  CxOp x{SystemShape{d, d}};
  double c_phi = 2.0 / (d * (k + d - 1.0)), c_id = 1.0 / (k * d);
  for (int i = 0; i < d * d; ++i) {
    for (int j = 0; j < d * d; ++j) x.at(i, j) = c_phi * d * phi.at(i, j);
    x.at(i, i) -= c_id;
  }
  if (x_scale != 1.0)
    for (int i = 0; i < d * d; ++i)
      for (int j = 0; j < d * d; ++j) x.at(i, j) *= x_scale;

  SystemShape full = [&] {
    std::vector<int> dims{d};
    for (int s = 0; s < k; ++s) dims.push_back(d);
    return SystemShape(dims);
  }();
  CxOp minus = CxOp::identity(full).scaled(Cplx(1.0 / d, 0.0));
  CxOp plus = minus;
  for (int j = 1; j <= k; ++j) {
    CxOp lifted = lift_ab(x, j, d, d, k);
    minus = minus - lifted;
    plus = plus + lifted;
  }
  rep.tr_z = rep.tr_k = 1.0;
  rep.min_eig_minus = solver::min_eigenvalue(minus);
  rep.min_eig_plus = solver::min_eigenvalue(plus);
  rep.feasible = rep.tr_z <= 1.0 + 1e-12 && rep.tr_k <= 1.0 + 1e-12 &&
                 rep.min_eig_minus >= -1e-10 && rep.min_eig_plus >= -1e-10;
  return rep;
}

CostCertificate certify(const states::DensityMatrix& rho, int k,
                        const solver::SolveOptions& opts) {
  CostCertificate cert;
  cert.state = rho.name.empty() ? "custom" : rho.name;
  cert.k = k;
  solver::SdpProblem prob = problems::build_eta_primal(rho, k);
  solver::SdpSolution sol = solver::solve(prob, opts);
  cert.status = sol.status;
  cert.iterations = sol.iterations;
  cert.primal_value = sol.reported(prob);

  int dA = rho.shape().dims[0], dB = rho.shape().dims[1];
  int D = dA * pow_int(dB, k);
  SystemShape full = [&] {
    std::vector<int> dims{dA};
    for (int s = 0; s < k; ++s) dims.push_back(dB);
    return SystemShape(dims);
  }();
  bool embedded = prob.block_dims[0] == 2 * D;
  auto unembed = [&](const Eigen::MatrixXd& m) {
    CxOp out{full};
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j)
        out.at(i, j) = embedded
                           ? Cplx(0.5 * (m(i, j) + m(D + i, D + j)),
                                  0.5 * (m(D + i, j) - m(i, D + j)))
                           : Cplx(m(i, j), 0.0);
    return out;
  };
  cert.P = unembed(sol.X[0]);
  cert.Q = unembed(sol.X[1]);
  cert.X = problems::eta_dual_witness(rho, k, sol.y);

  double dual_val = 0.0;
  for (const auto& xj : cert.X) {
    Cplx t = 0.0;
    for (int i = 0; i < xj.dim(); ++i)
      for (int j = 0; j < xj.dim(); ++j) t += xj.at(i, j) * rho.op.at(j, i);
    dual_val += t.real();
  }
  cert.dual_value = dual_val;
  cert.gap = cert.primal_value - cert.dual_value;

  // primal marginal residuals of P - Q against rho
  CxOp diff = cert.P - cert.Q;
  double res = 0.0;
  for (int j = 1; j <= k; ++j) {
    std::vector<int> keep{0, j};
    CxOp marg = partial_trace(diff, keep);
    res = std::max(res, max_abs_diff(marg, rho.op));
  }
  cert.marginal_residual = res;

  CxOp minus = CxOp::identity(full);
  CxOp plus = minus;
  for (int j = 1; j <= k; ++j) {
    CxOp lifted = lift_ab(cert.X[j - 1], j, dA, dB, k);
    minus = minus - lifted;
    plus = plus + lifted;
  }
  cert.dual_min_eig_minus = solver::min_eigenvalue(minus);
  cert.dual_min_eig_plus = solver::min_eigenvalue(plus);
  return cert;
}

namespace {
json op_entries(const CxOp& op) {
  json entries = json::array();
  for (int r = 0; r < op.dim(); ++r)
    for (int c = 0; c < op.dim(); ++c) {
      Cplx v = op.at(r, c);
      if (v == Cplx(0.0, 0.0)) continue;
      entries.push_back({r, c, v.real(), v.imag()});
    }
  return entries;
}
}  // namespace

std::string to_json(const CostCertificate& cert) {
  json j;
  j["schema_version"] = 1;
  j["state"] = cert.state;
  j["k"] = cert.k;
  j["primal_value"] = cert.primal_value;
  j["dual_value"] = cert.dual_value;
  j["gap"] = cert.gap;
  j["marginal_residual"] = cert.marginal_residual;
  j["dual_min_eig_minus"] = cert.dual_min_eig_minus;
  j["dual_min_eig_plus"] = cert.dual_min_eig_plus;
  j["iterations"] = cert.iterations;
  j["status"] = static_cast<int>(cert.status);
  j["P"] = {{"dims", cert.P.shape().dims}, {"entries", op_entries(cert.P)}};
  j["Q"] = {{"dims", cert.Q.shape().dims}, {"entries", op_entries(cert.Q)}};
  json xs = json::array();
  for (const auto& x : cert.X)
    xs.push_back({{"dims", x.shape().dims}, {"entries", op_entries(x)}});
  j["X"] = std::move(xs);
  return j.dump(2);
}

}  // namespace vext::protocol
