#include "vext/circuit.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vext/projectors.hpp"
#include "vext/solver.hpp"

namespace vext::circuit {

using nlohmann::json;
using tensor::SystemShape;

namespace {

int pow_int(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_cap(long required, int cap) {
  int limit = cap > 0 ? cap : problems::dimension_cap();
  if (required > limit)
    throw problems::CapExceeded(static_cast<int>(required), limit);
}

}  // namespace

CircuitSpec lcu_symmetric_projector(int k, int d, int cap) {
  if (k < 1 || d < 2) throw std::invalid_argument("lcu: k >= 1, d >= 2");
  long nfact = factorial(k);
  check_cap(pow_int(d, k), cap);
  CircuitSpec spec;
  spec.k = k;
  spec.d = d;
  spec.m = 1;
  while (spec.m < nfact) spec.m *= 2;
  spec.controlled = repn::all_permutations(k);

  // Householder reflection sending |0> to the uniform superposition u over
  // the first k! levels: W = I - 2 vv^T with v prop. to e0 - u.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(spec.m);
  for (long j = 0; j < nfact; ++j) u[j] = 1.0 / std::sqrt(double(nfact));
  Eigen::VectorXd v = -u;
  v[0] += 1.0;
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(spec.m, spec.m);
  double nv = v.norm();
  if (nv > 1e-14) {
    v /= nv;
    w -= 2.0 * v * v.transpose();
  }
  spec.w = w.cast<Cplx>();
  return spec;
}

std::vector<CxOp> kraus_operators(const CircuitSpec& spec) {
  SystemShape shape = SystemShape::uniform(spec.k, spec.d);
  long nfact = static_cast<long>(spec.controlled.size());
  // K_a = sum_j conj(W_{ja}) W_{j0} V(sigma_j), with SELECT acting as the
  // identity on the unused ancilla levels j >= k!.
  std::vector<CxOp> ks;
  ks.reserve(spec.m);
  std::vector<int> in(spec.k), out(spec.k);
  for (int a = 0; a < spec.m; ++a) {
    CxOp kop{shape};
    Cplx id_coeff = 0.0;
    for (int j = static_cast<int>(nfact); j < spec.m; ++j)
      id_coeff += std::conj(spec.w(j, a)) * spec.w(j, 0);
    for (int i = 0; i < kop.dim(); ++i) kop.at(i, i) = id_coeff;
    for (long j = 0; j < nfact; ++j) {
      Cplx c = std::conj(spec.w(j, a)) * spec.w(j, 0);
      if (std::abs(c) < 1e-300) continue;
      const auto& sigma = spec.controlled[j];
      for (int col = 0; col < kop.dim(); ++col) {
        shape.decode(col, in);
        for (int s = 0; s < spec.k; ++s) out[sigma(s)] = in[s];
        kop.at(shape.encode(out), col) += c;
      }
    }
    ks.push_back(std::move(kop));
  }
  return ks;
}

CxOp block_encoding(const CircuitSpec& spec) {
  return kraus_operators(spec)[spec.postselect];
}

double success_probability(const CircuitSpec& spec, const std::vector<Cplx>& psi) {
  CxOp p = block_encoding(spec);
  if (static_cast<int>(psi.size()) != p.dim())
    throw std::invalid_argument("success_probability: dimension mismatch");
  Cplx val = 0.0;
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j)
      val += std::conj(psi[i]) * p.at(i, j) * psi[j];
  return val.real();
}

RealizedChoi realize_Lambda(int k, int d, int cap) {
  check_cap(pow_int(d, k + 1), cap);
  CircuitSpec spec = lcu_symmetric_projector(k, d, cap);
  CxOp block = block_encoding(spec);

  int Dk = pow_int(d, k), rest = pow_int(d, k - 1);
  // Lambda(X) = B (X ox (I/d)^(k-1)) B^dag for the success branch B;
  // Choi assembled on (A, B_1..B_k) from matrix-unit inputs, then A is moved
  // to the back to match the projector layout.
  SystemShape choi_shape = SystemShape::uniform(k + 1, d);
  CxOp choi{choi_shape};
  double mix = 1.0 / rest;
  for (int ain = 0; ain < d; ++ain)
    for (int aout = 0; aout < d; ++aout) {
      // Lambda(E_{ain,aout}) = mix * B (E ox I) B^dag
      for (int r = 0; r < Dk; ++r)
        for (int c = 0; c < Dk; ++c) {
          Cplx v = 0.0;
          for (int m = 0; m < rest; ++m)
            v += block.at(r, ain * rest + m) * std::conj(block.at(c, aout * rest + m));
          v *= mix;
          if (v == Cplx(0.0, 0.0)) continue;
          choi.at((ain * Dk + r) /* (A, B^k) */, aout * Dk + c) += v;
        }
    }
  // reorder (A, B_1..B_k) -> (B_1..B_k, A)
  std::vector<int> perm(k + 1);
  for (int s = 0; s < k; ++s) perm[s] = s + 1;
  perm[k] = 0;
  CxOp reordered = permute_systems(choi, perm);

  tensor::RatOp f =
      projectors::brauer_projector(repn::sym(k), repn::sym(k - 1), d).op;
  RealizedChoi out{std::move(reordered), 0.0};
  out.scalar = out.choi.trace().real() / f.trace().get_d();
  return out;
}

RealizedChoi realize_Gamma(int k, int d, int cap) {
  RealizedChoi lam = realize_Lambda(k, d, cap);
  // systems are (B_1..B_k, A); trace out B_k
  std::vector<int> keep;
  for (int s = 0; s < k - 1; ++s) keep.push_back(s);
  keep.push_back(k);
  CxOp traced = partial_trace(lam.choi, keep);
  tensor::RatOp p = projectors::young_projector(repn::sym(k), k, d).op;
  RealizedChoi out{std::move(traced), 0.0};
  out.scalar = out.choi.trace().real() / p.trace().get_d();
  return out;
}

namespace {

// N(rho) for a Choi operator J on (B_1..B_k, A) with the transposed input
// system last: N(rho) = tr_A[J (I ox rho^T)].
CxOp apply_choi(const CxOp& j_op, const CxOp& rho) {
  int k1 = j_op.shape().count();
  int d = j_op.shape().dims[k1 - 1];
  int Dk = j_op.dim() / d;
  CxOp out{SystemShape{std::vector<int>(j_op.shape().dims.begin(),
                                        j_op.shape().dims.end() - 1)}};
  for (int r = 0; r < Dk; ++r)
    for (int c = 0; c < Dk; ++c) {
      Cplx v = 0.0;
      for (int a = 0; a < d; ++a)
        for (int a2 = 0; a2 < d; ++a2)
          v += j_op.at(r * d + a, c * d + a2) * rho.at(a2, a);
      out.at(r, c) = v;
    }
  return out;
}

}  // namespace

QuasiprobEstimate estimate_virtual_broadcast(const CxOp& rho, const CxOp& obs,
                                             int k, long samples,
                                             std::uint64_t seed) {
  if (rho.shape().count() != 1)
    throw std::invalid_argument("estimate: rho must be a single-system state");
  int d = rho.shape().dims[0];
  if (obs.dim() != d) throw std::invalid_argument("estimate: observable dimension");
  if (!obs.is_hermitian(1e-10))
    throw std::invalid_argument("estimate: observable must be Hermitian");

  protocol::BroadcastProtocol proto = protocol::build_optimal_protocol(d, k);
  double p1 = proto.p1.get_d(), p2 = proto.p2.get_d();

  // exact outputs of the two CPTN branches; normalize to CPTP by p_i
  CxOp out1 = apply_choi(to_float(proto.choi_pos), rho);
  CxOp out2 = apply_choi(to_float(proto.choi_neg), rho);
  std::vector<int> keep{0};
  CxOp m1 = partial_trace(out1, keep);
  CxOp m2 = partial_trace(out2, keep);

  auto expect = [&](const CxOp& m) {
    Cplx v = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) v += obs.at(i, j) * m.at(j, i);
    return v.real();
  };
  double e1 = expect(m1) / p1, e2 = expect(m2) / p2;

  QuasiprobEstimate est;
  est.exact_value = p1 * e1 - p2 * e2;
  est.branch_pos = e1;
  est.branch_neg = e2;
  est.p1 = p1;
  est.p2 = p2;
  est.samples = samples;

  // outcome distributions of obs on each normalized branch output
  solver::EigenResult eig = solver::hermitian_eigen(obs);
  auto outcome_probs = [&](const CxOp& m, double p) {
    std::vector<double> q(d, 0.0);
    for (int t = 0; t < d; ++t) {
      Cplx v = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          v += std::conj(eig.vectors(i, t)) * m.at(i, j) * eig.vectors(j, t);
      q[t] = std::max(0.0, v.real() / p);
    }
    return q;
  };
  std::vector<double> q1 = outcome_probs(m1, p1), q2 = outcome_probs(m2, p2);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double total = p1 + p2;
  auto draw = [&](const std::vector<double>& q) {
    double x = unif(rng), acc = 0.0;
    for (int t = 0; t < d; ++t) {
      acc += q[t];
      if (x <= acc) return eig.values[t];
    }
    return eig.values[d - 1];
  };
  double sum = 0.0, sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    bool pos = unif(rng) <= p1 / total;
    double val = total * (pos ? draw(q1) : -draw(q2));
    sum += val;
    sq += val * val;
  }
  est.estimate = sum / samples;
  double var = (sq / samples - est.estimate * est.estimate) *
               (double(samples) / std::max<long>(1, samples - 1));
  est.stderr_est = std::sqrt(std::max(0.0, var) / samples);
  return est;
}

std::string QuasiprobEstimate::csv_row() const {
  std::ostringstream oss;
  oss << samples << "," << estimate << "," << stderr_est;
  return oss.str();
}

std::string CircuitSpec::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["k"] = k;
  j["d"] = d;
  j["ancilla_levels"] = m;
  j["postselect"] = postselect;
  json gates = json::array();
  json wmat = json::array();
  for (int r = 0; r < m; ++r) {
    json row = json::array();
    for (int c = 0; c < m; ++c) row.push_back({w(r, c).real(), w(r, c).imag()});
    wmat.push_back(std::move(row));
  }
  gates.push_back({{"gate", "prep"}, {"matrix", std::move(wmat)}});
  for (size_t label = 0; label < controlled.size(); ++label) {
    gates.push_back({{"gate", "cperm"},
                     {"label", label},
                     {"perm", controlled[label].images()}});
  }
  gates.push_back({{"gate", "unprep"}});
  j["gates"] = std::move(gates);
  return j.dump(2);
}

}  // namespace vext::circuit
