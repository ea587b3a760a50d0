#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "vext/protocol.hpp"
#include "vext/tensor.hpp"

namespace vext::circuit {

using tensor::CxOp;

/// LCU block-encoding circuit of the symmetric projector P^{sym_k} on k
/// d-dimensional registers: an ancilla of m levels (next power of two >= k!)
/// is prepared by W (Householder unitary with W|0> uniform over the first k!
/// levels), each ancilla label j < k! controls the permutation V(sigma_j),
/// and W is undone; postselecting the ancilla on |0> leaves P^{sym_k}.
struct CircuitSpec {
  int k = 0, d = 0;
  int m = 0;  // ancilla levels, power of two, >= k!
  Eigen::MatrixXcd w;
  std::vector<repn::Permutation> controlled;  // label -> permutation, k! entries
  int postselect = 0;

  /// Gate-list JSON (prep unitary as a dense matrix, controlled permutations
  /// by label).
  std::string to_json() const;
};

CircuitSpec lcu_symmetric_projector(int k, int d, int cap = 0);

/// The <0|_anc U |0>_anc block of the circuit unitary, a d^k operator.
CxOp block_encoding(const CircuitSpec& spec);

/// All Kraus operators K_a = <a| U |0> of the unpostselected ancilla-traced
/// channel; K_{postselect} is the block encoding.
std::vector<CxOp> kraus_operators(const CircuitSpec& spec);

/// <psi| P |psi> for the block encoding P, the circuit's postselection
/// success probability on the pure input psi.
double success_probability(const CircuitSpec& spec, const std::vector<Cplx>& psi);

/// Choi operator extracted by simulation: feed each matrix unit through
/// "adjoin (k-1) maximally mixed registers, apply the block encoding, keep
/// the success branch". Systems ordered (B_1..B_k, A) to match the projector
/// layout; `scalar` is tr[choi]/tr[reference] against F_{sym_k}(sym_{k-1})
/// (realize_Lambda) or P^{sym_k} (realize_Gamma).
struct RealizedChoi {
  CxOp choi;
  double scalar;
};
RealizedChoi realize_Lambda(int k, int d, int cap = 0);

/// Partial trace of realize_Lambda over B_k; recovers the ratio
/// d_{sym_{k-1}}/d_{sym_k} (times realize_Lambda's scalar) against P^{sym_k}.
RealizedChoi realize_Gamma(int k, int d, int cap = 0);

/// Quasiprobability estimation of tr[O rho] through the virtual broadcasting
/// protocol: branch i is a CPTP channel sampled with probability
/// p_i/(p1+p2), the observable O is measured on output B_1, and outcomes are
/// reweighted by +-(p1+p2).
struct QuasiprobEstimate {
  double exact_value;     // p1 e1 - p2 e2, the analytic combined expectation
  double branch_pos, branch_neg;  // normalized per-branch expectations e1, e2
  double p1, p2;
  long samples;
  double estimate;
  double stderr_est;

  std::string csv_row() const;  // "samples,estimate,stderr"
};
QuasiprobEstimate estimate_virtual_broadcast(const CxOp& rho, const CxOp& obs,
                                             int k, long samples,
                                             std::uint64_t seed);

}  // namespace vext::circuit
