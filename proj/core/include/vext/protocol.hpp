#pragma once

#include <string>
#include <vector>

#include "vext/problems.hpp"
#include "vext/projectors.hpp"
#include "vext/solver.hpp"
#include "vext/states.hpp"

namespace vext::protocol {

using tensor::RatOp;

/// Universal virtual broadcasting protocol J = choi_pos - choi_neg. Both Choi
/// operators live on systems (B_1, ..., B_k, A), with the transposed system A
/// last. Exact rational entries throughout.
///
/// `normalized_marginals` selects the marginal convention: false means the
/// broadcasting form (tr_{\AB_j}[J] = Psi, unnormalized, p_i = tr[J_i]/d);
/// true means the state-extension form (marginals equal `target` with trace 1,
/// p_i = tr[J_i]).
struct BroadcastProtocol {
  int d, k;
  RatOp choi_pos, choi_neg;
  Rat a, b;    // basis coefficients of the two Choi operators
  Rat p1, p2;  // CPTN weights; p1 + p2 is the simulation cost (linear)
  RatOp target;  // required (B_j, A) marginal of choi_pos - choi_neg
  bool normalized_marginals = false;
};

/// Optimal universal protocol: choi_pos = a F_{sym_k}(sym_{k-1}) with
/// a = d^2/d_{sym_k}, choi_neg = b (P^{sym_k} ox I - F (P^{sym_k} ox I)) with
/// b = d(k-1)/(d_{sym_k}(d+k)); p1 + p2 = 2kd/(k+d-1) - 1 exactly.
BroadcastProtocol build_optimal_protocol(int d, int k, int cap = 0);

/// Optimal witness for the isotropic state at parameter r above the
/// extendibility threshold (k+d-1)/(kd); marginals equal the isotropic state
/// exactly and p1 + p2 = 2kdr/(k+d-1) - 1. Throws std::invalid_argument at or
/// below the threshold, where the cost is zero and the extension itself is
/// the witness.
BroadcastProtocol build_optimal_isotropic(int d, int k, const Rat& r, int cap = 0);

/// Exact rational feasibility check: every (B_j, A) marginal of
/// choi_pos - choi_neg equals `target`, and tr_{B^k} of each Choi operator is
/// the corresponding p_i/d (or p_i) multiple of I_A. Failure is reported, not
/// thrown.
struct MarginalReport {
  bool pass = true;
  Rat max_residual = 0;      // largest absolute entry deviation seen
  std::vector<int> failed_j;  // marginals that missed (1-based; 0 = A-trace)
};
MarginalReport verify_marginals(const BroadcastProtocol& proto);

/// Feasibility of the closed-form dual point Z = K = I/d,
/// X_j = 2/(d(k+d-1)) Phi - 1/(kd) I for the broadcasting dual: checks
/// tr[Z], tr[K] <= 1 and min eigenvalues of Z ox I -/+ sum_j X_j ox I
/// against -1e-10. `x_scale` rescales the X_j (negative controls).
struct DualPointReport {
  bool feasible = true;
  double tr_z = 0, tr_k = 0;
  double min_eig_minus = 0;  // Z ox I - sum X_j ox I
  double min_eig_plus = 0;   // K ox I + sum X_j ox I
};
DualPointReport verify_dual_point(int d, int k, double x_scale = 1.0);

/// Primal/dual certificate for the extension cost of an arbitrary state.
/// The dual witnesses X_j are recovered from the equality multipliers of the
/// primal solve, so dual_value <= 2^eta <= primal_value up to the reported
/// residuals; witnesses are stored in full for independent re-verification.
struct CostCertificate {
  std::string state;
  int k = 0;
  tensor::CxOp P, Q;            // primal blocks, marginals of P-Q reproduce rho
  std::vector<tensor::CxOp> X;  // dual witnesses on AB
  double primal_value = 0;      // 2^{eta_k} upper bound
  double dual_value = 0;        // lower bound sum_j tr[X_j rho]
  double gap = 0;
  double marginal_residual = 0;   // max |tr_{\AB_j}[P-Q] - rho|
  double dual_min_eig_minus = 0;  // I - sum X_j ox I
  double dual_min_eig_plus = 0;   // I + sum X_j ox I
  solver::SolveStatus status = solver::SolveStatus::numerical_failure;
  int iterations = 0;
};
CostCertificate certify(const states::DensityMatrix& rho, int k,
                        const solver::SolveOptions& opts = {});

/// JSON serialization with a schema version field; witnesses use the entry
/// list format of the state serializer.
std::string to_json(const CostCertificate& cert);

}  // namespace vext::protocol
