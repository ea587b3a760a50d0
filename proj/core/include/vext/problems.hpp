#pragma once

#include <stdexcept>

#include "vext/solver.hpp"
#include "vext/states.hpp"

namespace vext::problems {

using solver::SdpProblem;
using states::DensityMatrix;

/// Total per-block dimension limit before real embedding. Default 256,
/// overridable via the VEXT_DIM_CAP environment variable or the builders'
/// explicit cap argument (0 = use the global value).
int dimension_cap();

struct CapExceeded : std::runtime_error {
  int required, cap;
  CapExceeded(int required, int cap);
};

/// min tr[P] + tr[Q] s.t. tr_{\AB_j}[P - Q] = rho for j = 1..k, P,Q >= 0,
/// both on A B_1...B_k. Optimum = 2^{eta_k(rho)}.
SdpProblem build_eta_primal(const DensityMatrix& rho, int k, int cap = 0);

/// max sum_j tr[X_j rho] s.t. I - sum_j X_j (x) I >= 0, X_j Hermitian (free,
/// split into differences of PSD blocks). Optimum equals the primal's.
/// Intended for small dimensions only (constraint count grows with the full
/// extension space).
SdpProblem build_eta_dual(const DensityMatrix& rho, int k, int cap = 0);

/// min tr[M+ + M-] s.t. M+- >= 0 with all AB_j marginals equal and
/// M+_{AB_1} - M-_{AB_1} = rho. Optimum = 2 R_absolute + 1.
SdpProblem build_rob_absolute(const DensityMatrix& rho, int k, int cap = 0);

/// min tr[T] - 1 s.t. T >= 0 on A B_1..B_k, all AB_j marginals of T equal,
/// and tr_{\AB_1}[T] - rho >= 0 (slack block). Optimum = R_global: T = rho +
/// s sigma's extension, feasible exactly when (rho + s sigma)/(1+s) is
/// k-extendible for some state sigma with s = tr[T] - 1.
SdpProblem build_rob_global(const DensityMatrix& rho, int k, int cap = 0);

/// Reconstructs the dual marginal witnesses X_j (operators on AB) from the
/// equality-constraint multipliers of a build_eta_primal solve; uses the
/// builder's constraint ordering. Dual feasibility means
/// I -/+ sum_j X_j ox I >= 0 with value sum_j tr[X_j rho].
std::vector<tensor::CxOp> eta_dual_witness(const DensityMatrix& rho, int k,
                                           const Eigen::VectorXd& y);

/// Symmetry-reduced broadcasting problem: a linear program over nonnegative
/// coefficients of the two Choi operators in the orthogonal projector basis
/// of the partially transposed permutation algebra. Optimum = 2^{gamma_k}.
SdpProblem build_broadcast_reduced(int d, int k, int cap = 0);

}  // namespace vext::problems
