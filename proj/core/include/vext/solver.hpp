#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vext/tensor.hpp"

namespace vext::solver {

struct EigenResult {
  std::vector<double> values;            // descending
  Eigen::MatrixXcd vectors;              // columns match values
};

/// Eigendecomposition of a Hermitian operator. Values are real and sorted
/// descending; reconstruction error is at the backend's working precision.
/// Throws std::invalid_argument on non-Hermitian input (tolerance 1e-10
/// relative to the largest entry).
EigenResult hermitian_eigen(const tensor::CxOp& op);

double min_eigenvalue(const tensor::CxOp& op);

// ---------------------------------------------------------------------------
// Standard-form semidefinite program over real symmetric blocks:
//   min sum_b <C_b, X_b>  s.t.  sum_b <A_{i,b}, X_b> = rhs_i,  X_b >= 0.
// Blocks of dimension 1 double as nonnegative-orthant variables.
// ---------------------------------------------------------------------------

struct SdpEntry {
  int block;
  int row, col;  // row <= col entries are mirrored automatically
  double value;
};

struct SdpConstraint {
  std::vector<SdpEntry> coeff;
  double rhs;
};

struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpEntry> objective;
  std::vector<SdpConstraint> constraints;
  std::string description;
  // Reported optimum = scale * (solver objective) + offset. Builders use this
  // to undo complex->real embedding doubling and affine objective shifts.
  double scale = 1.0;
  double offset = 0.0;

  std::string to_json() const;
  static SdpProblem from_json(const std::string& text);
  /// Human-readable constraint listing for debugging.
  std::string describe() const;
};

enum class SolveStatus { optimal, max_iter, infeasible_suspected, numerical_failure };

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  bool log_iterations = false;  // fills SdpSolution::iteration_log (CSV)
};

struct SdpSolution {
  std::vector<Eigen::MatrixXd> X;  // primal blocks
  std::vector<Eigen::MatrixXd> Z;  // dual slack blocks
  Eigen::VectorXd y;               // multipliers (0 for dropped redundant rows)
  double primal_obj = 0;           // raw solver objective (no scale/offset)
  double dual_obj = 0;
  double rel_gap = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  SolveStatus status = SolveStatus::numerical_failure;
  int iterations = 0;
  std::string iteration_log;

  /// scale * obj + offset, using the problem's reporting transform.
  double reported(const SdpProblem& p) const { return p.scale * primal_obj + p.offset; }
  double reported_dual(const SdpProblem& p) const { return p.scale * dual_obj + p.offset; }
};

/// Primal-dual interior-point method (HKM direction, Mehrotra predictor-
/// corrector). Deterministic for identical inputs. Redundant equality
/// constraints are detected by pivoted Cholesky on the constraint Gram matrix
/// and dropped internally.
SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts = {});

}  // namespace vext::solver
