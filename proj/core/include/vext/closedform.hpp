#pragma once

#include <map>
#include <string>

#include "vext/states.hpp"

namespace vext::closedform {

/// A simulation cost, carried both in bits and linearly. All logs base 2.
struct CostValue {
  double log2_value;
  double linear_value;          // 2^{log2_value}, >= 1
  Rat linear_exact;             // exact when the formula is rational
  bool exact = false;
  std::string source;           // "closed-form" | "sdp" | "certificate"
};

CostValue from_linear_exact(const Rat& linear, std::string source = "closed-form");
CostValue from_linear(double linear, std::string source);

/// gamma_k = log2(2kd/(k+d-1) - 1), the optimal universal broadcasting cost.
CostValue gamma_k(int d, int k);

/// Virtual extension cost of the isotropic state: 0 for
/// r <= (k+d-1)/(kd), otherwise log2(2kdr/(k+d-1) - 1).
CostValue eta_isotropic(int d, int k, const Rat& r);

/// Absolute robustness of the isotropic state: kdr/(k+d-1) - 1 above the
/// threshold, else 0. (A free state has zero robustness; together with
/// 2^eta = 2R + 1 and eta = 0 below the threshold, the below-threshold value
/// must be 0 -- reported as such even where other write-ups print 1.)
Rat rob_absolute_isotropic(int d, int k, const Rat& r);

constexpr double kInfiniteBound = std::numeric_limits<double>::infinity();

/// min over k of log2((k-1)(R_k+1)/(k-1-R_k)); entries with R_k >= k-1 are
/// skipped (that term is unbounded). Empty effective set -> +infinity.
/// Throws on k <= 1 or R_k < 0.
double distillation_bound(const std::map<int, double>& r_by_k);

/// E_N = log2 of the trace norm of the partial transpose over B.
double log_negativity(const DensityMatrix& rho);

/// For each provided eta_k, the value log2((2^{eta_k}+1)/2); the sequence
/// approaches E_N as k grows on pure states.
std::vector<std::pair<int, double>> en_limit_gap(const std::map<int, double>& eta_by_k);

}  // namespace vext::closedform
