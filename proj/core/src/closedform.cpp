#include "vext/closedform.hpp"

#include <cmath>
#include <stdexcept>

#include "vext/tensor.hpp"

namespace vext::closedform {

CostValue from_linear_exact(const Rat& linear, std::string source) {
  if (linear < 1) throw std::invalid_argument("cost: linear value must be >= 1");
  double lin = linear.get_d();
  return {std::log2(lin), lin, linear, true, std::move(source)};
}

CostValue from_linear(double linear, std::string source) {
  if (linear < 1.0 - 1e-9) throw std::invalid_argument("cost: linear value must be >= 1");
  linear = std::max(linear, 1.0);
  return {std::log2(linear), linear, Rat(0), false, std::move(source)};
}

CostValue gamma_k(int d, int k) {
  if (d < 2 || k < 1) throw std::invalid_argument("gamma_k: d >= 2, k >= 1");
  Rat lin = frac(2 * k * d, k + d - 1) - 1;
  return from_linear_exact(lin);
}

static Rat iso_threshold(int d, int k) { return frac(k + d - 1, k * d); }

CostValue eta_isotropic(int d, int k, const Rat& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("eta_isotropic: r in [0,1]");
  if (r <= iso_threshold(d, k)) return from_linear_exact(Rat(1));
  Rat lin = 2 * k * d * r / (k + d - 1) - 1;
  return from_linear_exact(lin);
}

Rat rob_absolute_isotropic(int d, int k, const Rat& r) {
  if (r <= iso_threshold(d, k)) return Rat(0);
  return k * d * r / Rat(k + d - 1) - 1;
}

double distillation_bound(const std::map<int, double>& r_by_k) {
  double best = kInfiniteBound;
  for (const auto& [k, rk] : r_by_k) {
    if (k <= 1) throw std::invalid_argument("distillation_bound: k >= 2");
    if (rk < 0.0) throw std::invalid_argument("distillation_bound: R >= 0");
    if (rk >= k - 1) continue;  // pole: this term gives no bound
    best = std::min(best, std::log2((k - 1) * (rk + 1) / (k - 1 - rk)));
  }
  return best;
}

double log_negativity(const DensityMatrix& rho) {
  if (rho.shape().count() != 2 || rho.cut != std::vector<int>{0})
    throw std::invalid_argument("log_negativity: bipartite state with A first");
  tensor::CxOp pt = partial_transpose(rho.op, 1);
  return std::log2(tensor::trace_norm(pt));
}

std::vector<std::pair<int, double>> en_limit_gap(const std::map<int, double>& eta_by_k) {
  std::vector<std::pair<int, double>> out;
  for (const auto& [k, eta] : eta_by_k)
    out.emplace_back(k, std::log2((std::exp2(eta) + 1.0) / 2.0));
  return out;
}

}  // namespace vext::closedform
