#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vext/tensor.hpp"

namespace vext::states {

using tensor::CxOp;
using tensor::RatOp;
using tensor::SystemShape;

/// Density matrix with an explicit A|B cut: `cut` lists the subsystem indices
/// forming the A side (default {0}, remaining systems are B). A rational
/// backend is carried alongside the float one whenever the constructor
/// permits exact entries.
struct DensityMatrix {
  CxOp op;
  std::optional<RatOp> exact;  // present iff all entries are rational
  std::vector<int> cut = {0};
  std::string name;

  const SystemShape& shape() const { return op.shape(); }
  int dim() const { return op.dim(); }
  std::vector<int> b_systems() const;

  /// Hermitian, PSD (min eigenvalue >= -1e-10), trace within 1e-12 of 1.
  void validate() const;
};

/// Phi^d = (1/d) sum_{ij} |ii><jj| on two d-dimensional systems.
DensityMatrix max_entangled(int d);

/// Isotropic state r*Phi + (1-r)(I-Phi)/(d^2-1), exact rational backend.
DensityMatrix isotropic(int d, const Rat& r);

/// Rank-2 state on C^3 x C^3 mixing
///   psi0 = sqrt(1-r)|00> + sqrt(r)(|01>+|12>)/sqrt(2)
///   psi1 = sqrt(1-r)|11> + sqrt(r)(|12>+|20>)/sqrt(2)
/// with equal weights. Float backend only (irrational amplitudes).
DensityMatrix gap_family(double r);

/// |psi> = sum_i sqrt(p_i)|ii> for a probability vector p; dims = p.size().
DensityMatrix pure_from_schmidt(const std::vector<double>& probs);

/// Reproducible random density matrix of the given rank (Ginibre GG^dag,
/// normalized). The seed fully determines the output.
DensityMatrix random_density(const SystemShape& shape, int rank,
                             std::uint64_t seed);

/// JSON io: MultiOp entry-list format plus a {"cut":[...]} field.
std::string to_json(const DensityMatrix& rho);
DensityMatrix from_json(const std::string& text);

}  // namespace vext::states
