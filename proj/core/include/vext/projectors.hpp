#pragma once

#include "vext/repn.hpp"
#include "vext/tensor.hpp"

namespace vext::projectors {

using tensor::RatOp;

/// Isotypic (central) projector P^lambda on (C^d)^{tensor n}, built from
/// characters: (m_lambda/n!) sum_sigma chi^lambda(sigma) P(sigma).
/// Idempotent with trace d_lambda * m_lambda; zero when lambda has more
/// than d rows (zero_rank flag set).
struct IsotypicProjector {
  repn::Partition lambda;
  int n, d;
  RatOp op;
  bool zero_rank = false;
};
IsotypicProjector young_projector(const repn::Partition& lambda, int n, int d);

/// Projector F_mu(alpha) of the partially transposed permutation algebra
/// (n = |mu| systems plus one transposed system, all of dimension d):
///   F_mu(alpha) = (d_alpha m_mu)/(n d_mu m_alpha)
///                 P_mu sum_k S_{k,n} P_alpha Psi_{n,n+1} S_{k,n} P_mu,
/// where Psi_{n,n+1} is the partial transpose of the (n,n+1) swap.
/// Requires mu = alpha + box; throws std::invalid_argument otherwise.
struct BrauerProjector {
  repn::Partition mu, alpha;
  int d;
  RatOp op;  // on n+1 systems
};
BrauerProjector brauer_projector(const repn::Partition& mu,
                                 const repn::Partition& alpha, int d);

/// Identity of the ideal spanned by the F_mu(alpha):
/// F = sum_{alpha in Y_{n-1}^d} sum_{mu = alpha+box} F_mu(alpha),
/// an operator on n+1 systems of dimension d.
RatOp ideal_identity(int n, int d);

/// Projector onto the mu component of the complementary ideal:
/// (P^mu tensor I) - F (P^mu tensor I). F is central, so this is idempotent.
RatOp s_ideal_projector(const repn::Partition& mu, int n, int d);

/// Closed form of the single-system marginal of F_{sym_n}(sym_{n-1}):
/// c1 I tensor I + c2 Psi on the (first, last) systems, with
/// c1 = (n-1) d_{sym_{n-1}} / (d n (d+1)), c2 = (d+n) d_{sym_{n-1}} / (d n (d+1)).
struct MarginalFSym {
  Rat c1, c2;
  RatOp op;  // on two systems of dimension d
};
MarginalFSym marginal_F_sym(int n, int d);

/// R_n(X) = tr_{2..n}[P^{sym_n} (I^{(n-1)} tensor X) P^{sym_n}], both as the
/// closed form a_n tr(X) I + b_n X and by brute-force double sum over S_n.
struct RnResult {
  Rat a, b;
  RatOp closed_form;
  RatOp brute_force;
};
RnResult r_n_map(const RatOp& x, int n);

/// Brute-force marginal tr_{2..n}[(P^{sym_n} tensor I)(I^{(n-1)} tensor Psi)
/// (P^{sym_n} tensor I)] on n+1 systems, keeping systems (1, n+1); computed by
/// the literal double sum over S_n x S_n. Test oracle for the F normalization.
RatOp sym_psi_sandwich_marginal(int n, int d);

/// Unnormalized maximally entangled operator Psi = sum_{ij} |ii><jj| on two
/// systems of dimension d, exact backend.
RatOp psi_unnormalized(int d);

}  // namespace vext::projectors
