#include "vext/projectors.hpp"

#include <stdexcept>

namespace vext::projectors {

using repn::Partition;
using repn::Permutation;
using repn::sym;
using tensor::SystemShape;

namespace {

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// index -> index table for the subsystem permutation sigma on n systems of dim d
std::vector<int> apply_table(int n, int d, const Permutation& sigma) {
  SystemShape shape = SystemShape::uniform(n, d);
  std::vector<int> table(shape.total());
  std::vector<int> in(n), out(n);
  for (int i = 0; i < shape.total(); ++i) {
    shape.decode(i, in);
    for (int j = 0; j < n; ++j) out[sigma(j)] = in[j];
    table[i] = shape.encode(out);
  }
  return table;
}

bool is_grown_from(const Partition& mu, const Partition& alpha, int d) {
  for (const auto& g : repn::grow(alpha, d))
    if (g == mu) return true;
  return false;
}

}  // namespace

RatOp psi_unnormalized(int d) {
  RatOp psi{SystemShape{d, d}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) psi.at(i * d + i, j * d + j) = 1;
  return psi;
}

IsotypicProjector young_projector(const Partition& lambda, int n, int d) {
  if (lambda.n() != n) throw std::invalid_argument("young_projector: |lambda| != n");
  IsotypicProjector pr{lambda, n, d, RatOp{SystemShape::uniform(n, d)}, false};
  if (lambda.rows() > d) {
    pr.zero_rank = true;  // d_lambda = 0: the isotypic component is absent
    return pr;
  }
  Rat norm = Rat(repn::syt_count(lambda)) / factorial(n);
  for (const auto& sigma : repn::all_permutations(n)) {
    long long chi = repn::character(lambda, sigma.cycle_type());
    if (chi == 0) continue;
    Rat coeff = norm * chi;
    auto table = apply_table(n, d, sigma);
    for (int col = 0; col < pr.op.dim(); ++col) pr.op.at(table[col], col) += coeff;
  }
  return pr;
}

BrauerProjector brauer_projector(const Partition& mu, const Partition& alpha, int d) {
  int n = mu.n();
  if (alpha.n() != n - 1 || !is_grown_from(mu, alpha, d))
    throw std::invalid_argument("brauer_projector: mu must be alpha plus one box");
  if (mu.rows() > d || alpha.rows() > d)
    throw std::invalid_argument("brauer_projector: diagram exceeds d rows");

  SystemShape shape = SystemShape::uniform(n + 1, d);
  RatOp id1 = RatOp::identity(SystemShape{d});

  RatOp p_mu = kron(young_projector(mu, n, d).op, id1);
  RatOp p_alpha_psi = [&] {
    RatOp psi = psi_unnormalized(d);
    if (n == 1) return psi;  // alpha empty: P_alpha = 1 on zero systems
    return kron(young_projector(alpha, n - 1, d).op, psi);
  }();

  // sum_k S_{k,n} (P_alpha Psi_{n,n+1}) S_{k,n}; the k = n term is the bare one
  RatOp acc = p_alpha_psi;
  for (int k = 1; k < n; ++k) {
    std::vector<int> perm(n + 1);
    for (int s = 0; s <= n; ++s) perm[s] = s;
    std::swap(perm[k - 1], perm[n - 1]);  // swap systems k and n (1-based)
    acc = acc + permute_systems(p_alpha_psi, perm);
  }

  Rat c = Rat(repn::ssyt_count(alpha, d)) * repn::syt_count(mu) /
          (Rat(n) * repn::ssyt_count(mu, d) * repn::syt_count(alpha));
  RatOp f = (p_mu * acc * p_mu).scaled(c);
  return {mu, alpha, d, std::move(f)};
}

RatOp ideal_identity(int n, int d) {
  if (n < 1) throw std::invalid_argument("ideal_identity: n >= 1");
  SystemShape shape = SystemShape::uniform(n + 1, d);
  RatOp f = RatOp::zero(shape);
  if (n == 1) return brauer_projector(sym(1), Partition(), d).op;
  for (const auto& alpha : repn::partitions(n - 1, d))
    for (const auto& mu : repn::grow(alpha, d)) f = f + brauer_projector(mu, alpha, d).op;
  return f;
}

RatOp s_ideal_projector(const Partition& mu, int n, int d) {
  RatOp f = ideal_identity(n, d);
  RatOp p = kron(young_projector(mu, n, d).op, RatOp::identity(SystemShape{d}));
  return p - f * p;
}

MarginalFSym marginal_F_sym(int n, int d) {
  if (n < 2) throw std::invalid_argument("marginal_F_sym: n >= 2");
  Rat dsym_prev = repn::ssyt_count(sym(n - 1), d);
  Rat denom = Rat(d) * n * (d + 1);
  Rat c1 = Rat(n - 1) * dsym_prev / denom;
  Rat c2 = Rat(d + n) * dsym_prev / denom;
  RatOp op = RatOp::identity(SystemShape{d, d}).scaled(c1) + psi_unnormalized(d).scaled(c2);
  return {c1, c2, std::move(op)};
}

RnResult r_n_map(const RatOp& x, int n) {
  if (x.shape().count() != 1) throw std::invalid_argument("r_n_map: X must be single-system");
  int d = x.shape().dims[0];
  Rat dsym = repn::ssyt_count(sym(n), d);
  Rat denom = Rat(d) * n * (d + 1);
  Rat a = Rat(n - 1) * dsym / denom;
  Rat b = Rat(d + n) * dsym / denom;

  RnResult res;
  res.a = a;
  res.b = b;
  res.closed_form = RatOp::identity(SystemShape{d}).scaled(a * x.trace()) + x.scaled(b);

  // literal (1/n!^2) sum_{pi,sigma} tr_{2..n}[V(pi) (I^(n-1) ox X) V(sigma)]
  auto perms = repn::all_permutations(n);
  std::vector<std::vector<int>> tables, inv_tables;
  tables.reserve(perms.size());
  for (const auto& p : perms) {
    tables.push_back(apply_table(n, d, p));
    inv_tables.push_back(apply_table(n, d, p.inverse()));
  }
  int rest = 1;
  for (int s = 1; s < n; ++s) rest *= d;  // d^{n-1}, trailing digits
  RatOp brute = RatOp::zero(SystemShape{d});
  for (size_t ip = 0; ip < perms.size(); ++ip) {
    for (size_t is = 0; is < perms.size(); ++is) {
      const auto& tp = tables[ip];
      const auto& tsi = inv_tables[is];
      // nonzeros of I^(n-1) ox X: i = c*d + xr, j = c*d + xc
      for (int c = 0; c < rest; ++c)
        for (int xr = 0; xr < d; ++xr)
          for (int xc = 0; xc < d; ++xc) {
            const Rat& v = x.at(xr, xc);
            if (is_zero(v)) continue;
            int p = tp[c * d + xr];
            int q = tsi[c * d + xc];
            if (p % rest != q % rest) continue;
            brute.at(p / rest, q / rest) += v;
          }
    }
  }
  Rat fac = factorial(n);
  res.brute_force = brute.scaled(1 / (fac * fac));
  return res;
}

RatOp sym_psi_sandwich_marginal(int n, int d) {
  // (1/n!^2) sum_{pi,sigma} tr_{2..n}[(V(pi) ox I)(I^(n-1) ox Psi)(V(sigma) ox I)],
  // keeping systems (1, n+1)
  auto perms = repn::all_permutations(n);
  std::vector<std::vector<int>> tables, inv_tables;
  for (const auto& p : perms) {
    tables.push_back(apply_table(n, d, p));
    inv_tables.push_back(apply_table(n, d, p.inverse()));
  }
  int rest = 1;
  for (int s = 1; s < n; ++s) rest *= d;  // middle digits span systems 2..n
  SystemShape out_shape{d, d};
  std::vector<long long> counts(size_t(d * d) * d * d, 0);
  for (size_t ip = 0; ip < perms.size(); ++ip) {
    for (size_t is = 0; is < perms.size(); ++is) {
      const auto& tp = tables[ip];
      const auto& tsi = inv_tables[is];
      // nonzeros of I^(n-1) ox Psi on n+1 systems: i = (c,a,a), j = (c,b,b)
      for (int c = 0; c < rest; ++c)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            int pf = tp[c * d + a];   // first n systems of the row index
            int qf = tsi[c * d + b];  // first n systems of the column index
            if (pf % rest != qf % rest) continue;  // trace over systems 2..n
            int row = (pf / rest) * d + a;  // keep (system 1, system n+1)
            int col = (qf / rest) * d + b;
            counts[size_t(row) * d * d + col] += 1;
          }
    }
  }
  Rat fac = factorial(n);
  RatOp out{out_shape};
  for (int r = 0; r < d * d; ++r)
    for (int cidx = 0; cidx < d * d; ++cidx) {
      long long v = counts[size_t(r) * d * d + cidx];
      if (v) out.at(r, cidx) = Rat(v) / (fac * fac);
    }
  return out;
}

}  // namespace vext::projectors
