#include "vext/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vext/solver.hpp"

namespace vext::states {

using nlohmann::json;

std::vector<int> DensityMatrix::b_systems() const {
  std::vector<int> b;
  for (int s = 0; s < shape().count(); ++s)
    if (std::find(cut.begin(), cut.end(), s) == cut.end()) b.push_back(s);
  return b;
}

void DensityMatrix::validate() const {
  if (!op.is_hermitian(1e-12)) throw std::runtime_error("state: not Hermitian");
  double tr = op.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) throw std::runtime_error("state: trace != 1");
  if (solver::min_eigenvalue(op) < -1e-10)
    throw std::runtime_error("state: not positive semidefinite");
  if (exact) {
    if (max_abs_diff(to_float(*exact), op) > 1e-14)
      throw std::runtime_error("state: exact/float backends disagree");
  }
}

DensityMatrix max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d >= 2");
  RatOp psi{SystemShape{d, d}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) psi.at(i * d + i, j * d + j) = frac(1, d);
  DensityMatrix rho{to_float(psi), std::move(psi), {0}, "mes"};
  return rho;
}

DensityMatrix isotropic(int d, const Rat& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("isotropic: r in [0,1]");
  RatOp phi = *max_entangled(d).exact;
  Rat comp = (1 - r) / (d * d - 1);
  RatOp body = RatOp::identity(SystemShape{d, d}).scaled(comp) +
               phi.scaled(r - comp);
  DensityMatrix rho{to_float(body), std::move(body), {0}, "isotropic"};
  return rho;
}

DensityMatrix gap_family(double r) {
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("gap_family: r in [0,1]");
  SystemShape shape{3, 3};
  auto ket = [&](int a, int b) { return a * 3 + b; };
  std::vector<Cplx> psi0(9, 0.0), psi1(9, 0.0);
  double s = std::sqrt(1.0 - r), h = std::sqrt(r / 2.0);
  psi0[ket(0, 0)] = s;
  psi0[ket(0, 1)] = h;
  psi0[ket(1, 2)] = h;
  psi1[ket(1, 1)] = s;
  psi1[ket(1, 2)] = h;
  psi1[ket(2, 0)] = h;
  CxOp op{shape};
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      op.at(i, j) = 0.5 * (psi0[i] * std::conj(psi0[j]) + psi1[i] * std::conj(psi1[j]));
  return {std::move(op), std::nullopt, {0}, "gap-family"};
}

DensityMatrix pure_from_schmidt(const std::vector<double>& probs) {
  int d = static_cast<int>(probs.size());
  if (d < 1) throw std::invalid_argument("pure_from_schmidt: empty vector");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("pure_from_schmidt: negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("pure_from_schmidt: probabilities must sum to 1");
  SystemShape shape{d, d};
  CxOp op{shape};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      op.at(i * d + i, j * d + j) = std::sqrt(probs[i]) * std::sqrt(probs[j]);
  return {std::move(op), std::nullopt, {0}, "pure-schmidt"};
}

DensityMatrix random_density(const SystemShape& shape, int rank,
                             std::uint64_t seed) {
  int n = shape.total();
  if (rank < 1 || rank > n) throw std::invalid_argument("random_density: bad rank");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<Cplx>> g(n, std::vector<Cplx>(rank));
  for (auto& row : g)
    for (auto& x : row) x = Cplx(gauss(rng), gauss(rng));
  CxOp op{shape};
  Cplx tr = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cplx v = 0.0;
      for (int r = 0; r < rank; ++r) v += g[i][r] * std::conj(g[j][r]);
      op.at(i, j) = v;
      if (i == j) tr += v;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) op.at(i, j) /= tr.real();
  return {std::move(op), std::nullopt, {0}, "random"};
}

std::string to_json(const DensityMatrix& rho) {
  json j;
  j["dims"] = rho.shape().dims;
  j["cut"] = rho.cut;
  j["name"] = rho.name;
  json entries = json::array();
  for (int r = 0; r < rho.dim(); ++r)
    for (int c = 0; c < rho.dim(); ++c) {
      const Cplx& v = rho.op.at(r, c);
      if (v == Cplx(0.0, 0.0)) continue;
      entries.push_back({r, c, v.real(), v.imag()});
    }
  j["entries"] = std::move(entries);
  if (rho.exact) {
    json ex = json::array();
    for (int r = 0; r < rho.dim(); ++r)
      for (int c = 0; c < rho.dim(); ++c) {
        const Rat& v = rho.exact->at(r, c);
        if (is_zero(v)) continue;
        ex.push_back({r, c, rat_to_string(v)});
      }
    j["exact"] = std::move(ex);
  }
  return j.dump(2);
}

DensityMatrix from_json(const std::string& text) {
  json j = json::parse(text);
  SystemShape shape{j.at("dims").get<std::vector<int>>()};
  DensityMatrix rho{CxOp{shape}, std::nullopt, {0}, ""};
  if (j.contains("cut")) rho.cut = j["cut"].get<std::vector<int>>();
  if (j.contains("name")) rho.name = j["name"].get<std::string>();
  for (const auto& e : j.at("entries"))
    rho.op.at(e[0].get<int>(), e[1].get<int>()) =
        Cplx(e[2].get<double>(), e[3].get<double>());
  if (j.contains("exact")) {
    RatOp ex{shape};
    for (const auto& e : j["exact"])
      ex.at(e[0].get<int>(), e[1].get<int>()) =
          rat_from_string(e[2].get<std::string>());
    rho.exact = std::move(ex);
  }
  return rho;
}

}  // namespace vext::states
