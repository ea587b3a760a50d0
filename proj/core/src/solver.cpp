#include "vext/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace vext::solver {

EigenResult hermitian_eigen(const tensor::CxOp& op) {
  int n = op.dim();
  Eigen::MatrixXcd m(n, n);
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = op.at(i, j);
      scale = std::max(scale, std::abs(m(i, j)));
    }
  double herm_err = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      herm_err = std::max(herm_err, std::abs(m(i, j) - std::conj(m(j, i))));
  if (herm_err > 1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("hermitian_eigen: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  EigenResult r;
  r.values.resize(n);
  r.vectors.resize(n, n);
  // Eigen returns ascending order; flip to descending
  for (int i = 0; i < n; ++i) {
    r.values[i] = es.eigenvalues()(n - 1 - i);
    r.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return r;
}

double min_eigenvalue(const tensor::CxOp& op) {
  auto r = hermitian_eigen(op);
  return r.values.back();
}

std::string SdpProblem::to_json() const {
  nlohmann::json j;
  j["blocks"] = block_dims;
  auto dump_entries = [](const std::vector<SdpEntry>& es) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : es) a.push_back({e.block, e.row, e.col, e.value});
    return a;
  };
  j["objective"] = dump_entries(objective);
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : constraints)
    cs.push_back({{"coeff", dump_entries(c.coeff)}, {"rhs", c.rhs}});
  j["constraints"] = cs;
  j["description"] = description;
  j["scale"] = scale;
  j["offset"] = offset;
  return j.dump(2);
}

SdpProblem SdpProblem::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SdpProblem p;
  p.block_dims = j.at("blocks").get<std::vector<int>>();
  auto load_entries = [](const nlohmann::json& a) {
    std::vector<SdpEntry> es;
    for (const auto& e : a)
      es.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>()});
    return es;
  };
  p.objective = load_entries(j.at("objective"));
  for (const auto& c : j.at("constraints"))
    p.constraints.push_back({load_entries(c.at("coeff")), c.at("rhs").get<double>()});
  p.description = j.value("description", "");
  p.scale = j.value("scale", 1.0);
  p.offset = j.value("offset", 0.0);
  return p;
}

std::string SdpProblem::describe() const {
  std::ostringstream os;
  os << "SDP \"" << description << "\": blocks [";
  for (size_t b = 0; b < block_dims.size(); ++b) os << (b ? "," : "") << block_dims[b];
  os << "], " << constraints.size() << " constraints\n";
  for (size_t i = 0; i < constraints.size(); ++i) {
    os << "  c" << i << ": ";
    for (const auto& e : constraints[i].coeff)
      os << "+" << e.value << "*X" << e.block << "(" << e.row << "," << e.col << ") ";
    os << "= " << constraints[i].rhs << "\n";
  }
  return os.str();
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Dense symmetric matrix per constraint, assembled from mirrored entries.
struct ConstraintMat {
  // sparse triplets (full symmetric form)
  std::vector<int> rows, cols;
  std::vector<double> vals;
  std::vector<int> touched_rows;  // distinct row indices, for skinny products
};

struct BlockData {
  int n;
  MatrixXd C;
  std::vector<ConstraintMat> A;  // one per (kept) constraint
};

ConstraintMat assemble(int n, const std::vector<SdpEntry>& entries, int block) {
  // accumulate duplicates, mirror off-diagonal entries
  MatrixXd dense = MatrixXd::Zero(n, n);
  for (const auto& e : entries) {
    if (e.block != block) continue;
    dense(e.row, e.col) += e.value;
    if (e.row != e.col) dense(e.col, e.row) += e.value;
  }
  ConstraintMat m;
  std::vector<bool> rowseen(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dense(i, j) != 0.0) {
        m.rows.push_back(i);
        m.cols.push_back(j);
        m.vals.push_back(dense(i, j));
        if (!rowseen[i]) {
          rowseen[i] = true;
          m.touched_rows.push_back(i);
        }
      }
  return m;
}

double inner(const ConstraintMat& a, const MatrixXd& x) {
  double s = 0;
  for (size_t t = 0; t < a.vals.size(); ++t) s += a.vals[t] * x(a.rows[t], a.cols[t]);
  return s;
}

void axpy(double alpha, const ConstraintMat& a, MatrixXd& x) {
  for (size_t t = 0; t < a.vals.size(); ++t) x(a.rows[t], a.cols[t]) += alpha * a.vals[t];
}

// T = X * A * Zi for sparse A; exploits that A touches few rows.
MatrixXd sandwich(const MatrixXd& x, const ConstraintMat& a, const MatrixXd& zi) {
  int n = x.rows();
  MatrixXd azi = MatrixXd::Zero(n, n);
  for (size_t t = 0; t < a.vals.size(); ++t)
    azi.row(a.rows[t]) += a.vals[t] * zi.row(a.cols[t]);
  MatrixXd res = MatrixXd::Zero(n, n);
  for (int r : a.touched_rows) res += x.col(r) * azi.row(r);
  return res;
}

// Max alpha in (0, 1] with M + alpha*dM psd, via Cholesky of M.
double max_step(const MatrixXd& m, const MatrixXd& dm) {
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd l = llt.matrixL();
  MatrixXd w = l.triangularView<Eigen::Lower>().solve(dm);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (w + w.transpose()),
                                             Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  if (lmin >= 0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts) {
  const int nb = static_cast<int>(problem.block_dims.size());
  const int m_all = static_cast<int>(problem.constraints.size());

  // Drop redundant constraint rows: pivoted Cholesky on the Gram matrix of the
  // constraint system with drop tolerance.
  std::vector<std::vector<ConstraintMat>> Aall(m_all);
  for (int i = 0; i < m_all; ++i) {
    Aall[i].reserve(nb);
    for (int b = 0; b < nb; ++b)
      Aall[i].push_back(assemble(problem.block_dims[b], problem.constraints[i].coeff, b));
  }
  MatrixXd gram = MatrixXd::Zero(m_all, m_all);
  {
    std::vector<MatrixXd> dense(nb);
    for (int b = 0; b < nb; ++b)
      dense[b] = MatrixXd::Zero(problem.block_dims[b], problem.block_dims[b]);
    for (int j = 0; j < m_all; ++j) {
      for (int b = 0; b < nb; ++b)
        for (size_t t = 0; t < Aall[j][b].vals.size(); ++t)
          dense[b](Aall[j][b].rows[t], Aall[j][b].cols[t]) = Aall[j][b].vals[t];
      for (int i = 0; i <= j; ++i) {
        double s = 0;
        for (int b = 0; b < nb; ++b) s += inner(Aall[i][b], dense[b]);
        gram(i, j) = gram(j, i) = s;
      }
      for (int b = 0; b < nb; ++b)
        for (size_t t = 0; t < Aall[j][b].vals.size(); ++t)
          dense[b](Aall[j][b].rows[t], Aall[j][b].cols[t]) = 0.0;
    }
  }
  // pivoted Cholesky with drop tolerance
  std::vector<int> kept;
  {
    MatrixXd g = gram;
    std::vector<int> perm(m_all);
    for (int i = 0; i < m_all; ++i) perm[i] = i;
    double drop = 1e-12 * std::max(1.0, gram.diagonal().maxCoeff());
    for (int step = 0; step < m_all; ++step) {
      int piv = step;
      for (int i = step + 1; i < m_all; ++i)
        if (g(perm[i], perm[i]) > g(perm[piv], perm[piv])) piv = i;
      if (g(perm[piv], perm[piv]) <= drop) break;
      std::swap(perm[step], perm[piv]);
      int p = perm[step];
      double dsq = std::sqrt(g(p, p));
      kept.push_back(p);
      // update Schur complement on the remaining set
      VectorXd colv(m_all);
      for (int i = step + 1; i < m_all; ++i) colv(perm[i]) = g(perm[i], p) / dsq;
      for (int i = step + 1; i < m_all; ++i)
        for (int j = step + 1; j < m_all; ++j)
          g(perm[i], perm[j]) -= colv(perm[i]) * colv(perm[j]);
    }
    std::sort(kept.begin(), kept.end());
  }
  const int m = static_cast<int>(kept.size());

  std::vector<std::vector<ConstraintMat>> A(m);
  VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    A[i] = std::move(Aall[kept[i]]);
    rhs(i) = problem.constraints[kept[i]].rhs;
  }

  std::vector<BlockData> blocks(nb);
  for (int b = 0; b < nb; ++b) {
    blocks[b].n = problem.block_dims[b];
    blocks[b].C = MatrixXd::Zero(blocks[b].n, blocks[b].n);
    auto cm = assemble(blocks[b].n, problem.objective, b);
    axpy(1.0, cm, blocks[b].C);
  }

  // Initialization (infeasible start, identity scaled by data magnitudes).
  int ntot = 0;
  for (const auto& bd : blocks) ntot += bd.n;
  double bnorm = m ? rhs.cwiseAbs().maxCoeff() : 0.0;
  double cnorm = 0;
  for (const auto& bd : blocks) cnorm = std::max(cnorm, bd.C.cwiseAbs().maxCoeff());
  double anorm = 1.0;
  for (int i = 0; i < m; ++i)
    for (int b = 0; b < nb; ++b)
      for (double v : A[i][b].vals) anorm = std::max(anorm, std::abs(v));
  double taup = std::max(10.0, 10.0 * std::sqrt(double(ntot)) * (1 + bnorm) / anorm);
  double taud = std::max(10.0, (1 + cnorm) * std::sqrt(double(ntot)));

  std::vector<MatrixXd> X(nb), Z(nb);
  for (int b = 0; b < nb; ++b) {
    X[b] = taup * MatrixXd::Identity(blocks[b].n, blocks[b].n);
    Z[b] = taud * MatrixXd::Identity(blocks[b].n, blocks[b].n);
  }
  VectorXd y = VectorXd::Zero(m);

  SdpSolution sol;
  std::ostringstream log;
  if (opts.log_iterations)
    log << "iter,mu,primal_obj,dual_obj,primal_res,dual_res,alpha_p,alpha_d\n";

  auto objective = [&](const std::vector<MatrixXd>& xs) {
    double s = 0;
    for (int b = 0; b < nb; ++b) s += (blocks[b].C.array() * xs[b].array()).sum();
    return s;
  };

  double final_ap = 0, final_ad = 0;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    // residuals
    VectorXd rp(m);
    for (int i = 0; i < m; ++i) {
      double s = 0;
      for (int b = 0; b < nb; ++b) s += inner(A[i][b], X[b]);
      rp(i) = rhs(i) - s;
    }
    std::vector<MatrixXd> Rd(nb);
    double dres = 0;
    for (int b = 0; b < nb; ++b) {
      Rd[b] = blocks[b].C - Z[b];
      for (int i = 0; i < m; ++i) axpy(-y(i), A[i][b], Rd[b]);
      dres = std::max(dres, Rd[b].cwiseAbs().maxCoeff());
    }
    double pres = m ? rp.cwiseAbs().maxCoeff() : 0.0;

    double gap = 0;
    for (int b = 0; b < nb; ++b) gap += (X[b].array() * Z[b].array()).sum();
    double mu = gap / ntot;
    double pobj = objective(X);
    double dobj = rhs.dot(y);
    double relgap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));

    if (opts.log_iterations)
      log << iter << "," << mu << "," << pobj << "," << dobj << "," << pres << ","
          << dres << "," << final_ap << "," << final_ad << "\n";

    if (relgap <= opts.tol && pres <= 1e-8 * (1 + bnorm) && dres <= 1e-7 * (1 + cnorm)) {
      sol.status = SolveStatus::optimal;
      break;
    }

    // factor Z, invert
    std::vector<MatrixXd> Zi(nb);
    bool fail = false;
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<MatrixXd> llt(Z[b]);
      if (llt.info() != Eigen::Success) {
        fail = true;
        break;
      }
      Zi[b] = llt.solve(MatrixXd::Identity(blocks[b].n, blocks[b].n));
    }
    if (fail) {
      sol.status = SolveStatus::numerical_failure;
      break;
    }

    // Schur complement S_ij = sum_b tr(A_i X A_j Zi), plus stored T matrices
    std::vector<std::vector<MatrixXd>> T(m, std::vector<MatrixXd>(nb));
    for (int i = 0; i < m; ++i)
      for (int b = 0; b < nb; ++b) T[i][b] = sandwich(X[b], A[i][b], Zi[b]);
    MatrixXd S(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0;
        for (int b = 0; b < nb; ++b) s += inner(A[j][b], T[i][b]);
        S(i, j) = s;
      }
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::LDLT<MatrixXd> sldlt(S);
    if (sldlt.info() != Eigen::Success) {
      sol.status = SolveStatus::numerical_failure;
      break;
    }

    // helper: given sigma*mu and correction W (or empty), compute direction
    auto newton = [&](double sigmu, const std::vector<MatrixXd>* corr,
                      std::vector<MatrixXd>& dX, std::vector<MatrixXd>& dZ,
                      VectorXd& dy) {
      // dX = sigmu*Zi - X - X(Rd - At dy)Zi - corr*Zi ; A(dX) = rp
      VectorXd r = rp;
      for (int i = 0; i < m; ++i) {
        double s = 0;
        for (int b = 0; b < nb; ++b) {
          MatrixXd rh = X[b] + X[b] * Rd[b] * Zi[b] - sigmu * Zi[b];
          if (corr) rh += (*corr)[b] * Zi[b];
          s += inner(A[i][b], rh);
        }
        r(i) += s;
      }
      dy = sldlt.solve(r);
      dX.resize(nb);
      dZ.resize(nb);
      for (int b = 0; b < nb; ++b) {
        dZ[b] = Rd[b];
        for (int i = 0; i < m; ++i) axpy(-dy(i), A[i][b], dZ[b]);
        MatrixXd dx = sigmu * Zi[b] - X[b] - X[b] * dZ[b] * Zi[b];
        if (corr) dx -= (*corr)[b] * Zi[b];
        dX[b] = 0.5 * (dx + dx.transpose());
      }
    };

    // predictor
    std::vector<MatrixXd> dXa, dZa;
    VectorXd dya;
    newton(0.0, nullptr, dXa, dZa, dya);
    double apa = 1.0, ada = 1.0;
    for (int b = 0; b < nb; ++b) {
      apa = std::min(apa, max_step(X[b], dXa[b]));
      ada = std::min(ada, max_step(Z[b], dZa[b]));
    }
    const double frac = 0.98;
    apa *= frac;
    ada *= frac;
    double gap_aff = 0;
    for (int b = 0; b < nb; ++b)
      gap_aff += ((X[b] + apa * dXa[b]).array() * (Z[b] + ada * dZa[b]).array()).sum();
    double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
    sigma = std::min(std::max(sigma, 1e-8), 1.0);

    // corrector
    std::vector<MatrixXd> corr(nb);
    for (int b = 0; b < nb; ++b) corr[b] = dXa[b] * dZa[b];
    std::vector<MatrixXd> dX, dZ;
    VectorXd dy;
    newton(sigma * mu, &corr, dX, dZ, dy);

    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(X[b], dX[b]));
      ad = std::min(ad, max_step(Z[b], dZ[b]));
    }
    ap = std::min(1.0, frac * ap);
    ad = std::min(1.0, frac * ad);
    final_ap = ap;
    final_ad = ad;

    for (int b = 0; b < nb; ++b) {
      X[b] += ap * dX[b];
      Z[b] += ad * dZ[b];
    }
    y += ad * dy;

    if (mu < 1e-14 && ap < 1e-8 && ad < 1e-8) {
      sol.status = SolveStatus::infeasible_suspected;
      break;
    }
  }
  if (iter == opts.max_iter) sol.status = SolveStatus::max_iter;

  // final bookkeeping
  VectorXd rp(m);
  for (int i = 0; i < m; ++i) {
    double s = 0;
    for (int b = 0; b < nb; ++b) s += inner(A[i][b], X[b]);
    rp(i) = rhs(i) - s;
  }
  double dres = 0;
  for (int b = 0; b < nb; ++b) {
    MatrixXd rd = blocks[b].C - Z[b];
    for (int i = 0; i < m; ++i) axpy(-y(i), A[i][b], rd);
    dres = std::max(dres, rd.cwiseAbs().maxCoeff());
  }
  sol.X = X;
  sol.Z = Z;
  sol.y = VectorXd::Zero(m_all);
  for (int i = 0; i < m; ++i) sol.y(kept[i]) = y(i);
  sol.primal_obj = objective(X);
  sol.dual_obj = rhs.dot(y);
  sol.rel_gap = std::abs(sol.primal_obj - sol.dual_obj) /
                (1 + std::abs(sol.primal_obj) + std::abs(sol.dual_obj));
  sol.primal_residual = m ? rp.cwiseAbs().maxCoeff() : 0.0;
  sol.dual_residual = dres;
  sol.iterations = iter;
  sol.iteration_log = log.str();
  return sol;
}

}  // namespace vext::solver
