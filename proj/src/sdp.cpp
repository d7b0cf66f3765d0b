#include "tnl/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace tnl {

namespace {

using Blocks = std::vector<Mat>;

double inner(const std::vector<SdpStandardForm::Entry>& entries,
             const Blocks& x) {
  double v = 0;
  for (const auto& e : entries) v += (e.coeff.array() * x[e.block].array()).sum();
  return v;
}

// sum_i y_i A_i accumulated into per-block matrices.
Blocks adjoint_apply(const SdpStandardForm& p, const Vec& y) {
  Blocks out;
  out.reserve(p.block_dims.size());
  for (int d : p.block_dims) out.push_back(Mat::Zero(d, d));
  for (int i = 0; i < p.num_constraints(); ++i)
    for (const auto& e : p.rows[i]) out[e.block] += y[i] * e.coeff;
  return out;
}

double block_inner(const Blocks& a, const Blocks& b) {
  double v = 0;
  for (size_t j = 0; j < a.size(); ++j) v += (a[j].array() * b[j].array()).sum();
  return v;
}

// Largest step alpha with X + alpha*D psd; returns +inf when unconstrained.
double max_step(const Mat& x, const Mat& d) {
  Eigen::LLT<Mat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Mat l = llt.matrixL();
  Mat b = l.triangularView<Eigen::Lower>().solve(d);
  b = l.triangularView<Eigen::Lower>().solve(b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (b + b.transpose()),
                                        Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double block_max_step(const Blocks& x, const Blocks& d) {
  double a = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < x.size(); ++j) a = std::min(a, max_step(x[j], d[j]));
  return a;
}

struct Workspace {
  // Per constraint, per touched block: A_i X_j and Sinv_j A_i.
  std::vector<std::vector<Mat>> ax, sa;
};

}  // namespace

SdpResult solve_sdp(const SdpStandardForm& problem, const SdpOptions& opts) {
  SdpResult res;
  const int p = problem.num_constraints();
  const int nb = static_cast<int>(problem.block_dims.size());
  const int total_dim = [&] {
    int t = 0;
    for (int d : problem.block_dims) t += d;
    return t;
  }();

  // Row scaling keeps the Schur complement well conditioned.
  SdpStandardForm prob = problem;
  Vec row_scale = Vec::Ones(p);
  for (int i = 0; i < p; ++i) {
    double nrm = 0;
    for (const auto& e : prob.rows[i]) nrm += e.coeff.squaredNorm();
    nrm = std::sqrt(nrm);
    if (nrm > 1e-12) {
      row_scale[i] = nrm;
      for (auto& e : prob.rows[i]) e.coeff /= nrm;
      prob.rhs[i] /= nrm;
    }
  }

  Blocks C(nb), X(nb), S(nb);
  for (int j = 0; j < nb; ++j) C[j] = Mat::Zero(prob.block_dims[j], prob.block_dims[j]);
  for (const auto& e : prob.objective) C[e.block] += e.coeff;

  double normC = 0, normA = 0;
  for (int j = 0; j < nb; ++j) normC = std::max(normC, C[j].norm());
  for (int i = 0; i < p; ++i)
    for (const auto& e : prob.rows[i]) normA = std::max(normA, e.coeff.norm());
  double normb = prob.rhs.size() ? prob.rhs.cwiseAbs().maxCoeff() : 0.0;

  double xi = std::max({10.0, std::sqrt((double)total_dim), 2.0 * normb});
  double eta = std::max({10.0, std::sqrt((double)total_dim), 2.0 * normC, 2.0 * normA});
  for (int j = 0; j < nb; ++j) {
    X[j] = xi * Mat::Identity(prob.block_dims[j], prob.block_dims[j]);
    S[j] = eta * Mat::Identity(prob.block_dims[j], prob.block_dims[j]);
  }
  Vec y = Vec::Zero(p);

  // Touch lists: constraints hitting each block.
  std::vector<std::vector<std::pair<int, const Mat*>>> touch(nb);
  for (int i = 0; i < p; ++i)
    for (const auto& e : prob.rows[i]) touch[e.block].push_back({i, &e.coeff});

  auto apply_A = [&](const Blocks& v) {
    Vec out = Vec::Zero(p);
    for (int j = 0; j < nb; ++j)
      for (const auto& [i, a] : touch[j]) out[i] += (a->array() * v[j].array()).sum();
    return out;
  };

  SdpStatus status = SdpStatus::MaxIterations;
  std::string message;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    // Residuals and gap.
    Vec rp = prob.rhs - apply_A(X);
    Blocks aty = adjoint_apply(prob, y);
    Blocks Rd(nb);
    double mu = 0;
    for (int j = 0; j < nb; ++j) {
      Rd[j] = C[j] - aty[j] - S[j];
      mu += (X[j].array() * S[j].array()).sum();
    }
    mu /= total_dim;

    double pobj = block_inner(C, X);
    double dobj = prob.rhs.dot(y);
    double gap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
    double prim_res = rp.size() ? rp.cwiseAbs().maxCoeff() / (1.0 + normb) : 0.0;
    double dual_res = 0;
    for (int j = 0; j < nb; ++j) dual_res = std::max(dual_res, Rd[j].cwiseAbs().maxCoeff());
    dual_res /= 1.0 + normC;

    if (gap <= opts.gap_tolerance && prim_res <= opts.feasibility_tolerance &&
        dual_res <= opts.feasibility_tolerance) {
      status = SdpStatus::Optimal;
      break;
    }

    // Primal infeasibility: improving ray b'y -> inf with A'(y) + S -> 0.
    if (dobj > 1e7 * (1.0 + normb) && y.cwiseAbs().maxCoeff() > 1e7) {
      Vec ray = y / dobj;
      Blocks atr = adjoint_apply(prob, ray);
      double lmin = 0;
      for (int j = 0; j < nb; ++j) {
        Eigen::SelfAdjointEigenSolver<Mat> es(-atr[j], Eigen::EigenvaluesOnly);
        lmin = std::min(lmin, es.eigenvalues().minCoeff());
      }
      if (lmin > -1e-7) {
        status = SdpStatus::Infeasible;
        message = "primal infeasible: improving dual ray found";
        res.ray_y = ray.cwiseQuotient(row_scale);
        break;
      }
    }

    // Factor S blocks.
    Blocks Sinv(nb);
    bool ok = true;
    for (int j = 0; j < nb; ++j) {
      Eigen::LLT<Mat> llt(S[j]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      Sinv[j] = llt.solve(Mat::Identity(prob.block_dims[j], prob.block_dims[j]));
    }
    if (!ok) {
      status = SdpStatus::NumericalFailure;
      message = "dual slack lost positive definiteness";
      break;
    }

    // Schur complement M_ik = sum_j Tr(A_i X A_k Sinv) = <Sinv A_k, A_i X>.
    Workspace ws;
    ws.ax.assign(nb, {});
    ws.sa.assign(nb, {});
    Mat M = Mat::Zero(p, p);
    for (int j = 0; j < nb; ++j) {
      const auto& tl = touch[j];
      ws.ax[j].reserve(tl.size());
      ws.sa[j].reserve(tl.size());
      for (const auto& [i, a] : tl) {
        ws.ax[j].push_back((*a) * X[j]);
        ws.sa[j].push_back(Sinv[j] * (*a));
      }
      for (size_t u = 0; u < tl.size(); ++u)
        for (size_t v = 0; v < tl.size(); ++v) {
          int iu = tl[u].first, iv = tl[v].first;
          if (iv > iu) continue;
          double m = (ws.ax[j][u].array() * ws.sa[j][v].array()).sum();
          M(iu, iv) += m;
          if (iu != iv) M(iv, iu) += m;
        }
    }

    Eigen::LDLT<Mat> mldlt;
    double ridge = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Mat Mr = M;
      if (ridge > 0) Mr.diagonal().array() += ridge;
      mldlt.compute(Mr);
      if (mldlt.info() == Eigen::Success && mldlt.isPositive()) break;
      ridge = ridge == 0 ? 1e-12 * (1.0 + M.diagonal().maxCoeff()) : ridge * 100;
    }

    auto solve_direction = [&](const Blocks& K, Blocks& dX, Blocks& dS, Vec& dy) {
      // rhs = rp - A(K Sinv) + A(X Rd Sinv)
      Blocks tmp(nb);
      for (int j = 0; j < nb; ++j)
        tmp[j] = (K[j] - X[j] * Rd[j]) * Sinv[j];
      Vec rhs = rp - apply_A(tmp);
      dy = mldlt.solve(rhs);
      Blocks atdy = adjoint_apply(prob, dy);
      dS.resize(nb);
      dX.resize(nb);
      for (int j = 0; j < nb; ++j) {
        dS[j] = Rd[j] - atdy[j];
        Mat raw = (K[j] - X[j] * dS[j]) * Sinv[j];
        dX[j] = 0.5 * (raw + raw.transpose());
      }
    };

    // Predictor.
    Blocks K(nb);
    for (int j = 0; j < nb; ++j) K[j] = -X[j] * S[j];
    Blocks dXa, dSa;
    Vec dya;
    solve_direction(K, dXa, dSa, dya);
    double ap = std::min(1.0, block_max_step(X, dXa));
    double ad = std::min(1.0, block_max_step(S, dSa));
    double mu_aff = 0;
    for (int j = 0; j < nb; ++j)
      mu_aff += ((X[j] + ap * dXa[j]).array() * (S[j] + ad * dSa[j]).array()).sum();
    mu_aff = std::max(0.0, mu_aff / total_dim);
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-10, 1.0);

    // Corrector.
    for (int j = 0; j < nb; ++j) {
      K[j] = -X[j] * S[j] - dXa[j] * dSa[j];
      K[j].diagonal().array() += sigma * mu;
    }
    Blocks dX, dS;
    Vec dy;
    solve_direction(K, dX, dS, dy);

    double tau = iter < 5 ? 0.95 : 0.98;
    double alpha_p = std::min(1.0, tau * block_max_step(X, dX));
    double alpha_d = std::min(1.0, tau * block_max_step(S, dS));

    bool bad = !std::isfinite(alpha_p) || !std::isfinite(alpha_d) ||
               !std::isfinite(dy.cwiseAbs().sum());
    if (bad) {
      status = SdpStatus::NumericalFailure;
      message = "non-finite search direction";
      break;
    }

    for (int j = 0; j < nb; ++j) {
      X[j] += alpha_p * dX[j];
      X[j] = 0.5 * (X[j] + X[j].transpose()).eval();
      S[j] += alpha_d * dS[j];
      S[j] = 0.5 * (S[j] + S[j].transpose()).eval();
    }
    y += alpha_d * dy;

    if (mu < 1e-18) {
      status = SdpStatus::NumericalFailure;
      message = "complementarity collapsed before feasibility";
      break;
    }
  }

  res.status = status;
  res.message = message;
  res.X = X;
  res.S = S;
  res.y = y.cwiseQuotient(row_scale);
  res.iterations = iter;
  res.primal_objective = block_inner(C, X);
  res.dual_objective = prob.rhs.dot(y);
  res.duality_gap = std::abs(res.primal_objective - res.dual_objective);
  Vec rp = prob.rhs - apply_A(X);
  res.primal_residual = rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0;
  Blocks aty = adjoint_apply(prob, y);
  double dres = 0;
  for (int j = 0; j < nb; ++j)
    dres = std::max(dres, (C[j] - aty[j] - S[j]).cwiseAbs().maxCoeff());
  res.dual_residual = dres;
  return res;
}

// ---------------------------------------------------------------------------
// LMI form.

int LmiProblem::add_variables(int count) {
  int first = num_vars_;
  num_vars_ += count;
  return first;
}

void LmiProblem::add_lmi_block(const std::vector<int>& vars, const Mat& f0,
                               const std::vector<Mat>& fi) {
  if (vars.size() != fi.size())
    throw TnlError("add_lmi_block: vars/coefficients size mismatch");
  blocks_.push_back({vars, f0, fi});
}

void LmiProblem::add_scalar_inequality(
    double a0, const std::vector<std::pair<int, double>>& coeffs) {
  std::vector<int> vars;
  std::vector<Mat> fi;
  for (auto& [v, c] : coeffs) {
    vars.push_back(v);
    fi.push_back(Mat::Constant(1, 1, c));
  }
  blocks_.push_back({vars, Mat::Constant(1, 1, a0), fi});
}

void LmiProblem::set_objective_max(
    const std::vector<std::pair<int, double>>& coeffs) {
  objective_ = coeffs;
}

LmiProblem::Solution LmiProblem::solve(const SdpOptions& opts) const {
  // max c'y s.t. F0 + sum y_i Fi >= 0 is the dual of
  // min <F0,X> s.t. <-Fi, X> = c_i, X >= 0.
  SdpStandardForm sf;
  for (const auto& b : blocks_) sf.block_dims.push_back((int)b.f0.rows());
  for (size_t l = 0; l < blocks_.size(); ++l)
    sf.objective.push_back({(int)l, blocks_[l].f0});
  sf.rows.resize(num_vars_);
  for (size_t l = 0; l < blocks_.size(); ++l)
    for (size_t k = 0; k < blocks_[l].vars.size(); ++k)
      sf.rows[blocks_[l].vars[k]].push_back({(int)l, -blocks_[l].fi[k]});
  sf.rhs = Vec::Zero(num_vars_);
  for (auto& [v, c] : objective_) sf.rhs[v] += c;

  SdpResult r = solve_sdp(sf, opts);
  Solution sol;
  sol.status = r.status;
  sol.y = r.y;
  sol.objective = r.dual_objective;
  sol.duality_gap = r.duality_gap;
  sol.multipliers = r.X;
  sol.lmi_values = r.S;
  sol.iterations = r.iterations;
  return sol;
}

// ---------------------------------------------------------------------------
// Entry-constrained form.

int EntrySdpProblem::add_psd_variable(int size) {
  var_sizes_.push_back(size);
  return static_cast<int>(var_sizes_.size()) - 1;
}

void EntrySdpProblem::add_constraint(const std::vector<Term>& terms,
                                     RowRelation rel, double rhs) {
  constraints_.push_back({terms, rel, rhs});
}

void EntrySdpProblem::set_objective(LpSense sense,
                                    const std::vector<Term>& terms) {
  sense_ = sense;
  objective_ = terms;
}

EntrySdpProblem::Solution EntrySdpProblem::solve(const SdpOptions& opts) const {
  const int nv = static_cast<int>(var_sizes_.size());
  SdpStandardForm sf;
  sf.block_dims = var_sizes_;

  auto symmetrized = [&](const std::vector<Term>& terms, double scale) {
    std::vector<Mat> per_var(nv);
    std::vector<bool> used(nv, false);
    for (const auto& t : terms) {
      if (!used[t.var]) {
        per_var[t.var] = Mat::Zero(var_sizes_[t.var], var_sizes_[t.var]);
        used[t.var] = true;
      }
      if (t.row == t.col) {
        per_var[t.var](t.row, t.col) += scale * t.coeff;
      } else {
        per_var[t.var](t.row, t.col) += 0.5 * scale * t.coeff;
        per_var[t.var](t.col, t.row) += 0.5 * scale * t.coeff;
      }
    }
    std::vector<SdpStandardForm::Entry> out;
    for (int v = 0; v < nv; ++v)
      if (used[v]) out.push_back({v, per_var[v]});
    return out;
  };

  double obj_sign = sense_ == LpSense::Maximize ? -1.0 : 1.0;
  sf.objective = symmetrized(objective_, obj_sign);

  int slack_count = 0;
  for (const auto& c : constraints_)
    if (c.rel != RowRelation::Equal) ++slack_count;
  int slack0 = nv;
  for (int s = 0; s < slack_count; ++s) sf.block_dims.push_back(1);

  sf.rhs = Vec::Zero((int)constraints_.size());
  int slack = 0;
  for (size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    auto row = symmetrized(c.terms, 1.0);
    if (c.rel == RowRelation::LessEqual)
      row.push_back({slack0 + slack++, Mat::Constant(1, 1, 1.0)});
    else if (c.rel == RowRelation::GreaterEqual)
      row.push_back({slack0 + slack++, Mat::Constant(1, 1, -1.0)});
    sf.rows.push_back(row);
    sf.rhs[(int)i] = c.rhs;
  }

  SdpResult r = solve_sdp(sf, opts);
  Solution sol;
  sol.status = r.status;
  sol.values.assign(r.X.begin(), r.X.begin() + nv);
  sol.objective = obj_sign * r.primal_objective;
  sol.duality_gap = r.duality_gap;
  sol.duals = obj_sign * r.y;
  sol.iterations = r.iterations;
  return sol;
}

}  // namespace tnl
