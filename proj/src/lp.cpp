#include "tnl/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tnl {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

struct Tableau {
  Mat t;                    // m x (ncols + 1), last column = rhs
  std::vector<int> basis;   // basic column per row
  int m = 0;
  int ncols = 0;

  double rhs(int i) const { return t(i, ncols); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

// Reduced costs r = c - c_B' * T for the current tableau.
Vec reduced_costs(const Tableau& tab, const Vec& cost) {
  Vec cb(tab.m);
  for (int i = 0; i < tab.m; ++i) cb[i] = cost[tab.basis[i]];
  Vec r = cost - tab.t.leftCols(tab.ncols).transpose() * cb;
  return r;
}

// Returns true on optimal, false on unbounded.
bool run_simplex(Tableau& tab, const Vec& cost, const std::vector<bool>& allowed,
                 int max_iterations, int& iterations) {
  int stale = 0;
  double last_obj = std::numeric_limits<double>::infinity();
  while (iterations < max_iterations) {
    Vec r = reduced_costs(tab, cost);
    bool bland = stale > 4 * tab.m + 40;
    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < tab.ncols; ++j) {
      if (!allowed[j]) continue;
      if (r[j] < best) {
        enter = j;
        if (bland) break;
        best = r[j];
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.m; ++i) {
      double a = tab.t(i, enter);
      if (a > kPivotTol) {
        double ratio = tab.rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave >= 0 &&
             tab.basis[i] < tab.basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    tab.pivot(leave, enter);
    ++iterations;

    Vec cb(tab.m);
    for (int i = 0; i < tab.m; ++i) cb[i] = cost[tab.basis[i]];
    double obj = 0;
    for (int i = 0; i < tab.m; ++i) obj += cb[i] * tab.rhs(i);
    if (obj < last_obj - 1e-12) {
      last_obj = obj;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return true;  // iteration limit; caller inspects count
}

}  // namespace

double LpSolution::complementarity(const LpProblem& p) const {
  double worst = 0.0;
  for (int i = 0; i < p.num_rows(); ++i) {
    double slack = p.rhs[i] - p.rows.row(i).dot(x);
    if (p.relations[i] != RowRelation::Equal)
      worst = std::max(worst, std::abs(duals[i] * slack));
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    bool nn = !p.nonnegative.empty() && p.nonnegative[j];
    if (nn) worst = std::max(worst, std::abs(reduced_costs[j] * x[j]));
  }
  return worst;
}

LpSolution solve_lp(const LpProblem& p, int max_iterations) {
  const int n = p.num_vars();
  const int m = p.num_rows();
  LpSolution sol;

  // Internal orientation: minimize.
  Vec c0 = p.sense == LpSense::Maximize ? Vec(-p.objective) : p.objective;

  // Column layout: for each variable either one column (nonnegative) or a
  // split pair u - v; then one slack per inequality row; then m artificials.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    bool nn = !p.nonnegative.empty() && p.nonnegative[j];
    pos_col[j] = ncols++;
    if (!nn) neg_col[j] = ncols++;
  }
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (p.relations[i] != RowRelation::Equal) slack_col[i] = ncols++;
  const int art0 = ncols;
  ncols += m;

  Tableau tab;
  tab.m = m;
  tab.ncols = ncols;
  tab.t = Mat::Zero(m, ncols + 1);
  tab.basis.resize(m);

  Vec cost = Vec::Zero(ncols);
  Vec phase1 = Vec::Zero(ncols);
  for (int j = 0; j < n; ++j) {
    cost[pos_col[j]] = c0[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -c0[j];
  }

  for (int i = 0; i < m; ++i) {
    double sign = 1.0;
    double b = p.rhs[i];
    double slack = p.relations[i] == RowRelation::LessEqual ? 1.0
                   : p.relations[i] == RowRelation::GreaterEqual ? -1.0
                                                                 : 0.0;
    // Make rhs nonnegative for the initial artificial basis.
    if (b < 0) {
      sign = -1.0;
      b = -b;
      slack = -slack;
    }
    for (int j = 0; j < n; ++j) {
      double a = sign * p.rows(i, j);
      tab.t(i, pos_col[j]) = a;
      if (neg_col[j] >= 0) tab.t(i, neg_col[j]) = -a;
    }
    if (slack_col[i] >= 0) tab.t(i, slack_col[i]) = slack;
    tab.t(i, art0 + i) = 1.0;
    tab.t(i, ncols) = b;
    tab.basis[i] = art0 + i;
    phase1[art0 + i] = 1.0;
  }

  std::vector<bool> allowed(ncols, true);
  int iterations = 0;

  // Phase 1: drive out artificials.
  if (!run_simplex(tab, phase1, allowed, max_iterations, iterations)) {
    sol.status = LpStatus::Unbounded;  // cannot happen for phase 1
    return sol;
  }
  double infeas = 0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= art0) infeas += tab.rhs(i);
  if (infeas > 1e-7) {
    sol.status = LpStatus::Infeasible;
    sol.iterations = iterations;
    return sol;
  }
  // Pivot basic artificials (at zero) out where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < art0) continue;
    for (int j = 0; j < art0; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-7) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  for (int j = art0; j < ncols; ++j) allowed[j] = false;

  // Phase 2.
  bool optimal = run_simplex(tab, cost, allowed, max_iterations, iterations);
  sol.iterations = iterations;
  if (!optimal) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  if (iterations >= max_iterations) {
    sol.status = LpStatus::IterationLimit;
    return sol;
  }

  sol.x = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[i];
    for (int j = 0; j < n; ++j) {
      if (b == pos_col[j]) sol.x[j] += tab.rhs(i);
      if (b == neg_col[j]) sol.x[j] -= tab.rhs(i);
    }
  }
  sol.objective = p.objective.dot(sol.x);

  // Duals from the artificial columns (initial identity basis): the internal
  // minimization has y_i = c_B' * B^{-1} e_i; undo row-sign flips and sense.
  Vec cb(m);
  for (int i = 0; i < m; ++i) cb[i] = cost[tab.basis[i]];
  sol.duals = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    double yi = cb.dot(tab.t.col(art0 + i));
    if (p.rhs[i] < 0) yi = -yi;
    sol.duals[i] = p.sense == LpSense::Maximize ? -yi : yi;
  }
  Vec r = reduced_costs(tab, cost);
  sol.reduced_costs = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    double rj = r[pos_col[j]];
    sol.reduced_costs[j] = p.sense == LpSense::Maximize ? -rj : rj;
  }
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace tnl
