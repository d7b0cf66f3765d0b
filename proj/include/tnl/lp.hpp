#pragma once

#include <vector>

#include "tnl/types.hpp"

namespace tnl {

enum class LpSense { Minimize, Maximize };
enum class RowRelation { LessEqual, Equal, GreaterEqual };

/// Dense linear program. Variables are free unless marked nonnegative.
struct LpProblem {
  LpSense sense = LpSense::Minimize;
  Vec objective;                 // length n
  Mat rows;                      // m x n constraint matrix
  std::vector<RowRelation> relations;
  Vec rhs;                       // length m
  std::vector<bool> nonnegative;  // per-variable; empty = all free

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Vec x;
  double objective = 0.0;
  Vec duals;           // one multiplier per row, sign convention of `sense`
  Vec reduced_costs;   // per variable at the final basis
  int iterations = 0;

  /// Max complementary-slackness violation |dual_i * slack_i| over rows plus
  /// |reduced_cost_j * x_j| over nonnegative variables.
  double complementarity(const LpProblem& p) const;
};

/// Two-phase dense simplex with Bland's rule fallback. Deterministic.
LpSolution solve_lp(const LpProblem& p, int max_iterations = 50000);

}  // namespace tnl
