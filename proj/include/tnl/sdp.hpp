#pragma once

#include <string>
#include <vector>

#include "tnl/lp.hpp"
#include "tnl/types.hpp"

namespace tnl {

enum class SdpStatus { Optimal, Infeasible, MaxIterations, NumericalFailure };

struct SdpOptions {
  double gap_tolerance = 1e-7;
  double feasibility_tolerance = 1e-8;
  int max_iterations = 200;
};

/// Block-diagonal standard-form semidefinite program
///   min <C,X>  s.t.  <A_i, X> = b_i,  X >= 0,
/// with dual  max b'y  s.t.  C - sum_i y_i A_i = S >= 0.
struct SdpStandardForm {
  std::vector<int> block_dims;

  struct Entry {
    int block = 0;
    Mat coeff;  // symmetric, block_dims[block] square
  };
  std::vector<Entry> objective;            // C, sparse over blocks
  std::vector<std::vector<Entry>> rows;    // A_i
  Vec rhs;                                 // b

  int num_constraints() const { return static_cast<int>(rhs.size()); }
};

struct SdpResult {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<Mat> X;   // primal blocks
  Vec y;                // dual vector
  std::vector<Mat> S;   // dual slack blocks
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;

  /// Farkas-type improving ray (y, S) with A'(y) + S ~ 0, b'y > 0, reported
  /// when primal infeasibility is detected.
  Vec ray_y;
};

/// Infeasible-start primal-dual path-following interior-point method with
/// the HKM direction and Mehrotra predictor-corrector. Dense; sized for
/// desk-scale instances (blocks up to ~200, a few thousand constraints).
SdpResult solve_sdp(const SdpStandardForm& problem, const SdpOptions& opts = {});

/// Linear-matrix-inequality form:
///   max c'y  s.t.  F0^l + sum_i y_i Fi^l >= 0  for each block l.
/// Compiled as the dual of a standard-form problem; the reported solution is
/// the y vector, and `multipliers` are the primal blocks (one PSD multiplier
/// per LMI block).
class LmiProblem {
 public:
  int add_variables(int count);
  /// F0 + sum_i y_{vars[i]} Fi >= 0; `mats` holds F0 first, then Fi per var.
  void add_lmi_block(const std::vector<int>& vars, const Mat& f0,
                     const std::vector<Mat>& fi);
  /// a0 + a'y >= 0 as a 1x1 block over all variables (sparse `coeffs` pairs).
  void add_scalar_inequality(double a0,
                             const std::vector<std::pair<int, double>>& coeffs);
  void set_objective_max(const std::vector<std::pair<int, double>>& coeffs);

  int num_variables() const { return num_vars_; }

  struct Solution {
    SdpStatus status = SdpStatus::NumericalFailure;
    Vec y;
    double objective = 0.0;
    double duality_gap = 0.0;
    std::vector<Mat> multipliers;
    std::vector<Mat> lmi_values;  // F0 + sum y_i Fi at the solution
    int iterations = 0;
  };
  Solution solve(const SdpOptions& opts = {}) const;

 private:
  int num_vars_ = 0;
  struct Block {
    std::vector<int> vars;
    Mat f0;
    std::vector<Mat> fi;
  };
  std::vector<Block> blocks_;
  std::vector<std::pair<int, double>> objective_;
};

/// Entry-constrained form over PSD matrix variables:
///   min/max sum of entry terms  s.t. linear (in)equalities on entries.
class EntrySdpProblem {
 public:
  int add_psd_variable(int size);

  struct Term {
    int var = 0;
    int row = 0;
    int col = 0;
    double coeff = 0.0;
  };
  void add_constraint(const std::vector<Term>& terms, RowRelation rel,
                      double rhs);
  void set_objective(LpSense sense, const std::vector<Term>& terms);

  struct Solution {
    SdpStatus status = SdpStatus::NumericalFailure;
    std::vector<Mat> values;  // one per PSD variable
    double objective = 0.0;
    double duality_gap = 0.0;
    Vec duals;  // per constraint
    int iterations = 0;
  };
  Solution solve(const SdpOptions& opts = {}) const;

 private:
  std::vector<int> var_sizes_;
  struct Constraint {
    std::vector<Term> terms;
    RowRelation rel;
    double rhs;
  };
  std::vector<Constraint> constraints_;
  LpSense sense_ = LpSense::Minimize;
  std::vector<Term> objective_;
};

}  // namespace tnl
