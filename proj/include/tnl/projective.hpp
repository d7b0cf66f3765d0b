#pragma once

#include <vector>

#include "tnl/tensor.hpp"

namespace tnl {

/// A decomposition z ~ sum_i c_i x_i1 (x) ... (x) x_ik into elementary
/// tensors with unit-norm points; sum |c_i| certifies the projective norm
/// from above.
struct Decomposition {
  struct Atom {
    double coefficient = 0.0;
    std::vector<Vec> points;  // one per factor, unit norm
  };
  std::vector<Atom> atoms;
  double residual = 0.0;

  double total_weight() const;
};

struct ProjectiveOptions {
  int max_columns = 4000;
  int max_iterations = 400;
  double pricing_tol = 1e-7;
  double reconstruction_tol = 1e-7;
  InjectiveOptions pricing;
  /// Stop early once upper - lower <= quick_gap (0 disables).
  double quick_gap = 0.0;
};

struct ProjectiveResult {
  NormEstimate estimate;
  Decomposition decomposition;     // witness for `upper`
  DenseTensor dual_witness;        // functional w with eps*-norm <= 1
  double pricing_value = 0.0;      // final pricing oracle value
  bool certified = false;          // pricing closed the gap
};

/// Column generation for the projective norm. Master problem: weight-minimal
/// combination of the current elementary atoms reproducing z. Pricing:
/// injective-norm maximization of the master duals over the factor balls.
ProjectiveResult projective_norm(const DenseTensor& z,
                                 const ProjectiveOptions& opts = {});

/// Euclideanized residual ||z - sum c_i x_1 (x) ... (x) x_k||_h; also
/// re-checks unit norms of the atom points.
double verify_decomposition(const DenseTensor& z, const Decomposition& d);

/// Cheap certified lower bound on the projective norm: best of
/// hilbert^2 / eps-upper (all-euclidean factors) and pairing with supplied
/// dual functionals of certified eps*-norm <= 1.
double projective_lower_quick(const DenseTensor& z);

}  // namespace tnl
