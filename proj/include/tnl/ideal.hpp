#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnl/sdp.hpp"
#include "tnl/space.hpp"
#include "tnl/types.hpp"

namespace tnl {

/// Discrete Pietsch measure certifying pi_2(phi)^2 <= t: weights over
/// dual-ball points f_j with Phi'Phi <= t * sum_j lambda_j f_j f_j'.
struct PietschWitness {
  std::vector<Vec> points;
  Vec weights;   // probability vector
  double scale = 0.0;  // t = pi2^2
  /// Most negative eigenvalue of the domination residual (>= -1e-8 expected).
  double domination_residual(const OperatorMap& phi) const;
};

/// phi = phi2 o phi1 through euclidean(N) with certified leg norms.
struct HilbertFactorization {
  int inner_dim = 0;
  Mat phi1;  // N x dim(domain)
  Mat phi2;  // dim(codomain) x N
  double phi1_norm = 0.0;  // ||phi1 : X -> l2||
  double phi2_norm = 0.0;  // ||phi2 : l2 -> Y||
  double reconstruction_error(const OperatorMap& phi) const;
};

double hs_norm(const OperatorMap& phi);

struct IdealOptions {
  SdpOptions sdp;
  double net_delta = 1e-2;
  int vertex_cap = kDefaultVertexCap;
  /// linf domains with more than this dimension get a sign-vector subsample
  /// in gamma2_star (results demoted to lower bounds).
  int linf_exact_limit = 8;
  int subsample_size = 256;
  std::uint64_t seed = 0x51a7e3d9u;
};

struct Pi2Result {
  NormEstimate estimate;
  PietschWitness witness;
};

/// 2-summing norm. Exact (SDP) for polytopal domain dual balls and for
/// euclidean domains; hs shortcut when both spaces are euclidean; bracketed
/// bounds via nets otherwise.
Pi2Result pi2(const OperatorMap& phi, const IdealOptions& opts = {});
/// Same but never taking the hs shortcut (always solves the SDP).
Pi2Result pi2_sdp(const OperatorMap& phi, const IdealOptions& opts = {});

/// Lower bound sup { hs(phi lambda) : ||lambda: l2 -> X|| <= 1 } by
/// multistart projected ascent.
double pi2_sup_lower(const OperatorMap& phi, int starts = 16,
                     std::uint64_t seed = 0x9e3779b9u);

struct Gamma2Result {
  NormEstimate estimate;
  std::optional<HilbertFactorization> factorization;
};

/// Hilbert-space factorization norm via the block SDP
///   min t, [[P, Phi'],[Phi, Q]] >= 0, <v,Pv> <= t on B_X, <f,Qf> <= t on
///   B_{Y*} (P <= tI / Q <= tI for euclidean sides).
Gamma2Result gamma2(const OperatorMap& phi, const IdealOptions& opts = {});

struct Gamma2StarResult {
  NormEstimate estimate;
  double trace_sdp_value = 0.0;        // primal trace-duality SDP
  double factorization_upper = 0.0;    // pi2(phi1) * pi2(phi2*) cross-check
  HilbertFactorization factorization;  // the cross-check factorization
  bool subsampled = false;             // vertex subsample: lower bound only
};

/// 2-dominated norm via the trace-duality SDP
///   max |Tr(Phi Psi)| over gamma2(psi: Y -> X) <= 1,
/// cross-checked against an alternating upper bound over factorizations.
Gamma2StarResult gamma2_star(const OperatorMap& phi,
                             const IdealOptions& opts = {});

/// Monte Carlo average of u (beta phi alpha) u^{-1} over Haar-random
/// orthogonal (unitary in the complex case) u; converges to
/// (Tr(beta phi alpha)/N) I.
Mat haar_twirl(const OperatorMap& phi, const Mat& alpha, const Mat& beta,
               int samples, std::uint64_t seed);
CMat haar_twirl_complex(const CMat& middle, int samples, std::uint64_t seed);

}  // namespace tnl
