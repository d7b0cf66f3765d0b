#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tnl/ideal.hpp"
#include "tnl/projective.hpp"
#include "tnl/random.hpp"
#include "tnl/space.hpp"

namespace tnl {

enum class NormPair { EpsToH, HToPi, EpsToPi };

std::string to_string(NormPair pair);

struct LimitsOptions {
  int gaussian_trials = 12;
  int vertex_cap = kDefaultVertexCap;
  std::uint64_t seed = 0x6c8e944dull;
  IdealOptions ideal;
  InjectiveOptions injective;
  ProjectiveOptions projective;
};

struct PowerNormResult {
  NormEstimate estimate;
  std::string witness_id;
  DenseTensor witness;  // domain tensor achieving `lower`
};

/// ||phi^{(x)k} : X^{eps k} -> H^{h k}||: lower from witness candidates,
/// upper = pi2(phi)^k. Requires euclidean codomain.
PowerNormResult norm_eps_to_h(const OperatorMap& phi, int k,
                              const LimitsOptions& opts = {});

/// ||phi^{(x)k} : H^{h k} -> Y^{pi k}|| = eps->h norm of the adjoint.
/// Requires euclidean domain.
PowerNormResult norm_h_to_pi(const OperatorMap& phi, int k,
                             const LimitsOptions& opts = {});

/// ||phi^{(x)k} : X^{eps k} -> Y^{pi k}||: lower from pi-lower/eps-upper of
/// witness candidates, upper = min(gamma2*(phi)^k, factorization products,
/// dimensional bound).
PowerNormResult norm_eps_to_pi(const OperatorMap& phi, int k,
                               const LimitsOptions& opts = {});

struct ConvergenceReport {
  struct Row {
    int k = 0;
    double lower = 0.0;
    double upper = 0.0;
    double root_lower = 0.0;
    double root_upper = 0.0;
    double fekete_root = 0.0;  // best combined root using splits up to k
    std::string witness_id;
  };
  NormPair pair = NormPair::EpsToPi;
  std::vector<Row> rows;
  double target = 0.0;        // pi2 / pi2(adjoint) / gamma2*
  double fekete_lower = 0.0;  // best combined lower bound on the limit
};

/// Runs the per-k estimator for k = 1..kmax, computes the limit target, and
/// combines certified lower bounds across tensor splits (witnesses tensorize
/// because eps is submultiplicative and pi supermultiplicative on splits).
ConvergenceReport regularization_report(const OperatorMap& phi, int kmax,
                                        NormPair pair,
                                        const LimitsOptions& opts = {});

}  // namespace tnl
