#pragma once

#include <cstdint>
#include <vector>

#include "tnl/space.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

/// Philox-4x32-10 counter-based generator. Streams are addressed by
/// (seed, stream, counter), so parallel and serial runs draw identical
/// values per trial index.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  double next_uniform();        // (0, 1)
  double next_gaussian();       // standard normal
  Complex next_gaussian_complex();  // variance 1/2 per component

  Vec gaussian_vector(int n);
  Mat gaussian_matrix(int rows, int cols);
  CMat gaussian_matrix_complex(int rows, int cols);

  /// Haar-orthogonal via QR of a Gaussian matrix with sign correction.
  Mat haar_orthogonal(int n);
  CMat haar_unitary(int n);

 private:
  void refill();
  std::uint32_t key_[2];
  std::uint32_t counter_[4];
  std::uint32_t out_[4];
  int have_ = 0;
  bool cached_gaussian_valid_ = false;
  double cached_gaussian_ = 0.0;
};

struct GaussianSample {
  DenseTensor tensor;
  std::uint64_t seed = 0;
  int k = 0;
  int n = 0;
};

/// i.i.d. standard normal coefficients in (euclidean(n))^{(x) k};
/// deterministic for fixed seed.
GaussianSample sample_gaussian_tensor(int n, int k, std::uint64_t seed);

struct McNormsResult {
  double mean_sq = 0.0;   // estimates hs(phi)^{2k}
  double mean = 0.0;      // estimates E||phi^{(x)k} g||
  double hs_target = 0.0; // hs(phi)^k
  int trials = 0;
};

/// Sample statistics of ||phi^{(x)k}(g)|| for standard Gaussian g.
McNormsResult mc_expected_norms(const OperatorMap& phi, int k, int trials,
                                std::uint64_t seed);

struct EpsGrowthRow {
  int k = 0;
  double mean_eps_upper = 0.0;
  double ratio = 0.0;  // mean / sqrt(k log k)
};

/// Mean certified eps-norm upper bounds of Gaussian tensors for k = 2..kmax.
std::vector<EpsGrowthRow> mc_eps_growth(int n, int kmax, int trials,
                                        std::uint64_t seed);

struct WitnessSearchResult {
  DenseTensor witness;
  double image_norm = 0.0;   // ||phi^{(x)k} z||_h
  double eps_upper = 0.0;    // certified upper bound on ||z||_eps
  double ratio = 0.0;
  bool soft_check_passed = true;  // ratio >= hs^k / (3 * mean eps upper)
};

/// Best Gaussian witness for the eps->h lower bound.
WitnessSearchResult search_witness_tensor(const OperatorMap& phi, int k,
                                          int trials, std::uint64_t seed);

}  // namespace tnl
