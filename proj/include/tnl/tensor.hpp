#pragma once

#include <cstdint>
#include <vector>

#include "tnl/space.hpp"
#include "tnl/types.hpp"

namespace tnl {

constexpr std::int64_t kMemoryGuardEntries = 10'000'000;

/// Dense order-k tensor with one tagged factor space per axis. Coefficients
/// are stored flat in row-major axis order (axis i <-> factor i, axis 0
/// slowest). Real scalars only.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(std::vector<Space> factors, Vec coefficients);

  int order() const { return static_cast<int>(factors_.size()); }
  const std::vector<Space>& factors() const { return factors_; }
  const Space& factor(int i) const { return factors_[i]; }
  std::vector<int> dims() const;
  std::int64_t size() const { return coeffs_.size(); }

  const Vec& coefficients() const { return coeffs_; }
  Vec& coefficients() { return coeffs_; }

  double coeff(const std::vector<int>& index) const;
  std::int64_t flat_index(const std::vector<int>& index) const;

  static DenseTensor zeros(std::vector<Space> factors);
  static DenseTensor basis(std::vector<Space> factors,
                           const std::vector<int>& index);
  /// Order-2 tensor from a matrix: axis 0 = rows.
  static DenseTensor from_matrix(const Space& row_space, const Space& col_space,
                                 const Mat& m);
  Mat as_matrix() const;  // order-2 only

 private:
  std::vector<Space> factors_;
  Vec coeffs_;
};

DenseTensor tensor_product(const DenseTensor& z1, const DenseTensor& z2);

/// Applies the matrix of phi along every axis; factors become k copies of
/// the codomain.
DenseTensor apply_operator_power(const OperatorMap& phi, int k,
                                 const DenseTensor& z);

/// Contract axis `axis` with the functional f: result has order k-1.
DenseTensor contract_axis(const DenseTensor& z, int axis, const Vec& f);

double hilbert_norm(const DenseTensor& z);

struct InjectiveOptions {
  int multistarts = 32;
  int max_basis_starts = 4096;
  int max_sweeps = 200;
  double improvement_tol = 1e-10;
  int enumeration_cap = kDefaultVertexCap;
  double net_delta = 0.05;
  std::uint64_t seed = 0x7e4d5c1b2a390817ull;
};

struct InjectiveResult {
  NormEstimate estimate;
  std::vector<Vec> witness;  // dual-ball functionals, one per axis
  double witness_value = 0.0;
};

/// sup |<a_1 (x) ... (x) a_k, z>| over dual unit balls. Exact by enumeration
/// when every factor dual ball is polytopal and the tuple count fits the
/// cap; otherwise alternating-ascent lower bound plus the best available
/// certified upper bound (net enumeration, matricization, Hilbert norm).
InjectiveResult injective_norm(const DenseTensor& z,
                               const InjectiveOptions& opts = {});

/// Value of the product functional at z (bilinear pairing).
double pair_with_rank_one(const DenseTensor& z, const std::vector<Vec>& fs);

/// Spectral norm of the (rows=subset, cols=rest) unfolding minimized over
/// bipartitions; an upper bound for all-euclidean factors.
double matricization_upper_bound(const DenseTensor& z);

Mat unfold(const DenseTensor& z, const std::vector<int>& row_axes);

}  // namespace tnl
