#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tnl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class ScalarKind { Real, Complex };

struct TnlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : TnlError {
  using TnlError::TnlError;
};
struct InvalidDescriptor : TnlError {
  using TnlError::TnlError;
};
struct CombinatorialBlowup : TnlError {
  using TnlError::TnlError;
};
struct NotPolytopalError : TnlError {
  using TnlError::TnlError;
};
struct NonEuclideanError : TnlError {
  using TnlError::TnlError;
};
struct MemoryGuardError : TnlError {
  using TnlError::TnlError;
};
struct SolverFailure : TnlError {
  using TnlError::TnlError;
};
struct InfeasibleError : TnlError {
  using TnlError::TnlError;
};
struct UnboundedError : TnlError {
  using TnlError::TnlError;
};
struct StalledError : TnlError {
  using TnlError::TnlError;
};

/// Certified two-sided estimate of a norm. `lower` is always achieved by a
/// witness the caller can re-evaluate; `upper` carries the tag of the
/// certificate that produced it (exact-enumeration, net, ideal-norm-bound,
/// sdp, ...).
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  std::string upper_certificate;

  bool exact(double tol = 1e-9) const { return upper - lower <= tol; }
};

inline NormEstimate exact_estimate(double v, std::string method) {
  return NormEstimate{v, v, std::move(method), "exact-enumeration"};
}

}  // namespace tnl
