#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnl/io.hpp"
#include "tnl/limits.hpp"

namespace tnl {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
  std::string scenario;
  int kmax = 4;
  int trials = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-5;
  std::string output_path;  // empty = no file output
};

struct ResultRecord {
  std::string scenario;
  std::string inputs_digest;
  Json outputs;
  bool passed = false;
  double wall_time_ms = 0.0;
  std::string tool_version = kToolVersion;

  Json to_json() const;
  /// Writes to_json() atomically when `path` is nonempty.
  void write(const std::string& path) const;
};

/// eps->pi regularization of the identity on euclidean(n): target dim,
/// roots <= n + tol, Fekete roots nondecreasing.
ResultRecord run_identity_regularization(int n, int kmax,
                                         const ExperimentConfig& cfg = {});

/// X = l1(m) (+)_2 euclidean(m): certified d_X * gamma2*(id_X) via
/// 1-complemented restrictions; strict above dim(X) = 2m once m^(3/2) > 2m.
ResultRecord run_tensor_radius_strictness(int m,
                                          const ExperimentConfig& cfg = {});

/// Random complex 2x2 maps linf(2,C) -> l1(2,C): gamma2 vs operator norm
/// (phase nets); the complex pair has the HFP, so ratios stay ~1. Also
/// probes the real counterpart, where ratios above 1 + 1e-2 must appear.
ResultRecord run_hfp_complex(int trials, std::uint64_t seed,
                             const ExperimentConfig& cfg = {});

/// The flat-face construction on linf(2) -> l1(2): ||phi|| = 1 while
/// gamma2(phi) >= sqrt(1 + eps^2/4).
ResultRecord run_hfp_nonstrict(const ExperimentConfig& cfg = {});

struct EllipseSandwichInput {
  std::vector<Vec> k_vertices;  // K by vertices (centrally symmetric)
  std::vector<Vec> l_facets;    // L by facets
  Mat transform;                // T with T(K) inside L
};

/// Feasibility SDP for an ellipse E with T(K) within E within L, solved with
/// a margin objective; negative margin yields a Farkas-type infeasibility
/// certificate. Outputs are labeled evidence; the conjecture is not settled
/// here.
ResultRecord run_ellipse_sandwich(const EllipseSandwichInput& in,
                                  const ExperimentConfig& cfg = {});

}  // namespace tnl
