#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tnl/limits.hpp"
#include "tnl/projective.hpp"
#include "tnl/space.hpp"
#include "tnl/tensor.hpp"

namespace tnl {

using Json = nlohmann::json;

// JSON schemas (documented in README.md):
//   space:    {"kind", "dim", "scalar", "vertices"?, "facets"?, "summands"?}
//   operator: {"domain", "codomain", "matrix"} (complex entries as [re, im])
//   tensor:   {"factors", "shape", "data"} (flat, row-major)
Json space_to_json(const SpaceDescriptor& d);
SpaceDescriptor space_from_json(const Json& j);

Json operator_to_json(const OperatorMap& phi);
OperatorMap operator_from_json(const Json& j);

Json tensor_to_json(const DenseTensor& z);
DenseTensor tensor_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d);
Json report_to_json(const ConvergenceReport& r);
std::string report_to_csv(const ConvergenceReport& r);

/// Shorthand space syntax used by the CLI: "euclidean:3", "l1:2", "linf:4",
/// "linf:2:complex", "sum(l1:5,euclidean:5)".
SpaceDescriptor parse_space_shorthand(const std::string& text);

/// SHA-256 hex digest of the canonical (sorted-key, compact) serialization.
std::string canonical_digest(const Json& j);

/// Write via temp file + rename so readers never observe partial content.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace tnl
