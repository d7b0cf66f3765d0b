#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "tnl/types.hpp"

namespace tnl {

enum class SpaceKind {
  Euclidean,
  L1,
  Linf,
  PolytopeVertices,
  PolytopeFacets,
  DirectSum2,
};

/// Declarative description of a finite-dimensional normed space. Polytope
/// kinds are real-only; euclidean/l1/linf support real and complex scalars
/// (complex balls are treated as circled bodies).
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::Euclidean;
  int dim = 0;
  ScalarKind scalar = ScalarKind::Real;
  std::vector<Vec> vertices;  // PolytopeVertices: extreme points of the ball
  std::vector<Vec> facets;    // PolytopeFacets: functionals with |<f,x>| <= 1
  std::shared_ptr<SpaceDescriptor> left;   // DirectSum2 summands
  std::shared_ptr<SpaceDescriptor> right;

  static SpaceDescriptor euclidean(int n, ScalarKind s = ScalarKind::Real);
  static SpaceDescriptor l1(int n, ScalarKind s = ScalarKind::Real);
  static SpaceDescriptor linf(int n, ScalarKind s = ScalarKind::Real);
  static SpaceDescriptor polytope_vertices(std::vector<Vec> verts);
  static SpaceDescriptor polytope_facets(std::vector<Vec> facets);
  static SpaceDescriptor direct_sum2(SpaceDescriptor l, SpaceDescriptor r);

  bool operator==(const SpaceDescriptor& o) const;
};

std::string to_string(const SpaceDescriptor& d);

/// A validated space: descriptor plus caches populated at build time.
/// Immutable after construction; all oracles are pure.
class Space {
 public:
  Space() = default;

  const SpaceDescriptor& descriptor() const { return desc_; }
  SpaceKind kind() const { return desc_.kind; }
  int dim() const { return desc_.dim; }
  ScalarKind scalar() const { return desc_.scalar; }
  bool is_real() const { return desc_.scalar == ScalarKind::Real; }
  bool is_euclidean() const { return desc_.kind == SpaceKind::Euclidean; }

  bool operator==(const Space& o) const { return desc_ == o.desc_; }

  friend Space build_space(const SpaceDescriptor& desc);

 private:
  SpaceDescriptor desc_;
  std::optional<std::vector<Vec>> cached_dual_vertices_;
  friend std::optional<std::vector<Vec>> dual_ball_vertices(const Space&, int);
};

Space build_space(const SpaceDescriptor& desc);

/// Norm of a point. Polytope-by-vertices norms solve the gauge LP.
double vector_norm(const Space& s, const Vec& v);
double vector_norm(const Space& s, const CVec& v);

/// A norming functional: value = ||w|| and f in the dual unit ball with
/// <f,w> = ||w|| (bilinear pairing; for complex spaces Re<f,w> = ||w||).
struct SupportPoint {
  double value = 0.0;
  Vec functional;
};
struct SupportPointC {
  double value = 0.0;
  CVec functional;
};
SupportPoint support_point(const Space& s, const Vec& w);
SupportPointC support_point(const Space& s, const CVec& w);

Space dual_space(const Space& s);

constexpr int kDefaultVertexCap = 1 << 16;

/// Extreme points of the dual unit ball when that ball is a polytope;
/// nullopt when it is not (euclidean factors, complex circled balls,
/// direct sums). Throws CombinatorialBlowup past `cap`.
std::optional<std::vector<Vec>> dual_ball_vertices(const Space& s,
                                                   int cap = kDefaultVertexCap);

/// Delta-net of the dual unit sphere (exact vertex set for polytopal duals,
/// regardless of delta). Real spaces only; see dual_ball_net_complex.
std::vector<Vec> dual_ball_net(const Space& s, double delta,
                               int cap = kDefaultVertexCap);
std::vector<CVec> dual_ball_net_complex(const Space& s, double delta,
                                        int cap = kDefaultVertexCap);

/// Points of the unit ball of `s` itself (not the dual): vertices when
/// polytopal, else a net of the unit sphere.
std::vector<Vec> ball_points(const Space& s, double delta,
                             int cap = kDefaultVertexCap);
std::vector<CVec> ball_points_complex(const Space& s, double delta,
                                      int cap = kDefaultVertexCap);

/// For complex circled balls: representatives of the extreme-point set up to
/// a global phase, adequate for maximizing phase-invariant functions
/// (quadratic forms, norms of images). The grid count is a multiple of 4 so
/// the real embedding of the family is closed under multiplication by i.
std::vector<CVec> circled_ball_representatives(const Space& s, double delta,
                                               int cap = kDefaultVertexCap);

/// Linear map between two spaces, stored dense. Real or complex must match
/// the scalar kind of both endpoint spaces.
struct OperatorMap {
  Space domain;
  Space codomain;
  std::variant<Mat, CMat> matrix;

  OperatorMap() : matrix(Mat()) {}
  OperatorMap(Space dom, Space cod, Mat m);
  OperatorMap(Space dom, Space cod, CMat m);

  bool is_complex() const { return matrix.index() == 1; }
  const Mat& real() const;
  const CMat& cplx() const;
  CMat as_complex() const;
  int rows() const;
  int cols() const;
};

/// Adjoint map between the dual spaces (transpose; conjugate transpose in
/// the complex case, matching the bilinear pairing convention).
OperatorMap adjoint(const OperatorMap& phi);

OperatorMap compose(const OperatorMap& f, const OperatorMap& g);  // f after g

struct OperatorNormResult {
  NormEstimate estimate;
  Vec witness;    // ball point achieving `lower` (real case)
  CVec witness_c; // complex case
};

struct NetOptions {
  double delta = 0.05;
  int cap = kDefaultVertexCap;
};

OperatorNormResult operator_norm(const OperatorMap& phi,
                                 const NetOptions& net = {});

/// The injective tensor product X1 (x)_eps X2 as a polytope-by-facets space:
/// facets are all products f (x) g of dual-ball vertices of the factors.
/// Requires both factors to have polytopal dual balls.
Space injective_product_space(const Space& x1, const Space& x2,
                              int cap = kDefaultVertexCap);

/// phi1 (x) phi2 as a map between explicitly given product spaces
/// (matrix is the Kronecker product).
OperatorMap kronecker_map(const OperatorMap& phi1, const OperatorMap& phi2,
                          Space product_domain, Space product_codomain);

}  // namespace tnl
