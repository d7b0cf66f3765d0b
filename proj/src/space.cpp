#include "tnl/space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include "tnl/lp.hpp"

namespace tnl {

namespace {

constexpr double kEps = 1e-9;

bool vec_equal(const Vec& a, const Vec& b, double tol = 1e-12) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool list_contains(const std::vector<Vec>& list, const Vec& v, double tol) {
  for (const auto& w : list)
    if (vec_equal(w, v, tol)) return true;
  return false;
}

void check_negation_closed(const std::vector<Vec>& list, const char* what) {
  for (const auto& v : list)
    if (!list_contains(list, Vec(-v), 1e-12))
      throw InvalidDescriptor(std::string(what) +
                              " list is not closed under negation");
}

void check_spanning(const std::vector<Vec>& list, int dim, const char* what) {
  Mat m(dim, (int)list.size());
  for (size_t j = 0; j < list.size(); ++j) m.col((int)j) = list[j];
  Eigen::JacobiSVD<Mat> svd(m);
  if (svd.rank() < dim)
    throw InvalidDescriptor(std::string(what) + " list does not span the space");
}

// Gauge of `target` with respect to conv(points): min sum|c| over
// sum c_j p_j = target. Infinite (returns <0 as sentinel) when infeasible.
double gauge_by_points(const std::vector<Vec>& points, const Vec& target) {
  const int m = (int)points.size();
  const int n = (int)target.size();
  LpProblem lp;
  lp.sense = LpSense::Minimize;
  lp.objective = Vec::Ones(2 * m);
  lp.rows = Mat::Zero(n, 2 * m);
  for (int j = 0; j < m; ++j) {
    lp.rows.col(j) = points[j];
    lp.rows.col(m + j) = -points[j];
  }
  lp.relations.assign(n, RowRelation::Equal);
  lp.rhs = target;
  lp.nonnegative.assign(2 * m, true);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return -1.0;
  return sol.objective;
}

// Drop points lying strictly inside the convex hull of the others.
std::vector<Vec> prune_interior(const std::vector<Vec>& points) {
  std::vector<Vec> kept;
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      if (list_contains(kept, points[j], 1e-12) || j > i)
        others.push_back(points[j]);
    }
    double g = others.empty() ? -1.0 : gauge_by_points(others, points[i]);
    if (g < 0 || g > 1.0 - 1e-9) kept.push_back(points[i]);
  }
  return kept;
}

std::vector<Vec> dedup(std::vector<Vec> pts) {
  std::vector<Vec> out;
  for (auto& p : pts)
    if (!list_contains(out, p, 1e-12)) out.push_back(std::move(p));
  return out;
}

int net_phase_count(double delta) {
  // Chord distance <= delta needs angular step 2*asin(delta/2); the count is
  // rounded up to a multiple of 4 so the family is closed under i-rotation.
  double step = 2.0 * std::asin(std::min(1.0, delta / 2.0));
  int count = (int)std::ceil(2.0 * M_PI / step);
  return ((count + 3) / 4) * 4;
}

// Net of the euclidean unit sphere in R^n, chord resolution delta.
void sphere_net_rec(int n, double delta, std::vector<Vec>& out, int cap) {
  if (n == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return;
  }
  if (n == 2) {
    int count = net_phase_count(delta);
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * M_PI * i / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
      if ((int)out.size() > cap) throw CombinatorialBlowup("sphere net exceeds cap");
    }
    return;
  }
  // Polar bands: theta in [0, pi] at step delta, sub-net at delta/2.
  std::vector<Vec> sub;
  sphere_net_rec(n - 1, delta / 2.0, sub, cap);
  int bands = std::max(2, (int)std::ceil(M_PI / delta) + 1);
  for (int b = 0; b <= bands; ++b) {
    double theta = M_PI * b / bands;
    double c = std::cos(theta), s = std::sin(theta);
    if (std::abs(s) < 1e-14) {
      Vec v = Vec::Zero(n);
      v[0] = c;
      out.push_back(v);
      continue;
    }
    for (const auto& u : sub) {
      Vec v(n);
      v[0] = c;
      v.tail(n - 1) = s * u;
      out.push_back(v);
      if ((int)out.size() > cap) throw CombinatorialBlowup("sphere net exceeds cap");
    }
  }
}

std::vector<Vec> sphere_net(int n, double delta, int cap) {
  std::vector<Vec> out;
  sphere_net_rec(n, delta, out, cap);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors.

SpaceDescriptor SpaceDescriptor::euclidean(int n, ScalarKind s) {
  SpaceDescriptor d;
  d.kind = SpaceKind::Euclidean;
  d.dim = n;
  d.scalar = s;
  return d;
}
SpaceDescriptor SpaceDescriptor::l1(int n, ScalarKind s) {
  SpaceDescriptor d;
  d.kind = SpaceKind::L1;
  d.dim = n;
  d.scalar = s;
  return d;
}
SpaceDescriptor SpaceDescriptor::linf(int n, ScalarKind s) {
  SpaceDescriptor d;
  d.kind = SpaceKind::Linf;
  d.dim = n;
  d.scalar = s;
  return d;
}
SpaceDescriptor SpaceDescriptor::polytope_vertices(std::vector<Vec> verts) {
  SpaceDescriptor d;
  d.kind = SpaceKind::PolytopeVertices;
  d.dim = verts.empty() ? 0 : (int)verts.front().size();
  d.vertices = std::move(verts);
  return d;
}
SpaceDescriptor SpaceDescriptor::polytope_facets(std::vector<Vec> facets) {
  SpaceDescriptor d;
  d.kind = SpaceKind::PolytopeFacets;
  d.dim = facets.empty() ? 0 : (int)facets.front().size();
  d.facets = std::move(facets);
  return d;
}
SpaceDescriptor SpaceDescriptor::direct_sum2(SpaceDescriptor l,
                                             SpaceDescriptor r) {
  SpaceDescriptor d;
  d.kind = SpaceKind::DirectSum2;
  d.dim = l.dim + r.dim;
  d.scalar = l.scalar;
  d.left = std::make_shared<SpaceDescriptor>(std::move(l));
  d.right = std::make_shared<SpaceDescriptor>(std::move(r));
  return d;
}

bool SpaceDescriptor::operator==(const SpaceDescriptor& o) const {
  if (kind != o.kind || dim != o.dim || scalar != o.scalar) return false;
  auto lists_equal = [](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!vec_equal(a[i], b[i])) return false;
    return true;
  };
  if (!lists_equal(vertices, o.vertices) || !lists_equal(facets, o.facets))
    return false;
  if ((left == nullptr) != (o.left == nullptr)) return false;
  if (left && !(*left == *o.left)) return false;
  if ((right == nullptr) != (o.right == nullptr)) return false;
  if (right && !(*right == *o.right)) return false;
  return true;
}

std::string to_string(const SpaceDescriptor& d) {
  std::ostringstream os;
  switch (d.kind) {
    case SpaceKind::Euclidean: os << "euclidean"; break;
    case SpaceKind::L1: os << "l1"; break;
    case SpaceKind::Linf: os << "linf"; break;
    case SpaceKind::PolytopeVertices: os << "polytope-vertices"; break;
    case SpaceKind::PolytopeFacets: os << "polytope-facets"; break;
    case SpaceKind::DirectSum2:
      os << "sum(" << to_string(*d.left) << "," << to_string(*d.right) << ")";
      return os.str();
  }
  os << ":" << d.dim;
  if (d.scalar == ScalarKind::Complex) os << ":complex";
  return os.str();
}

// ---------------------------------------------------------------------------
// Construction.

Space build_space(const SpaceDescriptor& desc) {
  SpaceDescriptor d = desc;
  if (d.dim <= 0) throw InvalidDescriptor("space dimension must be positive");
  switch (d.kind) {
    case SpaceKind::Euclidean:
    case SpaceKind::L1:
    case SpaceKind::Linf:
      break;
    case SpaceKind::PolytopeVertices: {
      if (d.scalar == ScalarKind::Complex)
        throw InvalidDescriptor("polytope spaces are real-only");
      if (d.vertices.empty()) throw InvalidDescriptor("empty vertex list");
      for (const auto& v : d.vertices)
        if ((int)v.size() != d.dim)
          throw InvalidDescriptor("vertex dimension mismatch");
      d.vertices = dedup(d.vertices);
      check_negation_closed(d.vertices, "vertex");
      check_spanning(d.vertices, d.dim, "vertex");
      d.vertices = prune_interior(d.vertices);
      break;
    }
    case SpaceKind::PolytopeFacets: {
      if (d.scalar == ScalarKind::Complex)
        throw InvalidDescriptor("polytope spaces are real-only");
      if (d.facets.empty()) throw InvalidDescriptor("empty facet list");
      for (const auto& f : d.facets)
        if ((int)f.size() != d.dim)
          throw InvalidDescriptor("facet dimension mismatch");
      d.facets = dedup(d.facets);
      check_negation_closed(d.facets, "facet");
      check_spanning(d.facets, d.dim, "facet");  // unbounded ball otherwise
      d.facets = prune_interior(d.facets);
      break;
    }
    case SpaceKind::DirectSum2: {
      if (!d.left || !d.right)
        throw InvalidDescriptor("direct sum needs two summands");
      Space l = build_space(*d.left);
      Space r = build_space(*d.right);
      if (l.scalar() != r.scalar())
        throw InvalidDescriptor("direct sum summands disagree on scalar");
      d.left = std::make_shared<SpaceDescriptor>(l.descriptor());
      d.right = std::make_shared<SpaceDescriptor>(r.descriptor());
      if (d.dim != d.left->dim + d.right->dim)
        throw InvalidDescriptor("direct sum dimension mismatch");
      d.scalar = d.left->scalar;
      break;
    }
  }
  Space s;
  s.desc_ = std::move(d);
  // Cache dual-ball vertices when cheap.
  const auto& dd = s.desc_;
  if (dd.scalar == ScalarKind::Real) {
    if (dd.kind == SpaceKind::Linf) {
      std::vector<Vec> verts;
      for (int i = 0; i < dd.dim; ++i) {
        Vec e = Vec::Zero(dd.dim);
        e[i] = 1.0;
        verts.push_back(e);
        verts.push_back(-e);
      }
      s.cached_dual_vertices_ = std::move(verts);
    } else if (dd.kind == SpaceKind::PolytopeFacets) {
      s.cached_dual_vertices_ = dd.facets;
    } else if (dd.kind == SpaceKind::L1 && dd.dim <= 12) {
      std::vector<Vec> verts;
      for (std::int64_t mask = 0; mask < (1LL << dd.dim); ++mask) {
        Vec v(dd.dim);
        for (int i = 0; i < dd.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(v);
      }
      s.cached_dual_vertices_ = std::move(verts);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Norms and norming functionals.

SupportPoint support_point(const Space& s, const Vec& w) {
  if ((int)w.size() != s.dim())
    throw DimensionMismatch("support_point: point has wrong dimension");
  if (!s.is_real())
    throw InvalidDescriptor("real support_point on a complex space");
  const int n = s.dim();
  switch (s.kind()) {
    case SpaceKind::Euclidean: {
      double nrm = w.norm();
      return {nrm, nrm > 0 ? Vec(w / nrm) : Vec::Zero(n)};
    }
    case SpaceKind::L1: {
      Vec f(n);
      for (int i = 0; i < n; ++i) f[i] = w[i] >= 0 ? 1.0 : -1.0;
      return {w.cwiseAbs().sum(), f};
    }
    case SpaceKind::Linf: {
      int idx = 0;
      double best = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(w[i]) > best) {
          best = std::abs(w[i]);
          idx = i;
        }
      Vec f = Vec::Zero(n);
      f[idx] = w[idx] >= 0 ? 1.0 : -1.0;
      return {best, f};
    }
    case SpaceKind::PolytopeFacets: {
      double best = -1;
      Vec arg = Vec::Zero(n);
      for (const auto& f : s.descriptor().facets) {
        double v = f.dot(w);
        if (std::abs(v) > best) {
          best = std::abs(v);
          arg = v >= 0 ? f : Vec(-f);
        }
      }
      return {best, arg};
    }
    case SpaceKind::PolytopeVertices: {
      // max <f,w> over the dual ball {f : |<f,v_j>| <= 1}.
      if (w.cwiseAbs().maxCoeff() == 0.0) return {0.0, Vec::Zero(n)};
      const auto& verts = s.descriptor().vertices;
      LpProblem lp;
      lp.sense = LpSense::Maximize;
      lp.objective = w;
      lp.rows = Mat::Zero((int)verts.size(), n);
      for (size_t j = 0; j < verts.size(); ++j) lp.rows.row((int)j) = verts[j];
      lp.relations.assign(verts.size(), RowRelation::LessEqual);
      lp.rhs = Vec::Ones((int)verts.size());
      // The list is closed under negation, so one-sided rows suffice.
      LpSolution sol = solve_lp(lp);
      if (sol.status != LpStatus::Optimal)
        throw SolverFailure("gauge LP failed on polytope-vertices space");
      return {sol.objective, sol.x};
    }
    case SpaceKind::DirectSum2: {
      Space l = build_space(*s.descriptor().left);
      Space r = build_space(*s.descriptor().right);
      SupportPoint a = support_point(l, Vec(w.head(l.dim())));
      SupportPoint b = support_point(r, Vec(w.tail(r.dim())));
      double nrm = std::hypot(a.value, b.value);
      Vec f = Vec::Zero(n);
      if (nrm > 0) {
        f.head(l.dim()) = (a.value / nrm) * a.functional;
        f.tail(r.dim()) = (b.value / nrm) * b.functional;
      }
      return {nrm, f};
    }
  }
  throw TnlError("unreachable");
}

SupportPointC support_point(const Space& s, const CVec& w) {
  if ((int)w.size() != s.dim())
    throw DimensionMismatch("support_point: point has wrong dimension");
  if (s.is_real()) {
    if (w.imag().cwiseAbs().maxCoeff() > 0)
      throw InvalidDescriptor("complex point on a real space");
    SupportPoint sp = support_point(s, Vec(w.real()));
    return {sp.value, sp.functional.cast<Complex>()};
  }
  const int n = s.dim();
  auto phase_conj = [](Complex z) {
    double a = std::abs(z);
    return a > 0 ? Complex(std::conj(z) / a) : Complex(1.0, 0.0);
  };
  switch (s.kind()) {
    case SpaceKind::Euclidean: {
      double nrm = w.norm();
      CVec f = nrm > 0 ? CVec(w.conjugate() / nrm) : CVec(CVec::Zero(n));
      return {nrm, f};
    }
    case SpaceKind::L1: {
      CVec f(n);
      double nrm = 0;
      for (int i = 0; i < n; ++i) {
        f[i] = phase_conj(w[i]);
        nrm += std::abs(w[i]);
      }
      return {nrm, f};
    }
    case SpaceKind::Linf: {
      int idx = 0;
      double best = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(w[i]) > best) {
          best = std::abs(w[i]);
          idx = i;
        }
      CVec f = CVec::Zero(n);
      f[idx] = phase_conj(w[idx]);
      return {best, f};
    }
    case SpaceKind::DirectSum2: {
      Space l = build_space(*s.descriptor().left);
      Space r = build_space(*s.descriptor().right);
      SupportPointC a = support_point(l, CVec(w.head(l.dim())));
      SupportPointC b = support_point(r, CVec(w.tail(r.dim())));
      double nrm = std::hypot(a.value, b.value);
      CVec f = CVec::Zero(n);
      if (nrm > 0) {
        f.head(l.dim()) = (a.value / nrm) * a.functional;
        f.tail(r.dim()) = (b.value / nrm) * b.functional;
      }
      return {nrm, f};
    }
    default:
      throw InvalidDescriptor("complex polytope spaces are not supported");
  }
}

double vector_norm(const Space& s, const Vec& v) {
  return support_point(s, v).value;
}
double vector_norm(const Space& s, const CVec& v) {
  return support_point(s, v).value;
}

// ---------------------------------------------------------------------------
// Duality.

Space dual_space(const Space& s) {
  const auto& d = s.descriptor();
  switch (d.kind) {
    case SpaceKind::Euclidean:
      return build_space(SpaceDescriptor::euclidean(d.dim, d.scalar));
    case SpaceKind::L1:
      return build_space(SpaceDescriptor::linf(d.dim, d.scalar));
    case SpaceKind::Linf:
      return build_space(SpaceDescriptor::l1(d.dim, d.scalar));
    case SpaceKind::PolytopeVertices:
      return build_space(SpaceDescriptor::polytope_facets(d.vertices));
    case SpaceKind::PolytopeFacets:
      return build_space(SpaceDescriptor::polytope_vertices(d.facets));
    case SpaceKind::DirectSum2: {
      Space l = dual_space(build_space(*d.left));
      Space r = dual_space(build_space(*d.right));
      return build_space(
          SpaceDescriptor::direct_sum2(l.descriptor(), r.descriptor()));
    }
  }
  throw TnlError("unreachable");
}

namespace {

// Vertices of the polytope {f : <g_j, f> <= 1} for a negation-closed list g:
// brute-force over n-subsets of active constraints. Small dimensions only.
std::vector<Vec> enumerate_polar_vertices(const std::vector<Vec>& gens, int n,
                                          int cap) {
  if (n > 4)
    throw CombinatorialBlowup(
        "polar vertex enumeration limited to dimension <= 4");
  const int m = (int)gens.size();
  std::vector<Vec> out;
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Mat a(n, n);
      for (int i = 0; i < n; ++i) a.row(i) = gens[idx[i]];
      Eigen::FullPivLU<Mat> lu(a);
      if (!lu.isInvertible()) return;
      Vec f = lu.solve(Vec::Ones(n));
      for (const auto& g : gens)
        if (g.dot(f) > 1.0 + 1e-8) return;
      if (!list_contains(out, f, 1e-8)) {
        out.push_back(f);
        if ((int)out.size() > cap)
          throw CombinatorialBlowup("polar vertex count exceeds cap");
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (n == 1) {
    double best = 0;
    for (const auto& g : gens) best = std::max(best, std::abs(g[0]));
    out.push_back(Vec::Constant(1, 1.0 / best));
    out.push_back(Vec::Constant(1, -1.0 / best));
    return out;
  }
  rec(0, 0);
  return out;
}

}  // namespace

std::optional<std::vector<Vec>> dual_ball_vertices(const Space& s, int cap) {
  const auto& d = s.descriptor();
  if (d.scalar == ScalarKind::Complex) return std::nullopt;  // circled balls
  if (s.cached_dual_vertices_) {
    if ((int)s.cached_dual_vertices_->size() > cap)
      throw CombinatorialBlowup("dual vertex count exceeds cap");
    return s.cached_dual_vertices_;
  }
  switch (d.kind) {
    case SpaceKind::Euclidean:
    case SpaceKind::DirectSum2:
      return std::nullopt;
    case SpaceKind::Linf:
    case SpaceKind::PolytopeFacets:
      break;  // cached at build
    case SpaceKind::L1: {
      if (d.dim >= 31 || (1LL << d.dim) > cap)
        throw CombinatorialBlowup("2^n sign vectors exceed cap");
      std::vector<Vec> verts;
      for (std::int64_t mask = 0; mask < (1LL << d.dim); ++mask) {
        Vec v(d.dim);
        for (int i = 0; i < d.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(v);
      }
      return verts;
    }
    case SpaceKind::PolytopeVertices:
      return enumerate_polar_vertices(d.vertices, d.dim, cap);
  }
  return s.cached_dual_vertices_;
}

std::vector<Vec> dual_ball_net(const Space& s, double delta, int cap) {
  if (delta <= 0.0 || delta >= 1.0)
    throw TnlError("net resolution must lie in (0,1)");
  if (!s.is_real())
    throw InvalidDescriptor("use dual_ball_net_complex for complex spaces");
  if (auto verts = dual_ball_vertices(s, cap)) return *verts;
  const auto& d = s.descriptor();
  if (d.kind == SpaceKind::Euclidean) return sphere_net(d.dim, delta, cap);
  if (d.kind == SpaceKind::DirectSum2) {
    Space l = build_space(*d.left);
    Space r = build_space(*d.right);
    std::vector<Vec> nl = dual_ball_net(l, delta / 2.0, cap);
    std::vector<Vec> nr = dual_ball_net(r, delta / 2.0, cap);
    int bands = std::max(2, (int)std::ceil(M_PI / 2.0 / delta));
    std::vector<Vec> out;
    for (int b = 0; b <= bands; ++b) {
      double t = M_PI / 2.0 * b / bands;
      double c = std::cos(t), sn = std::sin(t);
      for (const auto& f : nl) {
        if (sn < 1e-14) {
          Vec v = Vec::Zero(s.dim());
          v.head(l.dim()) = f;
          if (!list_contains(out, v, 1e-12)) out.push_back(v);
          continue;
        }
        for (const auto& g : nr) {
          Vec v(s.dim());
          v.head(l.dim()) = c * f;
          v.tail(r.dim()) = sn * g;
          out.push_back(v);
          if ((int)out.size() > cap)
            throw CombinatorialBlowup("direct-sum net exceeds cap");
        }
      }
    }
    return out;
  }
  throw TnlError("unreachable net request");
}

std::vector<CVec> dual_ball_net_complex(const Space& s, double delta, int cap) {
  if (delta <= 0.0 || delta >= 1.0)
    throw TnlError("net resolution must lie in (0,1)");
  const auto& d = s.descriptor();
  if (d.scalar == ScalarKind::Real) {
    std::vector<Vec> re = dual_ball_net(s, delta, cap);
    std::vector<CVec> out;
    out.reserve(re.size());
    for (const auto& v : re) out.push_back(v.cast<Complex>());
    return out;
  }
  const int n = d.dim;
  std::vector<CVec> out;
  switch (d.kind) {
    case SpaceKind::Euclidean: {
      // Complex sphere = real sphere of the embedding.
      std::vector<Vec> re = sphere_net(2 * n, delta, cap);
      for (const auto& v : re) {
        CVec w(n);
        for (int i = 0; i < n; ++i) w[i] = Complex(v[i], v[n + i]);
        out.push_back(w);
      }
      return out;
    }
    case SpaceKind::Linf: {
      // Dual is l1(C): extreme points are phase * basis vector.
      int count = net_phase_count(delta);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < count; ++i) {
          double a = 2.0 * M_PI * i / count;
          CVec w = CVec::Zero(n);
          w[j] = Complex(std::cos(a), std::sin(a));
          out.push_back(w);
          if ((int)out.size() > cap)
            throw CombinatorialBlowup("phase net exceeds cap");
        }
      return out;
    }
    case SpaceKind::L1: {
      // Dual is linf(C): extreme points form the n-torus.
      int count = net_phase_count(delta);
      double total = std::pow((double)count, n);
      if (total > (double)cap)
        throw CombinatorialBlowup("torus net exceeds cap");
      std::vector<int> digits(n, 0);
      while (true) {
        CVec w(n);
        for (int i = 0; i < n; ++i) {
          double a = 2.0 * M_PI * digits[i] / count;
          w[i] = Complex(std::cos(a), std::sin(a));
        }
        out.push_back(w);
        int pos = 0;
        while (pos < n && ++digits[pos] == count) digits[pos++] = 0;
        if (pos == n) break;
      }
      return out;
    }
    default:
      throw InvalidDescriptor("complex net unsupported for this space kind");
  }
}

std::vector<Vec> ball_points(const Space& s, double delta, int cap) {
  return dual_ball_net(dual_space(s), delta, cap);
}

std::vector<CVec> ball_points_complex(const Space& s, double delta, int cap) {
  return dual_ball_net_complex(dual_space(s), delta, cap);
}

std::vector<CVec> circled_ball_representatives(const Space& s, double delta,
                                               int cap) {
  const auto& d = s.descriptor();
  if (d.scalar == ScalarKind::Real)
    throw InvalidDescriptor("circled representatives need a complex space");
  const int n = d.dim;
  std::vector<CVec> out;
  switch (d.kind) {
    case SpaceKind::L1:
      // Extreme points are phase * e_j; quadratics and image norms are
      // phase-invariant, so one representative per orbit is exact.
      for (int j = 0; j < n; ++j) {
        CVec w = CVec::Zero(n);
        w[j] = 1.0;
        out.push_back(w);
      }
      return out;
    case SpaceKind::Linf: {
      // Torus extremes up to a global phase: fix coordinate 0 at 1.
      int count = net_phase_count(delta);
      double total = std::pow((double)count, n - 1);
      if (total > (double)cap)
        throw CombinatorialBlowup("relative-phase grid exceeds cap");
      std::vector<int> digits(n - 1, 0);
      while (true) {
        CVec w(n);
        w[0] = 1.0;
        for (int i = 0; i + 1 < n; ++i) {
          double a = 2.0 * M_PI * digits[i] / count;
          w[i + 1] = Complex(std::cos(a), std::sin(a));
        }
        out.push_back(w);
        if (n == 1) break;
        int pos = 0;
        while (pos < n - 1 && ++digits[pos] == count) digits[pos++] = 0;
        if (pos == n - 1) break;
      }
      return out;
    }
    default:
      throw NotPolytopalError(
          "no circled extreme representatives for this kind");
  }
}

// ---------------------------------------------------------------------------
// Operators.

OperatorMap::OperatorMap(Space dom, Space cod, Mat m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (domain.scalar() != codomain.scalar())
    throw InvalidDescriptor("operator endpoints disagree on scalar kind");
  if (domain.scalar() != ScalarKind::Real)
    throw InvalidDescriptor("real matrix given for complex spaces");
  if (real().rows() != codomain.dim() || real().cols() != domain.dim())
    throw DimensionMismatch("operator matrix shape mismatch");
}

OperatorMap::OperatorMap(Space dom, Space cod, CMat m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (domain.scalar() != codomain.scalar())
    throw InvalidDescriptor("operator endpoints disagree on scalar kind");
  if (domain.scalar() != ScalarKind::Complex)
    throw InvalidDescriptor("complex matrix given for real spaces");
  if (cplx().rows() != codomain.dim() || cplx().cols() != domain.dim())
    throw DimensionMismatch("operator matrix shape mismatch");
}

const Mat& OperatorMap::real() const { return std::get<Mat>(matrix); }
const CMat& OperatorMap::cplx() const { return std::get<CMat>(matrix); }
CMat OperatorMap::as_complex() const {
  return is_complex() ? cplx() : CMat(real().cast<Complex>());
}
int OperatorMap::rows() const {
  return is_complex() ? (int)cplx().rows() : (int)real().rows();
}
int OperatorMap::cols() const {
  return is_complex() ? (int)cplx().cols() : (int)real().cols();
}

OperatorMap adjoint(const OperatorMap& phi) {
  Space dom = dual_space(phi.codomain);
  Space cod = dual_space(phi.domain);
  if (phi.is_complex())
    return OperatorMap(dom, cod, CMat(phi.cplx().transpose()));
  return OperatorMap(dom, cod, Mat(phi.real().transpose()));
}

OperatorMap compose(const OperatorMap& f, const OperatorMap& g) {
  if (!(f.domain == g.codomain))
    throw DimensionMismatch("compose: inner spaces differ");
  if (f.is_complex() || g.is_complex())
    return OperatorMap(g.domain, f.codomain, CMat(f.as_complex() * g.as_complex()));
  return OperatorMap(g.domain, f.codomain, Mat(f.real() * g.real()));
}

OperatorNormResult operator_norm(const OperatorMap& phi, const NetOptions& net) {
  OperatorNormResult res;
  const Space& X = phi.domain;
  const Space& Y = phi.codomain;

  if (!phi.is_complex()) {
    const Mat& m = phi.real();
    if (m.cwiseAbs().maxCoeff() == 0.0) {
      res.estimate = exact_estimate(0.0, "zero");
      res.witness = Vec::Zero(X.dim());
      return res;
    }
    // Exact: finite domain ball vertices.
    try {
      if (auto verts = dual_ball_vertices(dual_space(X), net.cap)) {
        double best = -1;
        Vec arg;
        for (const auto& v : *verts) {
          double val = vector_norm(Y, Vec(m * v));
          if (val > best) {
            best = val;
            arg = v;
          }
        }
        res.estimate = exact_estimate(best, "vertex-enumeration");
        res.witness = arg;
        return res;
      }
    } catch (const CombinatorialBlowup&) {
      // fall through to nets
    }
    if (X.is_euclidean() && Y.is_euclidean()) {
      Eigen::JacobiSVD<Mat> svd(m);
      double val = svd.singularValues()[0];
      // Witness: top right singular vector.
      Eigen::JacobiSVD<Mat> svd2(m, Eigen::ComputeThinV);
      res.estimate = exact_estimate(val, "svd");
      res.witness = svd2.matrixV().col(0);
      return res;
    }
    if (X.is_euclidean()) {
      try {
        if (auto fverts = dual_ball_vertices(Y, net.cap)) {
          double best = -1;
          Vec argf;
          for (const auto& f : *fverts) {
            double val = (m.transpose() * f).norm();
            if (val > best) {
              best = val;
              argf = f;
            }
          }
          Vec w = m.transpose() * argf;
          res.estimate = exact_estimate(best, "dual-vertex-enumeration");
          res.witness = w.norm() > 0 ? Vec(w / w.norm()) : Vec::Zero(X.dim());
          return res;
        }
      } catch (const CombinatorialBlowup&) {
      }
    }
    // Net bounds.
    std::vector<Vec> pts = ball_points(X, net.delta, net.cap);
    double best = 0;
    Vec arg = Vec::Zero(X.dim());
    for (const auto& v : pts) {
      double val = vector_norm(Y, Vec(m * v));
      if (val > best) {
        best = val;
        arg = v;
      }
    }
    res.estimate = {best, best / (1.0 - net.delta), "net", "net"};
    res.witness = arg;
    return res;
  }

  // Complex case.
  const CMat& m = phi.cplx();
  if (m.cwiseAbs().maxCoeff() == 0.0) {
    res.estimate = exact_estimate(0.0, "zero");
    res.witness_c = CVec::Zero(X.dim());
    return res;
  }
  if (X.is_euclidean() && Y.is_euclidean()) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinV);
    res.estimate = exact_estimate(svd.singularValues()[0], "svd");
    res.witness_c = svd.matrixV().col(0);
    return res;
  }
  if (X.kind() == SpaceKind::L1 || X.kind() == SpaceKind::Linf) {
    std::vector<CVec> reps = circled_ball_representatives(X, net.delta, net.cap);
    double best = 0;
    CVec arg = CVec::Zero(X.dim());
    for (const auto& v : reps) {
      double val = vector_norm(Y, CVec(m * v));
      if (val > best) {
        best = val;
        arg = v;
      }
    }
    bool exact = X.kind() == SpaceKind::L1;  // orbit representatives suffice
    res.estimate = exact
                       ? exact_estimate(best, "circled-orbit-enumeration")
                       : NormEstimate{best, best / (1.0 - net.delta), "net", "net"};
    res.witness_c = arg;
    return res;
  }
  std::vector<CVec> pts = ball_points_complex(X, net.delta, net.cap);
  double best = 0;
  CVec arg = CVec::Zero(X.dim());
  for (const auto& v : pts) {
    double val = vector_norm(Y, CVec(m * v));
    if (val > best) {
      best = val;
      arg = v;
    }
  }
  res.estimate = {best, best / (1.0 - net.delta), "net", "net"};
  res.witness_c = arg;
  return res;
}

Space injective_product_space(const Space& x1, const Space& x2, int cap) {
  auto v1 = dual_ball_vertices(x1, cap);
  auto v2 = dual_ball_vertices(x2, cap);
  if (!v1 || !v2)
    throw NotPolytopalError(
        "injective product space needs polytopal dual balls");
  if ((double)v1->size() * (double)v2->size() > (double)cap)
    throw CombinatorialBlowup("product dual vertex count exceeds cap");
  std::vector<Vec> facets;
  const int n2 = x2.dim();
  for (const auto& f : *v1)
    for (const auto& g : *v2) {
      Vec h(x1.dim() * n2);
      for (int i = 0; i < x1.dim(); ++i) h.segment(i * n2, n2) = f[i] * g;
      facets.push_back(h);
    }
  return build_space(SpaceDescriptor::polytope_facets(dedup(facets)));
}

OperatorMap kronecker_map(const OperatorMap& phi1, const OperatorMap& phi2,
                          Space product_domain, Space product_codomain) {
  const Mat& a = phi1.real();
  const Mat& b = phi2.real();
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return OperatorMap(std::move(product_domain), std::move(product_codomain),
                     std::move(k));
}

}  // namespace tnl
