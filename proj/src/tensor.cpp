#include "tnl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "tnl/random.hpp"

namespace tnl {

namespace {

std::int64_t total_size(const std::vector<Space>& factors) {
  std::int64_t s = 1;
  for (const auto& f : factors) {
    s *= f.dim();
    if (s > kMemoryGuardEntries)
      throw MemoryGuardError("tensor exceeds the memory guard");
  }
  return s;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<Space> factors, Vec coefficients)
    : factors_(std::move(factors)), coeffs_(std::move(coefficients)) {
  if (factors_.empty()) throw InvalidDescriptor("tensor order must be >= 1");
  for (const auto& f : factors_)
    if (!f.is_real())
      throw InvalidDescriptor("tensors carry real factor spaces only");
  if (total_size(factors_) != coeffs_.size())
    throw DimensionMismatch("coefficient count does not match factor dims");
}

std::vector<int> DenseTensor::dims() const {
  std::vector<int> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim());
  return d;
}

std::int64_t DenseTensor::flat_index(const std::vector<int>& index) const {
  if ((int)index.size() != order())
    throw DimensionMismatch("index order mismatch");
  std::int64_t flat = 0;
  for (int a = 0; a < order(); ++a) {
    if (index[a] < 0 || index[a] >= factors_[a].dim())
      throw DimensionMismatch("index out of range");
    flat = flat * factors_[a].dim() + index[a];
  }
  return flat;
}

double DenseTensor::coeff(const std::vector<int>& index) const {
  return coeffs_[flat_index(index)];
}

DenseTensor DenseTensor::zeros(std::vector<Space> factors) {
  std::int64_t n = total_size(factors);
  return DenseTensor(std::move(factors), Vec::Zero(n));
}

DenseTensor DenseTensor::basis(std::vector<Space> factors,
                               const std::vector<int>& index) {
  DenseTensor t = zeros(std::move(factors));
  t.coeffs_[t.flat_index(index)] = 1.0;
  return t;
}

DenseTensor DenseTensor::from_matrix(const Space& row_space,
                                     const Space& col_space, const Mat& m) {
  if (m.rows() != row_space.dim() || m.cols() != col_space.dim())
    throw DimensionMismatch("matrix shape does not match factor spaces");
  Vec flat(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) flat[i * m.cols() + j] = m(i, j);
  return DenseTensor({row_space, col_space}, flat);
}

Mat DenseTensor::as_matrix() const {
  if (order() != 2) throw DimensionMismatch("as_matrix needs an order-2 tensor");
  Mat m(factors_[0].dim(), factors_[1].dim());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = coeffs_[i * m.cols() + j];
  return m;
}

DenseTensor tensor_product(const DenseTensor& z1, const DenseTensor& z2) {
  std::vector<Space> factors = z1.factors();
  factors.insert(factors.end(), z2.factors().begin(), z2.factors().end());
  std::int64_t n1 = z1.size(), n2 = z2.size();
  if (n1 * n2 > kMemoryGuardEntries)
    throw MemoryGuardError("tensor product exceeds the memory guard");
  Vec flat(n1 * n2);
  for (std::int64_t i = 0; i < n1; ++i)
    flat.segment(i * n2, n2) = z1.coefficients()[i] * z2.coefficients();
  return DenseTensor(std::move(factors), std::move(flat));
}

DenseTensor apply_operator_power(const OperatorMap& phi, int k,
                                 const DenseTensor& z) {
  if (z.order() != k) throw DimensionMismatch("tensor order differs from k");
  if (phi.is_complex())
    throw InvalidDescriptor("tensor powers act on real operators");
  const Mat& m = phi.real();
  for (const auto& f : z.factors())
    if (!(f == phi.domain))
      throw DimensionMismatch("tensor factor differs from operator domain");
  double out_entries = std::pow((double)phi.codomain.dim(), k);
  if (out_entries > (double)kMemoryGuardEntries)
    throw MemoryGuardError("tensor power exceeds the memory guard");

  const int dn = phi.domain.dim();
  const int dm = phi.codomain.dim();
  Vec cur = z.coefficients();
  std::int64_t left = 1;
  std::int64_t right = 1;
  for (int a = 1; a < k; ++a) right *= dn;
  for (int a = 0; a < k; ++a) {
    Vec next(left * dm * right);
    for (std::int64_t l = 0; l < left; ++l)
      for (std::int64_t r = 0; r < right; ++r) {
        for (int i2 = 0; i2 < dm; ++i2) {
          double acc = 0;
          for (int i = 0; i < dn; ++i)
            acc += m(i2, i) * cur[(l * dn + i) * right + r];
          next[(l * dm + i2) * right + r] = acc;
        }
      }
    cur = std::move(next);
    left *= dm;
    if (a + 1 < k) right /= dn;
  }
  std::vector<Space> factors(k, phi.codomain);
  return DenseTensor(std::move(factors), std::move(cur));
}

DenseTensor contract_axis(const DenseTensor& z, int axis, const Vec& f) {
  const int k = z.order();
  if (axis < 0 || axis >= k) throw DimensionMismatch("axis out of range");
  if ((int)f.size() != z.factor(axis).dim())
    throw DimensionMismatch("functional does not match axis dimension");
  if (k == 1) {
    // Degenerate: return a 1-entry tensor over a 1-dim euclidean tag.
    Space unit = build_space(SpaceDescriptor::euclidean(1));
    Vec v(1);
    v[0] = f.dot(z.coefficients());
    return DenseTensor({unit}, v);
  }
  std::vector<int> d = z.dims();
  std::int64_t left = 1, right = 1;
  for (int a = 0; a < axis; ++a) left *= d[a];
  for (int a = axis + 1; a < k; ++a) right *= d[a];
  const int mid = d[axis];
  Vec out(left * right);
  const Vec& in = z.coefficients();
  for (std::int64_t l = 0; l < left; ++l)
    for (std::int64_t r = 0; r < right; ++r) {
      double acc = 0;
      for (int i = 0; i < mid; ++i) acc += f[i] * in[(l * mid + i) * right + r];
      out[l * right + r] = acc;
    }
  std::vector<Space> factors;
  for (int a = 0; a < k; ++a)
    if (a != axis) factors.push_back(z.factor(a));
  return DenseTensor(std::move(factors), std::move(out));
}

double hilbert_norm(const DenseTensor& z) {
  for (const auto& f : z.factors())
    if (!f.is_euclidean())
      throw NonEuclideanError("hilbert norm needs euclidean factors");
  return z.coefficients().norm();
}

double pair_with_rank_one(const DenseTensor& z, const std::vector<Vec>& fs) {
  if ((int)fs.size() != z.order())
    throw DimensionMismatch("functional count differs from tensor order");
  DenseTensor cur = z;
  for (int a = 0; a < (int)fs.size(); ++a) cur = contract_axis(cur, 0, fs[a]);
  return cur.coefficients()[0];
}

Mat unfold(const DenseTensor& z, const std::vector<int>& row_axes) {
  const int k = z.order();
  std::vector<bool> in_row(k, false);
  for (int a : row_axes) in_row[a] = true;
  std::vector<int> cols_axes;
  for (int a = 0; a < k; ++a)
    if (!in_row[a]) cols_axes.push_back(a);
  std::vector<int> d = z.dims();
  std::int64_t nr = 1, nc = 1;
  for (int a : row_axes) nr *= d[a];
  for (int a : cols_axes) nc *= d[a];
  Mat m(nr, nc);
  std::vector<int> idx(k, 0);
  const Vec& c = z.coefficients();
  for (std::int64_t flat = 0; flat < z.size(); ++flat) {
    std::int64_t row = 0, col = 0;
    for (int a : row_axes) row = row * d[a] + idx[a];
    for (int a : cols_axes) col = col * d[a] + idx[a];
    m(row, col) = c[flat];
    for (int a = k - 1; a >= 0; --a) {
      if (++idx[a] < d[a]) break;
      idx[a] = 0;
    }
  }
  return m;
}

namespace {

double spectral_norm(const Mat& m) {
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Mat g = m.rows() <= m.cols() ? Mat(m * m.transpose())
                               : Mat(m.transpose() * m);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

double matricization_upper_bound(const DenseTensor& z) {
  for (const auto& f : z.factors())
    if (!f.is_euclidean())
      throw NonEuclideanError("matricization bound needs euclidean factors");
  const int k = z.order();
  if (k == 1) return z.coefficients().norm();
  // Grouping factors relaxes the product constraint, so every bipartition
  // unfolding's spectral norm is an upper bound; take the best.
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
    std::vector<int> rows = {0};
    for (int a = 1; a < k; ++a)
      if (mask & (1u << (a - 1))) rows.push_back(a);
    if ((int)rows.size() == k) continue;
    best = std::min(best, spectral_norm(unfold(z, rows)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Injective norm.

namespace {

struct EnumState {
  double best = -1.0;
  std::vector<int> best_tuple;
};

// DFS over dual-vertex tuples, contracting axis 0 at each level; the
// iteration order is lexicographic and the first maximizer is kept.
void enumerate_rec(const DenseTensor& cur,
                   const std::vector<const std::vector<Vec>*>& verts, int level,
                   std::vector<int>& tuple, EnumState& state) {
  const auto& vs = *verts[level];
  for (int j = 0; j < (int)vs.size(); ++j) {
    tuple[level] = j;
    if (level + 1 == (int)verts.size()) {
      double v = std::abs(vs[j].dot(cur.coefficients()));
      if (v > state.best) {
        state.best = v;
        state.best_tuple = tuple;
      }
    } else {
      enumerate_rec(contract_axis(cur, 0, vs[j]), verts, level + 1, tuple,
                    state);
    }
  }
}

double ascent_pass(const DenseTensor& z, std::vector<Vec>& tuple,
                   const InjectiveOptions& opts) {
  const int k = z.order();
  double value = 0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double prev = value;
    for (int i = 0; i < k; ++i) {
      DenseTensor cur = z;
      for (int a = 0; a < k; ++a) {
        if (a == i) continue;
        // Axes before i are consumed at position 0; later ones sit at 1.
        cur = contract_axis(cur, a < i ? 0 : 1, tuple[a]);
      }
      // cur is now a vector over factor i.
      SupportPoint sp = support_point(z.factor(i), cur.coefficients());
      if (sp.value > 0) tuple[i] = sp.functional;
      value = sp.value;
    }
    if (value - prev <= opts.improvement_tol * std::max(1.0, value)) break;
  }
  return value;
}

}  // namespace

InjectiveResult injective_norm(const DenseTensor& z,
                               const InjectiveOptions& opts) {
  const int k = z.order();
  InjectiveResult res;

  if (z.coefficients().cwiseAbs().maxCoeff() == 0.0) {
    res.estimate = exact_estimate(0.0, "zero");
    for (int a = 0; a < k; ++a) res.witness.push_back(Vec::Zero(z.factor(a).dim()));
    return res;
  }

  // Route 1: exact enumeration over polytopal dual vertex tuples.
  bool all_polytopal = true;
  std::vector<std::vector<Vec>> vertex_lists;
  double tuple_count = 1;
  for (int a = 0; a < k && all_polytopal; ++a) {
    try {
      auto verts = dual_ball_vertices(z.factor(a), opts.enumeration_cap);
      if (!verts) {
        all_polytopal = false;
        break;
      }
      vertex_lists.push_back(std::move(*verts));
      tuple_count *= (double)vertex_lists.back().size();
    } catch (const CombinatorialBlowup&) {
      all_polytopal = false;
    }
  }
  if (all_polytopal && tuple_count <= (double)opts.enumeration_cap) {
    std::vector<const std::vector<Vec>*> ptrs;
    for (const auto& v : vertex_lists) ptrs.push_back(&v);
    EnumState state;
    std::vector<int> tuple(k, 0);
    enumerate_rec(z, ptrs, 0, tuple, state);
    res.estimate = exact_estimate(state.best, "exact-enumeration");
    for (int a = 0; a < k; ++a)
      res.witness.push_back(vertex_lists[a][state.best_tuple[a]]);
    res.witness_value = state.best;
    return res;
  }

  bool all_euclidean = true;
  for (int a = 0; a < k; ++a)
    if (!z.factor(a).is_euclidean()) all_euclidean = false;

  // Order <= 2 over euclidean factors is a singular value problem.
  if (all_euclidean && k <= 2) {
    if (k == 1) {
      double nrm = z.coefficients().norm();
      res.estimate = exact_estimate(nrm, "svd");
      res.witness.push_back(z.coefficients() / nrm);
      res.witness_value = nrm;
      return res;
    }
    Eigen::JacobiSVD<Mat> svd(z.as_matrix(),
                              Eigen::ComputeThinU | Eigen::ComputeThinV);
    double s = svd.singularValues()[0];
    res.estimate = exact_estimate(s, "svd");
    res.witness.push_back(svd.matrixU().col(0));
    res.witness.push_back(svd.matrixV().col(0));
    res.witness_value = s;
    return res;
  }

  // Route 2: alternating-ascent lower bound from multistarts.
  double lower = 0;
  std::vector<Vec> best_tuple(k);
  auto consider = [&](std::vector<Vec> tuple) {
    double v = ascent_pass(z, tuple, opts);
    if (v > lower) {
      lower = v;
      best_tuple = std::move(tuple);
    }
  };

  // Basis starts: norming functionals of basis vectors, strided to the cap.
  std::int64_t basis_total = 1;
  for (int a = 0; a < k; ++a) basis_total *= z.factor(a).dim();
  std::int64_t stride =
      std::max<std::int64_t>(1, basis_total / opts.max_basis_starts);
  for (std::int64_t b = 0; b < basis_total; b += stride) {
    std::vector<Vec> tuple(k);
    std::int64_t rem = b;
    for (int a = k - 1; a >= 0; --a) {
      int d = z.factor(a).dim();
      int i = (int)(rem % d);
      rem /= d;
      Vec e = Vec::Zero(d);
      e[i] = 1.0;
      tuple[a] = support_point(z.factor(a), e).functional;
    }
    consider(std::move(tuple));
  }
  // Gaussian starts.
  Philox rng(opts.seed);
  for (int s = 0; s < opts.multistarts; ++s) {
    std::vector<Vec> tuple(k);
    for (int a = 0; a < k; ++a)
      tuple[a] =
          support_point(z.factor(a), rng.gaussian_vector(z.factor(a).dim()))
              .functional;
    consider(std::move(tuple));
  }
  res.witness = best_tuple;
  res.witness_value = std::abs(pair_with_rank_one(z, best_tuple));

  // Route 3: certified upper bounds.
  double upper = std::numeric_limits<double>::infinity();
  std::string cert = "none";
  if (all_euclidean) {
    double mb = matricization_upper_bound(z);
    if (mb < upper) {
      upper = mb;
      cert = "ideal-norm-bound";
    }
  }
  // Net enumeration with (1-delta)^{-#netted} correction when it fits.
  {
    double count = 1;
    int netted = 0;
    std::vector<std::vector<Vec>> nets(k);
    bool ok = true;
    for (int a = 0; a < k && ok; ++a) {
      try {
        auto verts = dual_ball_vertices(z.factor(a), opts.enumeration_cap);
        if (verts) {
          nets[a] = std::move(*verts);
        } else {
          nets[a] =
              dual_ball_net(z.factor(a), opts.net_delta, opts.enumeration_cap);
          ++netted;
        }
        count *= (double)nets[a].size();
        if (count > (double)opts.enumeration_cap) ok = false;
      } catch (const CombinatorialBlowup&) {
        ok = false;
      }
    }
    if (ok) {
      std::vector<const std::vector<Vec>*> ptrs;
      for (const auto& v : nets) ptrs.push_back(&v);
      EnumState state;
      std::vector<int> tuple(k, 0);
      enumerate_rec(z, ptrs, 0, tuple, state);
      if (state.best > lower) {
        lower = state.best;
        res.witness.clear();
        for (int a = 0; a < k; ++a) res.witness.push_back(nets[a][state.best_tuple[a]]);
        res.witness_value = state.best;
      }
      double corrected =
          state.best / std::pow(1.0 - opts.net_delta, (double)netted);
      if (corrected < upper) {
        upper = corrected;
        cert = "net";
      }
    }
  }
  if (!std::isfinite(upper))
    throw CombinatorialBlowup(
        "no certified upper bound fits the enumeration cap");

  res.estimate = NormEstimate{lower, std::max(lower, upper),
                              "ascent+" + cert, cert};
  return res;
}

}  // namespace tnl
