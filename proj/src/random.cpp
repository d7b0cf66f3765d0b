#include "tnl/random.hpp"

#include <cmath>
#include <iostream>

#include <Eigen/QR>

namespace tnl {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = (std::uint64_t)a * b;
  hi = (std::uint32_t)(p >> 32);
  lo = (std::uint32_t)p;
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) {
  key_[0] = (std::uint32_t)seed;
  key_[1] = (std::uint32_t)(seed >> 32);
  counter_[0] = (std::uint32_t)stream;
  counter_[1] = (std::uint32_t)(stream >> 32);
  counter_[2] = 0;
  counter_[3] = 0;
}

void Philox::refill() {
  std::uint32_t c[4] = {counter_[0], counter_[1], counter_[2], counter_[3]};
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    std::uint32_t n0 = hi1 ^ c[1] ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c[3] ^ k1;
    std::uint32_t n3 = lo0;
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
    c[3] = n3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  out_[0] = c[0];
  out_[1] = c[1];
  out_[2] = c[2];
  out_[3] = c[3];
  have_ = 4;
  if (++counter_[2] == 0) ++counter_[3];
}

std::uint32_t Philox::next_u32() {
  if (have_ == 0) refill();
  return out_[4 - have_--];
}

double Philox::next_uniform() {
  return ((double)next_u32() + 0.5) / 4294967296.0;
}

double Philox::next_gaussian() {
  if (cached_gaussian_valid_) {
    cached_gaussian_valid_ = false;
    return cached_gaussian_;
  }
  double u1 = next_uniform();
  double u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_gaussian_ = r * std::sin(2.0 * M_PI * u2);
  cached_gaussian_valid_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Complex Philox::next_gaussian_complex() {
  // Independent real and imaginary parts with variance 1/2 each.
  const double s = std::sqrt(0.5);
  double re = s * next_gaussian();
  double im = s * next_gaussian();
  return Complex(re, im);
}

Vec Philox::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = next_gaussian();
  return v;
}

Mat Philox::gaussian_matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = next_gaussian();
  return m;
}

CMat Philox::gaussian_matrix_complex(int rows, int cols) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = next_gaussian_complex();
  return m;
}

Mat Philox::haar_orthogonal(int n) {
  Mat g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

CMat Philox::haar_unitary(int n) {
  CMat g = gaussian_matrix_complex(n, n);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= a > 0 ? Complex(d / a) : Complex(1, 0);
  }
  return q;
}

// ---------------------------------------------------------------------------

GaussianSample sample_gaussian_tensor(int n, int k, std::uint64_t seed) {
  double entries = std::pow((double)n, k);
  if (entries > (double)kMemoryGuardEntries)
    throw MemoryGuardError("gaussian tensor exceeds the memory guard");
  Space e = build_space(SpaceDescriptor::euclidean(n));
  std::vector<Space> factors(k, e);
  Philox rng(seed);
  Vec coeffs = rng.gaussian_vector((int)std::llround(entries));
  GaussianSample s;
  s.tensor = DenseTensor(std::move(factors), std::move(coeffs));
  s.seed = seed;
  s.k = k;
  s.n = n;
  return s;
}

McNormsResult mc_expected_norms(const OperatorMap& phi, int k, int trials,
                                std::uint64_t seed) {
  if (!phi.domain.is_euclidean() || !phi.codomain.is_euclidean())
    throw NonEuclideanError("mc_expected_norms needs a euclidean operator");
  const int n = phi.domain.dim();
  double entries = std::pow((double)n, k);
  if (entries > (double)kMemoryGuardEntries)
    throw MemoryGuardError("tensor power exceeds the memory guard");
  double hs = phi.real().norm();

  McNormsResult r;
  r.trials = trials;
  r.hs_target = std::pow(hs, k);
  double sum = 0, sum_sq = 0;
  std::vector<Space> factors(k, phi.domain);
  for (int t = 0; t < trials; ++t) {
    Philox rng(seed, (std::uint64_t)t + 1);  // split stream per trial
    DenseTensor g(factors, rng.gaussian_vector((int)std::llround(entries)));
    DenseTensor img = apply_operator_power(phi, k, g);
    double nrm = hilbert_norm(img);
    sum += nrm;
    sum_sq += nrm * nrm;
  }
  r.mean = sum / trials;
  r.mean_sq = sum_sq / trials;
  return r;
}

std::vector<EpsGrowthRow> mc_eps_growth(int n, int kmax, int trials,
                                        std::uint64_t seed) {
  std::vector<EpsGrowthRow> rows;
  for (int k = 2; k <= kmax; ++k) {
    double entries = std::pow((double)n, k);
    if (entries > (double)kMemoryGuardEntries)
      throw MemoryGuardError("tensor power exceeds the memory guard");
    double sum = 0;
    for (int t = 0; t < trials; ++t) {
      GaussianSample g = sample_gaussian_tensor(
          n, k, seed ^ (0x9E3779B97F4A7C15ull * (std::uint64_t)(t + 1)));
      sum += matricization_upper_bound(g.tensor);
    }
    EpsGrowthRow row;
    row.k = k;
    row.mean_eps_upper = sum / trials;
    row.ratio = row.mean_eps_upper / std::sqrt(k * std::log((double)k));
    rows.push_back(row);
  }
  return rows;
}

WitnessSearchResult search_witness_tensor(const OperatorMap& phi, int k,
                                          int trials, std::uint64_t seed) {
  if (!phi.codomain.is_euclidean())
    throw NonEuclideanError("witness search needs a euclidean codomain");
  const int n = phi.domain.dim();
  double entries = std::pow((double)n, k);
  if (entries > (double)kMemoryGuardEntries)
    throw MemoryGuardError("tensor power exceeds the memory guard");

  WitnessSearchResult best;
  double eps_sum = 0;
  std::vector<Space> factors(k, phi.domain);
  InjectiveOptions iopts;
  iopts.multistarts = 8;
  for (int t = 0; t < trials; ++t) {
    Philox rng(seed, (std::uint64_t)t + 1);
    DenseTensor z(factors, rng.gaussian_vector((int)std::llround(entries)));
    double eps_up;
    if (phi.domain.is_euclidean()) {
      eps_up = matricization_upper_bound(z);
    } else {
      eps_up = injective_norm(z, iopts).estimate.upper;
    }
    eps_sum += eps_up;
    double img = hilbert_norm(apply_operator_power(phi, k, z));
    double ratio = eps_up > 0 ? img / eps_up : 0.0;
    if (ratio > best.ratio) {
      best.witness = z;
      best.image_norm = img;
      best.eps_upper = eps_up;
      best.ratio = ratio;
    }
  }
  if (phi.domain.is_euclidean() && phi.codomain.is_euclidean() && trials > 0) {
    double hs = phi.real().norm();
    double bound = std::pow(hs, k) / (3.0 * eps_sum / trials);
    best.soft_check_passed = best.ratio >= bound;
    if (!best.soft_check_passed)
      std::cerr << "[tnl] witness search soft check missed: ratio "
                << best.ratio << " < " << bound << "\n";
  }
  return best;
}

}  // namespace tnl
