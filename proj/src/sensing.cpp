#include "optidual/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "optidual/rng.hpp"

namespace optidual {

namespace {

// real matrix applied to a complex vector
CVector apply_real(const RMatrix& a, const CVector& v) {
  const RVector re = a * v.real();
  const RVector im = a * v.imag();
  CVector out(a.rows());
  out.real() = re;
  out.imag() = im;
  return out;
}

std::vector<int> draw_support(CounterRng& rng, int d, int s, int offset = 0) {
  std::vector<int> pool(d);
  std::iota(pool.begin(), pool.end(), offset);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(d - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + s);
  std::sort(support.begin(), support.end());
  return support;
}

double drip_for_support(const CMatrix& phi_c, const Dictionary& dict,
                        const std::vector<int>& support) {
  const int s = static_cast<int>(support.size());
  CMatrix cols(dict.n(), s);
  for (int i = 0; i < s; ++i) cols.col(i) = dict.atoms().col(support[i]);
  // orthonormal basis of the span; rank may drop for repeated atoms
  Eigen::ColPivHouseholderQR<CMatrix> qr(cols);
  qr.setThreshold(1e-12);
  const int rank = static_cast<int>(qr.rank());
  if (rank == 0) {
    throw std::runtime_error("drip_estimate: selected columns span nothing");
  }
  const CMatrix q = CMatrix(qr.householderQ()).leftCols(rank);
  Eigen::JacobiSVD<CMatrix> svd(phi_c * q);
  const double smax = svd.singularValues().maxCoeff();
  const double smin = svd.singularValues().minCoeff();
  return std::max(smax * smax - 1.0, 1.0 - smin * smin);
}

}  // namespace

SensingEnsemble gaussian_sensing_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || m > n) {
    throw std::invalid_argument("gaussian_sensing_matrix: need 1 <= m <= n");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  CounterRng rng(seed);
  RMatrix phi(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      phi(i, j) = scale * rng.normal();
    }
  }
  return SensingEnsemble{std::move(phi), m, n, seed, scale};
}

std::pair<CVector, double> measure(const SensingEnsemble& phi, const CVector& f,
                                   double noise_bound, std::uint64_t seed) {
  if (f.size() != phi.n) {
    throw std::invalid_argument("measure: signal dimension mismatch");
  }
  if (noise_bound < 0.0) {
    throw std::invalid_argument("measure: negative noise bound");
  }
  CVector y = apply_real(phi.phi, f);
  if (noise_bound > 0.0) {
    CounterRng rng(seed, 0xbeef);
    CVector z(phi.m);
    double norm = 0.0;
    do {
      for (int i = 0; i < phi.m; ++i) z(i) = rng.complex_normal();
      norm = z.norm();
    } while (norm < 1e-30);
    const double radius =
        noise_bound * std::pow(rng.uniform(), 1.0 / (2.0 * phi.m));
    y += z * (radius / norm);
  }
  return {std::move(y), noise_bound};
}

GroundTruth synthesize_sparse_signal(const Dictionary& dict, int s, std::uint64_t seed) {
  if (s < 1 || s > dict.d()) {
    throw std::invalid_argument("synthesize_sparse_signal: sparsity out of range");
  }
  CounterRng rng(seed, 0x51);
  GroundTruth gt;
  gt.s = s;
  gt.support = draw_support(rng, dict.d(), s);
  gt.x = CVector::Zero(dict.d());
  // amplitudes are standard normal per unit-norm atom, so scaled atom sets
  // (e.g. Parseval concatenations) still carry unit-variance signal components
  for (int idx : gt.support) gt.x(idx) = rng.normal() / dict.atoms().col(idx).norm();
  gt.f = dict.atoms() * gt.x;
  return gt;
}

GroundTruth synthesize_sparse_signal(const Dictionary& dict,
                                     const std::vector<int>& block_sparsity,
                                     std::uint64_t seed) {
  const int blocks = static_cast<int>(block_sparsity.size());
  if (blocks < 1 || dict.d() % blocks != 0) {
    throw std::invalid_argument("synthesize_sparse_signal: d not divisible into blocks");
  }
  const int block_size = dict.d() / blocks;
  int total = 0;
  for (int sb : block_sparsity) {
    if (sb < 0 || sb > block_size) {
      throw std::invalid_argument("synthesize_sparse_signal: block sparsity out of range");
    }
    total += sb;
  }
  if (total < 1) {
    throw std::invalid_argument("synthesize_sparse_signal: empty support");
  }
  CounterRng rng(seed, 0x52);
  GroundTruth gt;
  gt.s = total;
  gt.x = CVector::Zero(dict.d());
  for (int b = 0; b < blocks; ++b) {
    if (block_sparsity[b] == 0) continue;
    auto part = draw_support(rng, block_size, block_sparsity[b], b * block_size);
    gt.support.insert(gt.support.end(), part.begin(), part.end());
  }
  std::sort(gt.support.begin(), gt.support.end());
  for (int idx : gt.support) gt.x(idx) = rng.normal() / dict.atoms().col(idx).norm();
  gt.f = dict.atoms() * gt.x;
  return gt;
}

DRIPEstimate drip_estimate(const SensingEnsemble& phi, const Dictionary& dict,
                           int s, int trials, std::uint64_t seed) {
  if (s < 1 || s > dict.d()) {
    throw std::invalid_argument("drip_estimate: sparsity out of range");
  }
  if (trials < 1) {
    throw std::invalid_argument("drip_estimate: need at least one trial");
  }
  if (phi.n != dict.n()) {
    throw std::invalid_argument("drip_estimate: dimension mismatch");
  }
  const CMatrix phi_c = phi.phi.cast<Complex>();
  CounterRng base(seed, 0xd21b);
  double delta = 0.0;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(t));
    const auto support = draw_support(rng, dict.d(), s);
    delta = std::max(delta, drip_for_support(phi_c, dict, support));
  }
  return DRIPEstimate{s, delta, trials, seed, false};
}

DRIPEstimate drip_estimate_exhaustive(const SensingEnsemble& phi,
                                      const Dictionary& dict, int s) {
  if (s < 1 || s > dict.d()) {
    throw std::invalid_argument("drip_estimate_exhaustive: sparsity out of range");
  }
  double count = 1.0;
  for (int i = 0; i < s; ++i) {
    count *= static_cast<double>(dict.d() - i) / (i + 1);
    if (count > 1e5) {
      throw std::invalid_argument("drip_estimate_exhaustive: choose(d, s) exceeds 1e5");
    }
  }
  const CMatrix phi_c = phi.phi.cast<Complex>();
  std::vector<int> support(s);
  std::iota(support.begin(), support.end(), 0);
  double delta = 0.0;
  int trials = 0;
  while (true) {
    delta = std::max(delta, drip_for_support(phi_c, dict, support));
    ++trials;
    // next combination
    int i = s - 1;
    while (i >= 0 && support[i] == dict.d() - s + i) --i;
    if (i < 0) break;
    ++support[i];
    for (int j = i + 1; j < s; ++j) support[j] = support[j - 1] + 1;
  }
  return DRIPEstimate{s, delta, trials, 0, true};
}

}  // namespace optidual
