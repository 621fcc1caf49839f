#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "optidual/frames.hpp"

namespace optidual {

struct SensingEnsemble {
  RMatrix phi;  // m x n
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double scale = 0.0;  // entry standard deviation
};

struct GroundTruth {
  CVector f;                 // n-vector, f = D x
  CVector x;                 // d-vector, sparse
  std::vector<int> support;  // sorted indices of nonzeros
  int s = 0;
};

struct DRIPEstimate {
  int s = 0;
  double delta_hat = 0.0;  // Monte Carlo lower bound on delta_s
  int trials = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

// i.i.d. N(0, 1/m) entries so that E|Phi v|^2 = |v|^2; reproducible from seed.
SensingEnsemble gaussian_sensing_matrix(int m, int n, std::uint64_t seed);

// y = Phi f + z with |z|_2 <= eps, z uniform on the eps-ball (z = 0 for eps = 0)
std::pair<CVector, double> measure(const SensingEnsemble& phi, const CVector& f,
                                   double noise_bound, std::uint64_t seed);

// s-sparse coefficients: support uniform without replacement, nonzero
// amplitudes real standard normal per unit-norm atom; f = D x.
GroundTruth synthesize_sparse_signal(const Dictionary& dict, int s, std::uint64_t seed);

// Per-block sparsity for concatenation dictionaries (blocks of n atoms each).
GroundTruth synthesize_sparse_signal(const Dictionary& dict,
                                     const std::vector<int>& block_sparsity,
                                     std::uint64_t seed);

// Monte Carlo lower bound on the D-RIP constant: per trial orthonormalize a
// random s-column span of D and take extremal singular values of Phi Q.
DRIPEstimate drip_estimate(const SensingEnsemble& phi, const Dictionary& dict,
                           int s, int trials, std::uint64_t seed);

// Exact value by enumerating all supports; requires choose(d, s) <= 1e5.
DRIPEstimate drip_estimate_exhaustive(const SensingEnsemble& phi,
                                      const Dictionary& dict, int s);

}  // namespace optidual
