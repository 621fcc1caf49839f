#include "optidual/frames.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optidual {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxGramCondition = 1e12;
constexpr double kDualTolerance = 1e-10;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Dictionary::Dictionary(CMatrix atoms, DictionaryKind kind, GaborLattice lattice,
                       bool normalize_columns)
    : atoms_(std::move(atoms)), kind_(kind), lattice_(lattice) {
  const int n = static_cast<int>(atoms_.rows());
  const int d = static_cast<int>(atoms_.cols());
  if (n < 1 || d < n) {
    throw std::invalid_argument("Dictionary: need d >= n >= 1 atoms");
  }
  if (!atoms_.allFinite()) {
    throw std::invalid_argument("Dictionary: non-finite atom entries");
  }
  if (normalize_columns) {
    for (int j = 0; j < d; ++j) {
      const double norm = atoms_.col(j).norm();
      if (norm < 1e-14) {
        throw std::invalid_argument("Dictionary: zero atom cannot be normalized");
      }
      atoms_.col(j) /= norm;
    }
  }
  gram_ = atoms_ * atoms_.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram_, Eigen::EigenvaluesOnly);
  frame_lower_ = eig.eigenvalues().minCoeff();
  frame_upper_ = eig.eigenvalues().maxCoeff();
  if (frame_lower_ <= 0.0 || frame_upper_ / frame_lower_ > kMaxGramCondition) {
    throw std::invalid_argument("Dictionary: not a frame (rank-deficient or Gram condition > 1e12)");
  }
  gram_llt_.compute(gram_);
  if (gram_llt_.info() != Eigen::Success) {
    throw std::invalid_argument("Dictionary: Gram factorization failed");
  }
}

DualFrame::DualFrame(CMatrix dual, const Dictionary& parent) : dual_(std::move(dual)) {
  if (dual_.rows() != parent.n() || dual_.cols() != parent.d()) {
    throw std::invalid_argument("DualFrame: shape mismatch with parent dictionary");
  }
  const CMatrix resolution = parent.atoms() * dual_.adjoint();
  const double deviation =
      (resolution - CMatrix::Identity(parent.n(), parent.n())).cwiseAbs().maxCoeff();
  if (deviation > kDualTolerance) {
    throw std::invalid_argument("DualFrame: D Dtilde* deviates from identity by " +
                                std::to_string(deviation));
  }
}

Dictionary build_gabor_dictionary(int n, int oversampling, double window_std) {
  if (!is_power_of_two(n) || n < 2) {
    throw std::invalid_argument("build_gabor_dictionary: n must be a power of two >= 2");
  }
  if (oversampling < 1) {
    throw std::invalid_argument("build_gabor_dictionary: oversampling must be positive");
  }
  if (!(window_std > 0.0)) {
    throw std::invalid_argument("build_gabor_dictionary: window_std must be positive");
  }
  GaborLattice lattice;
  lattice.time_step = 2;
  lattice.num_shifts = n / 2;
  lattice.num_freqs = 2 * oversampling;
  lattice.window_std = window_std;
  if (lattice.num_shifts * lattice.num_freqs != oversampling * n) {
    throw std::invalid_argument("build_gabor_dictionary: lattice does not factor d");
  }

  // periodized Gaussian window centered at 0
  RVector window(n);
  for (int t = 0; t < n; ++t) {
    double w = 0.0;
    for (int j = -3; j <= 3; ++j) {
      const double dt = static_cast<double>(t) + static_cast<double>(j) * n;
      w += std::exp(-dt * dt / (2.0 * window_std * window_std));
    }
    window(t) = w;
  }

  CMatrix atoms(n, oversampling * n);
  int col = 0;
  for (int k = 0; k < lattice.num_shifts; ++k) {
    const int shift = k * lattice.time_step;
    for (int l = 0; l < lattice.num_freqs; ++l) {
      const double omega = kTwoPi * static_cast<double>(l) / lattice.num_freqs;
      for (int t = 0; t < n; ++t) {
        const int wrapped = ((t - shift) % n + n) % n;
        atoms(t, col) = window(wrapped) * std::polar(1.0, omega * t);
      }
      ++col;
    }
  }
  return Dictionary(std::move(atoms), DictionaryKind::kGabor, lattice, true);
}

Dictionary build_spike_fourier_dictionary(int n) {
  if (n < 2) {
    throw std::invalid_argument("build_spike_fourier_dictionary: n must be >= 2");
  }
  const double scale = 1.0 / std::sqrt(2.0);
  CMatrix atoms = CMatrix::Zero(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    atoms(j, j) = scale;
  }
  const double fscale = scale / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int t = 0; t < n; ++t) {
      atoms(t, n + k) = fscale * std::polar(1.0, kTwoPi * t * k / n);
    }
  }
  // columns have norm 1/sqrt(2); the scaling makes the frame Parseval
  return Dictionary(std::move(atoms), DictionaryKind::kSpikeFourier, {}, false);
}

double coherence(const Dictionary& dict) {
  const int d = dict.d();
  if (d < 2) {
    throw std::invalid_argument("coherence: need at least two atoms");
  }
  const CMatrix& atoms = dict.atoms();
  RVector norms(d);
  for (int j = 0; j < d; ++j) norms(j) = atoms.col(j).norm();

  // blocked Gram to keep memory bounded for large d
  const int block = 256;
  double mu = 0.0;
  for (int j0 = 0; j0 < d; j0 += block) {
    const int jw = std::min(block, d - j0);
    const CMatrix cross = atoms.adjoint() * atoms.middleCols(j0, jw);  // d x jw
    for (int c = 0; c < jw; ++c) {
      for (int r = 0; r < d; ++r) {
        if (r == j0 + c) continue;
        const double val = std::abs(cross(r, c)) / (norms(r) * norms(j0 + c));
        if (val > mu) mu = val;
      }
    }
  }
  return std::min(mu, 1.0);
}

std::pair<double, double> frame_bounds(const Dictionary& dict) {
  return {dict.frame_lower(), dict.frame_upper()};
}

std::pair<double, double> frame_bounds(const DualFrame& dual) {
  const CMatrix gram = dual.matrix() * dual.matrix().adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

DualFrame canonical_dual(const Dictionary& dict) {
  return DualFrame(dict.canonical_dual_matrix(), dict);
}

Projector null_space_projector(const Dictionary& dict) {
  const CMatrix& atoms = dict.atoms();
  CMatrix p = CMatrix::Identity(dict.d(), dict.d()) -
              atoms.adjoint() * dict.apply_gram_inverse(atoms);
  return Projector(std::move(p));
}

DualFrame general_dual(const Dictionary& dict, const CMatrix& w) {
  if (w.rows() != dict.d() || w.cols() != dict.n()) {
    throw std::invalid_argument("general_dual: W must be d x n");
  }
  // Dtilde* = Dbar* + P W, applied column by column without forming P
  CMatrix dual_adj(dict.d(), dict.n());
  const CMatrix dbar = dict.canonical_dual_matrix();
  for (int c = 0; c < dict.n(); ++c) {
    dual_adj.col(c) = dbar.adjoint().col(c) + dict.project_null_space(w.col(c));
  }
  return DualFrame(dual_adj.adjoint(), dict);
}

DualFrame optimal_dual_from_solution(const Dictionary& dict, const CVector& f_hat,
                                     const CVector& p_g) {
  if (f_hat.size() != dict.n() || p_g.size() != dict.d()) {
    throw std::invalid_argument("optimal_dual_from_solution: shape mismatch");
  }
  const double fnorm = f_hat.norm();
  if (fnorm < 1e-12 * std::sqrt(static_cast<double>(dict.n()))) {
    throw std::invalid_argument("optimal_dual_from_solution: optimal dual undefined at zero signal");
  }
  const CVector residual = p_g - dict.project_null_space(p_g);
  if (residual.norm() > 1e-6 * (1.0 + p_g.norm())) {
    throw std::invalid_argument("optimal_dual_from_solution: Pg not in the null space of D");
  }
  // Dtilde_o* = Dbar* + Pg f_hat* / |f_hat|^2
  CMatrix dual_adj = dict.canonical_dual_matrix().adjoint();
  dual_adj.noalias() += p_g * f_hat.adjoint() / (fnorm * fnorm);
  return DualFrame(dual_adj.adjoint(), dict);
}

}  // namespace optidual
