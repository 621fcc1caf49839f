#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>

namespace optidual {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class DictionaryKind { kCustom = 0, kGabor = 1, kSpikeFourier = 2 };

struct GaborLattice {
  int time_step = 0;   // samples between adjacent shifts
  int num_shifts = 0;  // K
  int num_freqs = 0;   // L, evenly spaced on [0, 2pi)
  double window_std = 0.0;
};

// A frame of C^n given by its atoms as columns of an n x d matrix.
// Construction verifies full row rank and caches the Gram D D* together with
// its Cholesky factor; the Gram condition number is refused above 1e12.
class Dictionary {
 public:
  explicit Dictionary(CMatrix atoms, DictionaryKind kind = DictionaryKind::kCustom,
                      GaborLattice lattice = {}, bool normalize_columns = true);

  int n() const { return static_cast<int>(atoms_.rows()); }
  int d() const { return static_cast<int>(atoms_.cols()); }
  const CMatrix& atoms() const { return atoms_; }
  DictionaryKind kind() const { return kind_; }
  const GaborLattice& lattice() const { return lattice_; }

  const CMatrix& gram() const { return gram_; }
  double gram_condition() const { return frame_upper_ / frame_lower_; }
  double frame_lower() const { return frame_lower_; }
  double frame_upper() const { return frame_upper_; }

  // (D D*)^{-1} applied to the columns of a matrix / to a vector
  CMatrix apply_gram_inverse(const CMatrix& rhs) const { return gram_llt_.solve(rhs); }

  // canonical dual Dbar = (D D*)^{-1} D, materialized on demand
  CMatrix canonical_dual_matrix() const { return gram_llt_.solve(atoms_); }

  // Dbar* f = D* (D D*)^{-1} f
  CVector analysis_canonical(const CVector& f) const {
    return atoms_.adjoint() * gram_llt_.solve(f);
  }

  // P v = v - D* (D D*)^{-1} D v without forming the d x d projector
  CVector project_null_space(const CVector& v) const {
    return v - atoms_.adjoint() * gram_llt_.solve(atoms_ * v);
  }

 private:
  CMatrix atoms_;
  DictionaryKind kind_;
  GaborLattice lattice_;
  CMatrix gram_;
  Eigen::LLT<CMatrix> gram_llt_;
  double frame_lower_ = 0.0;
  double frame_upper_ = 0.0;
};

// A dual frame Dtilde with D Dtilde* = I, verified at construction.
class DualFrame {
 public:
  DualFrame(CMatrix dual, const Dictionary& parent);

  const CMatrix& matrix() const { return dual_; }
  int n() const { return static_cast<int>(dual_.rows()); }
  int d() const { return static_cast<int>(dual_.cols()); }

  // Dtilde* f
  CVector analysis(const CVector& f) const { return dual_.adjoint() * f; }

 private:
  CMatrix dual_;  // n x d
};

// Orthogonal projector onto the null space of D, materialized as a d x d
// matrix. Prefer Dictionary::project_null_space in hot paths.
class Projector {
 public:
  explicit Projector(CMatrix p) : p_(std::move(p)) {}
  const CMatrix& matrix() const { return p_; }
  int d() const { return static_cast<int>(p_.rows()); }
  CVector apply(const CVector& v) const { return p_ * v; }

 private:
  CMatrix p_;
};

// Gabor dictionary on the lattice K = n/2 circular time shifts (step 2) times
// L = 2*oversampling modulation frequencies; d = oversampling * n atoms.
// Windows are periodized Gaussians of the given width in samples.
Dictionary build_gabor_dictionary(int n, int oversampling, double window_std = 8.0);

// D = [I, F]/sqrt(2) with F the unitary DFT basis; Parseval (A = B = 1).
Dictionary build_spike_fourier_dictionary(int n);

// max_{j != k} |<d_j, d_k>| / (|d_j| |d_k|), exact pairwise enumeration
double coherence(const Dictionary& dict);

// (lambda_min, lambda_max) of D D*
std::pair<double, double> frame_bounds(const Dictionary& dict);
std::pair<double, double> frame_bounds(const DualFrame& dual);

DualFrame canonical_dual(const Dictionary& dict);

// P = I_d - D* (D D*)^{-1} D
Projector null_space_projector(const Dictionary& dict);

// Dtilde* = Dbar* + P W for an arbitrary d x n matrix W
DualFrame general_dual(const Dictionary& dict, const CMatrix& w);

// Rank-one optimal dual from a solver solution pair (f_hat, Pg):
// Dtilde_o* = Dbar* + Pg f_hat* / |f_hat|^2.
DualFrame optimal_dual_from_solution(const Dictionary& dict, const CVector& f_hat,
                                     const CVector& p_g);

}  // namespace optidual
