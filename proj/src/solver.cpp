#include "optidual/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "optidual/bp_oracle.hpp"

namespace optidual {

namespace {

CVector apply_real(const RMatrix& a, const CVector& v) {
  CVector out(a.rows());
  out.real() = a * v.real();
  out.imag() = a * v.imag();
  return out;
}

double l1_norm(const CVector& v) { return v.cwiseAbs().sum(); }

// Shared Bregman loop. `project` enables the null-space update that turns the
// fixed-dual iteration into the optimal-dual one.
RecoveryResult bregman_iterate(const SensingEnsemble& phi, const CMatrix& dual,
                               const Dictionary* project_dict, const CVector& y,
                               double eps, const SolverConfig& config) {
  config.validate();
  const int m = phi.m;
  const int n = phi.n;
  const int d = static_cast<int>(dual.cols());
  if (dual.rows() != n) {
    throw std::invalid_argument("solve: dual/sensing dimension mismatch");
  }
  if (y.size() != m) {
    throw std::invalid_argument("solve: measurement dimension mismatch");
  }
  if (eps < 0.0) {
    throw std::invalid_argument("solve: negative noise bound");
  }

  // The Bregman iterates (unlike the minimizer) are not invariant to the
  // normalization of Phi. Scale the data term so that a unit-variance Gaussian
  // Phi reproduces the printed parameter setting: (alpha Phi, alpha y) is
  // exactly equivalent to mu -> alpha^2 mu.
  const double phi_rms_sq = phi.phi.squaredNorm() / (static_cast<double>(m) * n);
  if (phi_rms_sq <= 0.0) {
    throw std::invalid_argument("solve: zero sensing matrix");
  }
  const double mu_eff = config.mu / phi_rms_sq;

  // f-update system (mu Phi* Phi + lambda Dtilde Dtilde*), SPD for lambda > 0
  CMatrix system = (mu_eff * (phi.phi.transpose() * phi.phi)).cast<Complex>();
  system.noalias() += config.lambda * (dual * dual.adjoint());
  Eigen::LLT<CMatrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("solve: f-update system is not positive definite");
  }

  const double stop_tol = std::max(config.tol, eps);
  const double shrink_theta = 1.0 / config.lambda;

  CVector f = CVector::Zero(n);
  CVector x = CVector::Zero(d);
  CVector b = CVector::Zero(d);
  CVector pg = CVector::Zero(d);
  CVector c = CVector::Zero(m);

  RecoveryResult result;
  for (int k = 0; k < config.n_outer; ++k) {
    for (int inner = 0; inner < config.n_inner; ++inner) {
      // Gauss-Seidel order f -> x -> Pg -> b, each using the freshest values
      const CVector rhs =
          mu_eff * apply_real(phi.phi.transpose(), y - c) +
          config.lambda * (dual * (x - pg - b));
      f = llt.solve(rhs);
      const CVector dual_f = dual.adjoint() * f;
      x = soft_shrink(dual_f + pg + b, shrink_theta);
      if (project_dict != nullptr) {
        pg = project_dict->project_null_space(x - dual_f - b);
      }
      b += dual_f + pg - x;
      if (!f.allFinite() || !x.allFinite() || !b.allFinite()) {
        throw std::runtime_error("solve: non-finite iterate at outer step " +
                                 std::to_string(k));
      }
    }
    const CVector residual = apply_real(phi.phi, f) - y;
    const double res_norm = residual.norm();
    result.residual_trace.push_back(res_norm);
    result.outer_iters = k + 1;
    c += residual;
    if (res_norm <= stop_tol) {
      result.converged = true;
      break;
    }
  }

  result.f_iterate = f;
  result.x_hat = x;
  result.p_g = pg;
  result.objective = l1_norm(x);
  return result;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("SolverConfig: lambda and mu must be positive");
  }
  if (tol < 0.0) {
    throw std::invalid_argument("SolverConfig: negative tolerance");
  }
  if (n_inner < 1 || n_outer < 1) {
    throw std::invalid_argument("SolverConfig: iteration counts must be >= 1");
  }
}

CVector soft_shrink(const CVector& v, double theta) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("soft_shrink: theta must be positive");
  }
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    out(i) = mag <= theta ? Complex(0.0, 0.0) : v(i) * ((mag - theta) / mag);
  }
  return out;
}

RecoveryResult solve(const SensingEnsemble& phi, const Dictionary& dict,
                     const CVector& y, double eps, const SolverConfig& config) {
  if (phi.n != dict.n()) {
    throw std::invalid_argument("solve: dictionary/sensing dimension mismatch");
  }
  const CMatrix dbar = dict.canonical_dual_matrix();
  RecoveryResult result = bregman_iterate(phi, dbar, &dict, y, eps, config);
  // synthesis estimate: f_hat = D x_hat
  result.f_hat = dict.atoms() * result.x_hat;
  return result;
}

RecoveryResult solve_fixed_dual(const SensingEnsemble& phi, const DualFrame& dual,
                                const CVector& y, double eps,
                                const SolverConfig& config) {
  RecoveryResult result = bregman_iterate(phi, dual.matrix(), nullptr, y, eps, config);
  result.f_hat = result.f_iterate;
  return result;
}

EquivalenceReport verify_equivalence(const SensingEnsemble& phi, const Dictionary& dict,
                                     const CVector& y, const SolverConfig& config,
                                     int oracle_budget) {
  if (dict.d() > 30) {
    throw std::invalid_argument("verify_equivalence: instance too large for the oracle");
  }
  if (dict.atoms().imag().cwiseAbs().maxCoeff() > 1e-12 ||
      y.imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("verify_equivalence: oracle requires a real instance");
  }

  const RMatrix a = phi.phi * dict.atoms().real();
  const BasisPursuitSolution oracle = basis_pursuit_lp(a, y.real(), oracle_budget);
  const RecoveryResult rec = solve(phi, dict, y, 0.0, config);

  EquivalenceReport report;
  report.solver_objective = rec.objective;
  report.oracle_objective = oracle.objective;
  report.objective_gap = std::abs(rec.objective - oracle.objective);
  report.solver_residual = (apply_real(phi.phi, rec.f_hat) - y).norm();
  report.oracle_residual = (a * oracle.x - y.real()).norm();
  report.oracle_optimal = oracle.optimal;
  report.feasible = report.solver_residual <= std::max(config.tol, 1e-8);
  return report;
}

}  // namespace optidual
