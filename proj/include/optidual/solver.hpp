#pragma once

#include <vector>

#include "optidual/frames.hpp"
#include "optidual/sensing.hpp"

namespace optidual {

struct SolverConfig {
  double lambda = 1.0;
  double mu = 1.0;
  double tol = 1e-12;  // stopping threshold on |Phi f - y|_2
  int n_inner = 5;
  int n_outer = 100;
  enum class Variant { kOptimalDual, kFixedDual };
  Variant variant = Variant::kOptimalDual;

  void validate() const;
};

struct RecoveryResult {
  CVector f_hat;      // reported signal (D x_hat for the optimal-dual solver)
  CVector f_iterate;  // raw f iterate at exit
  CVector x_hat;      // coefficient estimate
  CVector p_g;        // auxiliary Pg at exit (zero for the fixed-dual variant)
  std::vector<double> residual_trace;  // |Phi f - y|_2 per outer iteration
  int outer_iters = 0;
  double objective = 0.0;  // |x_hat|_1
  bool converged = false;
};

// Element-wise soft shrinkage by theta; complex entries shrink in magnitude
// with phase preserved.
CVector soft_shrink(const CVector& v, double theta);

// Split Bregman iteration for optimal-dual-based l1-analysis; by the
// synthesis/analysis equivalence this is also the l1-synthesis solver, and
// the reported f_hat is D x_hat.
RecoveryResult solve(const SensingEnsemble& phi, const Dictionary& dict,
                     const CVector& y, double eps, const SolverConfig& config);

// Same Bregman loop with the projection update disabled (Pg = 0) and the
// supplied dual as the analysis operator; the canonical dual gives the
// standard l1-analysis method.
RecoveryResult solve_fixed_dual(const SensingEnsemble& phi, const DualFrame& dual,
                                const CVector& y, double eps,
                                const SolverConfig& config);

struct EquivalenceReport {
  double solver_objective = 0.0;
  double oracle_objective = 0.0;
  double objective_gap = 0.0;  // |solver - oracle|
  double solver_residual = 0.0;
  double oracle_residual = 0.0;
  bool feasible = false;
  bool oracle_optimal = false;
};

// Cross-check the Bregman solver against the simplex basis-pursuit oracle on
// a small real-valued instance (d <= 30).
EquivalenceReport verify_equivalence(const SensingEnsemble& phi, const Dictionary& dict,
                                     const CVector& y, const SolverConfig& config,
                                     int oracle_budget = 10000);

}  // namespace optidual
