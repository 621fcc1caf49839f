#pragma once

#include <Eigen/Dense>

namespace optidual {

struct BasisPursuitSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  bool optimal = false;
  int iterations = 0;
};

// Exact basis pursuit for real instances: min |x|_1 s.t. A x = y, solved as a
// linear program (x = u - v, u, v >= 0) with a dense two-phase simplex using
// Bland's rule. Intended for tiny test instances (d up to a few dozen); kept
// deliberately separate from the Bregman solver so it can serve as an
// independent oracle.
BasisPursuitSolution basis_pursuit_lp(const Eigen::MatrixXd& a,
                                      const Eigen::VectorXd& y,
                                      int max_iterations = 10000);

}  // namespace optidual
