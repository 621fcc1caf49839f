#include "optidual/bp_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace optidual {

namespace {

constexpr double kEps = 1e-10;

// Dense tableau simplex, Bland's rule. Minimizes c^T z s.t. T z = b, z >= 0,
// starting from the given basis (assumed feasible with identity columns).
struct Tableau {
  Eigen::MatrixXd t;         // m x (cols + 1), last column is b
  std::vector<int> basis;    // basic variable per row
  Eigen::VectorXd cost;      // cols
  int cols;

  // reduced cost row: c_j - c_B^T B^{-1} A_j; the tableau is kept in
  // canonical form so this is direct
  double reduced_cost(int j) const {
    double r = cost(j);
    for (int i = 0; i < t.rows(); ++i) r -= cost(basis[i]) * t(i, j);
    return r;
  }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      const double factor = t(i, col);
      if (factor != 0.0) t.row(i) -= factor * t.row(row);
    }
    basis[row] = col;
  }

  // returns true on optimality, false when iteration budget exhausted
  bool run(int max_iterations, int* used) {
    const int m = static_cast<int>(t.rows());
    for (int it = 0; it < max_iterations; ++it) {
      int entering = -1;
      for (int j = 0; j < cols; ++j) {
        if (reduced_cost(j) < -kEps) {
          entering = j;  // Bland: smallest index
          break;
        }
      }
      if (entering < 0) {
        *used += it;
        return true;
      }
      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t(i, entering) > kEps) {
          const double ratio = t(i, cols) / t(i, entering);
          if (leaving < 0 || ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && basis[i] < basis[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) {
        throw std::runtime_error("basis_pursuit_lp: unbounded LP (should not happen)");
      }
      pivot(leaving, entering);
    }
    *used += max_iterations;
    return false;
  }
};

}  // namespace

BasisPursuitSolution basis_pursuit_lp(const Eigen::MatrixXd& a,
                                      const Eigen::VectorXd& y,
                                      int max_iterations) {
  const int m = static_cast<int>(a.rows());
  const int d = static_cast<int>(a.cols());
  if (y.size() != m) {
    throw std::invalid_argument("basis_pursuit_lp: dimension mismatch");
  }

  // standard form: [A, -A] z = b with b >= 0 (rows flipped as needed)
  const int nvar = 2 * d;
  Tableau tab;
  tab.cols = nvar + m;  // plus phase-1 artificials
  tab.t.resize(m, tab.cols + 1);
  for (int i = 0; i < m; ++i) {
    const double sign = y(i) >= 0.0 ? 1.0 : -1.0;
    tab.t.block(i, 0, 1, d) = sign * a.row(i);
    tab.t.block(i, d, 1, d) = -sign * a.row(i);
    tab.t.block(i, nvar, 1, m).setZero();
    tab.t(i, nvar + i) = 1.0;
    tab.t(i, tab.cols) = sign * y(i);
  }
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = nvar + i;

  BasisPursuitSolution sol;
  sol.x = Eigen::VectorXd::Zero(d);

  // phase 1: minimize sum of artificials
  tab.cost = Eigen::VectorXd::Zero(tab.cols);
  tab.cost.tail(m).setOnes();
  int used = 0;
  if (!tab.run(max_iterations, &used)) {
    sol.iterations = used;
    return sol;
  }
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= nvar) infeas += tab.t(i, tab.cols);
  }
  if (infeas > 1e-7) {
    throw std::runtime_error("basis_pursuit_lp: infeasible system A x = y");
  }
  // drive remaining artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= nvar) {
      for (int j = 0; j < nvar; ++j) {
        if (std::abs(tab.t(i, j)) > kEps) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // phase 2: forbid artificials, minimize l1 objective
  tab.cost.setZero();
  tab.cost.head(nvar).setOnes();
  for (int j = nvar; j < tab.cols; ++j) tab.cost(j) = 1e8;
  if (!tab.run(max_iterations - used, &used)) {
    sol.iterations = used;
    return sol;
  }

  for (int i = 0; i < m; ++i) {
    const int var = tab.basis[i];
    const double val = tab.t(i, tab.cols);
    if (var < d) {
      sol.x(var) += val;
    } else if (var < nvar) {
      sol.x(var - d) -= val;
    }
  }
  sol.objective = sol.x.lpNorm<1>();
  sol.optimal = true;
  sol.iterations = used;
  return sol;
}

}  // namespace optidual
