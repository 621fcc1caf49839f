#pragma once

#include <string>
#include <vector>

#include "optidual/frames.hpp"

namespace optidual {

struct DecayProfile {
  std::vector<double> magnitudes;  // descending
  int k = 0;
  std::string source;
};

struct BoundReport {
  double epsilon = 0.0;
  int s = 0;
  double tail = 0.0;  // |v - v_s|_1
  double rhs = 0.0;   // c0 * eps + c1 * tail / sqrt(s)
  double c0 = 1.0;
  double c1 = 1.0;
  double lhs = 0.0;  // measured |f_hat - f|_2 when available
};

struct ConditionReport {
  int s = 0;
  int a = 0;
  int b = 0;
  double rho = 0.0;
  double frame_b = 0.0;
  double frame_b_tilde = 0.0;
  double delta_s_plus_a = 0.0;
  double delta_b = 0.0;
  bool satisfied = false;
  double margin = 0.0;  // LHS - RHS; negative means satisfied
};

struct ConditionScanResult {
  bool found = false;
  ConditionReport best;  // smallest margin seen
  int pairs_tested = 0;
  std::vector<std::pair<int, int>> satisfying;
};

// |estimate - truth|_2 / |truth|_2
double relative_error(const CVector& estimate, const CVector& truth);

// l1 mass outside the s largest magnitudes (ties: lowest index kept)
double s_term_tail(const CVector& v, int s);

// top-k magnitudes, descending
DecayProfile decay_profile(const CVector& v, int k, std::string source = {});

// Right-hand side of the recovery error bound; C0, C1 default to 1 and make
// this a relative diagnostic rather than a certificate.
BoundReport bound_rhs(double eps, const CVector& v, int s, double c0 = 1.0,
                      double c1 = 1.0);

// Literal evaluation of the sufficient condition
//   (1 - sqrt(rho B Btilde))^2 delta_{s+a} + rho B Btilde delta_b
//     < 1 - 2 sqrt(rho B Btilde),  rho = s/b,  0 < b - a <= 3a.
// With Monte Carlo delta lower bounds "satisfied = false" is inconclusive;
// the check is advisory.
ConditionReport check_sufficient_condition(int s, int a, int b, double frame_b,
                                           double frame_b_tilde,
                                           double delta_s_plus_a, double delta_b);

// Exhaustive scan over admissible (a, b) pairs using a single delta value for
// both constants. Defaults: a in [1, 2s], b in (a, min(4a, 6s)].
ConditionScanResult scan_sufficient_condition(int s, double frame_b,
                                              double frame_b_tilde, double delta,
                                              int a_max = -1, int b_max = -1);

}  // namespace optidual
