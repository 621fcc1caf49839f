#include "optidual/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optidual {

namespace {

// indices sorted by descending magnitude, ties by lowest index
std::vector<int> magnitude_order(const CVector& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return std::abs(v(lhs)) > std::abs(v(rhs));
  });
  return order;
}

}  // namespace

double relative_error(const CVector& estimate, const CVector& truth) {
  if (estimate.size() != truth.size()) {
    throw std::invalid_argument("relative_error: size mismatch");
  }
  const double denom = truth.norm();
  if (denom == 0.0) {
    throw std::invalid_argument("relative_error: zero truth vector");
  }
  return (estimate - truth).norm() / denom;
}

double s_term_tail(const CVector& v, int s) {
  if (s < 0 || s > v.size()) {
    throw std::invalid_argument("s_term_tail: s out of range");
  }
  const auto order = magnitude_order(v);
  double tail = 0.0;
  for (int i = s; i < static_cast<int>(order.size()); ++i) {
    tail += std::abs(v(order[i]));
  }
  return tail;
}

DecayProfile decay_profile(const CVector& v, int k, std::string source) {
  if (k < 1 || k > v.size()) {
    throw std::invalid_argument("decay_profile: k out of range");
  }
  const auto order = magnitude_order(v);
  DecayProfile profile;
  profile.k = k;
  profile.source = std::move(source);
  profile.magnitudes.reserve(k);
  for (int i = 0; i < k; ++i) profile.magnitudes.push_back(std::abs(v(order[i])));
  return profile;
}

BoundReport bound_rhs(double eps, const CVector& v, int s, double c0, double c1) {
  if (s < 1) {
    throw std::invalid_argument("bound_rhs: s must be >= 1");
  }
  if (c0 < 0.0 || c1 < 0.0) {
    throw std::invalid_argument("bound_rhs: constants must be non-negative");
  }
  BoundReport report;
  report.epsilon = eps;
  report.s = s;
  report.c0 = c0;
  report.c1 = c1;
  report.tail = s_term_tail(v, std::min<int>(s, static_cast<int>(v.size())));
  report.rhs = c0 * eps + c1 * report.tail / std::sqrt(static_cast<double>(s));
  return report;
}

ConditionReport check_sufficient_condition(int s, int a, int b, double frame_b,
                                           double frame_b_tilde,
                                           double delta_s_plus_a, double delta_b) {
  if (s < 1 || a < 1 || b < 1) {
    throw std::invalid_argument("check_sufficient_condition: s, a, b must be positive");
  }
  if (!(b - a > 0 && b - a <= 3 * a)) {
    throw std::invalid_argument("check_sufficient_condition: need 0 < b - a <= 3a");
  }
  if (!(frame_b > 0.0) || !(frame_b_tilde > 0.0)) {
    throw std::invalid_argument("check_sufficient_condition: frame bounds must be positive");
  }
  if (delta_s_plus_a < 0.0 || delta_s_plus_a >= 1.0 || delta_b < 0.0 || delta_b >= 1.0) {
    throw std::invalid_argument("check_sufficient_condition: delta inputs must lie in [0, 1)");
  }
  ConditionReport report;
  report.s = s;
  report.a = a;
  report.b = b;
  report.rho = static_cast<double>(s) / b;
  report.frame_b = frame_b;
  report.frame_b_tilde = frame_b_tilde;
  report.delta_s_plus_a = delta_s_plus_a;
  report.delta_b = delta_b;
  const double t = report.rho * frame_b * frame_b_tilde;
  const double root = std::sqrt(t);
  const double lhs = (1.0 - root) * (1.0 - root) * delta_s_plus_a + t * delta_b;
  const double rhs = 1.0 - 2.0 * root;
  report.margin = lhs - rhs;
  report.satisfied = lhs < rhs;
  return report;
}

ConditionScanResult scan_sufficient_condition(int s, double frame_b,
                                              double frame_b_tilde, double delta,
                                              int a_max, int b_max) {
  if (s < 1) {
    throw std::invalid_argument("scan_sufficient_condition: s must be >= 1");
  }
  if (a_max <= 0) a_max = 2 * s;
  if (b_max <= 0) b_max = 6 * s;
  ConditionScanResult scan;
  bool have_best = false;
  for (int a = 1; a <= a_max; ++a) {
    for (int b = a + 1; b <= std::min(4 * a, b_max); ++b) {
      const auto report =
          check_sufficient_condition(s, a, b, frame_b, frame_b_tilde, delta, delta);
      ++scan.pairs_tested;
      if (!have_best || report.margin < scan.best.margin) {
        scan.best = report;
        have_best = true;
      }
      if (report.satisfied) {
        scan.found = true;
        scan.satisfying.emplace_back(a, b);
      }
    }
  }
  return scan;
}

}  // namespace optidual
