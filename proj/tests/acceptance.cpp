// Acceptance gate: one line per criterion, PASS/FAIL with the measured values.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "optidual/bp_oracle.hpp"
#include "optidual/diagnostics.hpp"
#include "optidual/experiment.hpp"
#include "optidual/rng.hpp"
#include "optidual/solver.hpp"

using namespace optidual;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int criterion, bool pass, const char* fmt, ...) {
  if (!pass) ++failures;
  std::printf("%s  criterion %2d: ", pass ? "PASS" : "FAIL", criterion);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stdout, fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

double max_dual_deviation(const Dictionary& dict, const DualFrame& dual) {
  return (dict.atoms() * dual.matrix().adjoint() -
          CMatrix::Identity(dict.n(), dict.n()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

int main() {
  // --- 1: spike-Fourier coherence -------------------------------------------
  {
    const auto start = Clock::now();
    const Dictionary dict = build_spike_fourier_dictionary(128);
    const double mu = coherence(dict);
    const double elapsed = seconds_since(start);
    const double expected = 1.0 / std::sqrt(128.0);
    report(1, std::abs(mu - expected) <= 1e-6 && elapsed < 1.0,
           "spike-Fourier coherence %.8f vs 1/sqrt(128) = %.8f (%.2f s)", mu,
           expected, elapsed);
  }

  // --- 2: Gabor coherence regime --------------------------------------------
  {
    const auto start = Clock::now();
    const Dictionary gabor = build_gabor_dictionary(128, 30);
    const double mu = coherence(gabor);
    const double elapsed = seconds_since(start);
    report(2, mu >= 0.9 && elapsed < 30.0, "Gabor n=128 x30 coherence %.4f (%.1f s)",
           mu, elapsed);
  }

  // --- 3: spike-Fourier experiment (statistical) ----------------------------
  ExperimentResult exp2;
  {
    const auto start = Clock::now();
    ExperimentSpec spec;  // solver defaults are the pinned config
    spec.kind = ExperimentKind::kSpikeFourier;
    spec.m = 32;
    spec.n = 128;
    spec.block_sparsity = {4, 4};
    spec.trials = 51;
    spec.base_seed = 1;
    exp2 = run_experiment(spec);
    const double elapsed = seconds_since(start);
    const auto& s = exp2.summary;
    const bool pass = s.trials_ok == spec.trials &&
                      s.median_signal_error_synthesis <= 1e-3 &&
                      s.median_coefficient_error_synthesis <= 1e-3 &&
                      s.median_signal_error_analysis >= 0.2 && elapsed < 600.0;
    report(3, pass,
           "spike-Fourier medians over %d seeds: signal %.3e, coefficient %.3e "
           "(need <= 1e-3), canonical analysis %.3f (need >= 0.2) (%.0f s)",
           spec.trials, s.median_signal_error_synthesis,
           s.median_coefficient_error_synthesis, s.median_signal_error_analysis,
           elapsed);
  }

  // --- 4: Gabor experiment (statistical) ------------------------------------
  ExperimentResult exp1;
  {
    const auto start = Clock::now();
    ExperimentSpec spec;
    spec.kind = ExperimentKind::kGabor;
    spec.m = 32;
    spec.n = 128;
    spec.oversampling = 30;
    spec.sparsity = 7;
    spec.trials = 21;
    spec.base_seed = 1;
    exp1 = run_experiment(spec);
    const double elapsed = seconds_since(start);
    const auto& s = exp1.summary;
    const bool pass = s.trials_ok == spec.trials &&
                      s.median_signal_error_synthesis < s.median_signal_error_analysis &&
                      s.median_coefficient_error_synthesis >= 0.5 &&
                      s.median_signal_error_synthesis <= 0.25 && elapsed < 1800.0;
    report(4, pass,
           "Gabor medians over %d seeds: synthesis signal %.3f < analysis %.3f; "
           "coefficient %.3f >= 0.5 with signal <= 0.25 (%.0f s)",
           spec.trials, s.median_signal_error_synthesis, s.median_signal_error_analysis,
           s.median_coefficient_error_synthesis, elapsed);
  }

  // --- 5: oracle equivalence on tiny instances ------------------------------
  {
    CounterRng rng(99, 0xabc);
    SolverConfig config;  // disable the residual early stop so the objective settles
    config.lambda = 2.0;
    config.tol = 0.0;
    config.n_outer = 3000;
    int pass_count = 0;
    const int total = 60;
    double worst = 0.0;
    for (int t = 0; t < total; ++t) {
      const int n = 4 + static_cast<int>(rng.uniform_below(5));
      const int m = 2 + static_cast<int>(rng.uniform_below(std::min(n, 6) - 1));
      const int d =
          n + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(12 - n + 1)));
      CMatrix atoms(n, d);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) atoms(i, j) = Complex(rng.normal(), 0.0);
      const Dictionary dict(std::move(atoms));
      const auto phi = gaussian_sensing_matrix(m, n, 1000 + t);
      const int s = 1 + static_cast<int>(rng.uniform_below(2));
      const GroundTruth gt = synthesize_sparse_signal(dict, s, 2000 + t);
      const auto [y, eps] = measure(phi, gt.f, 0.0, 0);
      const EquivalenceReport rep = verify_equivalence(phi, dict, y, config);
      if (rep.oracle_optimal && rep.objective_gap < 1e-5) ++pass_count;
      worst = std::max(worst, rep.objective_gap);
    }
    report(5, pass_count == total,
           "solver vs basis-pursuit oracle: %d/%d objective gaps < 1e-5 (worst %.2e)",
           pass_count, total, worst);
  }

  // --- 6: dual identities and projector invariants --------------------------
  {
    const Dictionary sf = build_spike_fourier_dictionary(128);
    const Dictionary sf_small = build_spike_fourier_dictionary(32);
    const Dictionary gabor = build_gabor_dictionary(32, 2, 2.0);
    double worst = 0.0;

    worst = std::max(worst, max_dual_deviation(sf, canonical_dual(sf)));
    worst = std::max(worst, max_dual_deviation(gabor, canonical_dual(gabor)));

    CounterRng rng(5150);
    for (int t = 0; t < 100; ++t) {
      CMatrix w(sf_small.d(), sf_small.n());
      for (int i = 0; i < sf_small.d(); ++i)
        for (int j = 0; j < sf_small.n(); ++j) w(i, j) = rng.complex_normal();
      worst = std::max(worst, max_dual_deviation(sf_small, general_dual(sf_small, w)));
    }

    SolverConfig config;  // pinned experiment config
    for (int t = 0; t < 20; ++t) {
      const auto phi = gaussian_sensing_matrix(32, 128, 9000 + t);
      const GroundTruth gt =
          synthesize_sparse_signal(sf, std::vector<int>{4, 4}, 9100 + t);
      const auto [y, eps] = measure(phi, gt.f, 0.0, 0);
      const RecoveryResult rec = solve(phi, sf, y, 0.0, config);
      const DualFrame optimal = optimal_dual_from_solution(sf, rec.f_iterate, rec.p_g);
      worst = std::max(worst, max_dual_deviation(sf, optimal));
    }

    double worst_projector = 0.0;
    for (const Dictionary* dict : {&sf_small, &gabor}) {
      const Projector proj = null_space_projector(*dict);
      const CMatrix& p = proj.matrix();
      worst_projector = std::max(worst_projector, (p - p.adjoint()).cwiseAbs().maxCoeff());
      worst_projector = std::max(worst_projector, (p * p - p).cwiseAbs().maxCoeff());
      worst_projector =
          std::max(worst_projector, (dict->atoms() * p).cwiseAbs().maxCoeff());
    }

    report(6, worst < 1e-10 && worst_projector < 1e-10,
           "dual identity worst |D Dt* - I| = %.2e over canonical + 100 general + 20 "
           "optimal duals; projector invariants %.2e",
           worst, worst_projector);
  }

  // --- 7: decomposition invariant at convergence ----------------------------
  {
    const Dictionary sf = build_spike_fourier_dictionary(128);
    SolverConfig config;
    config.n_outer = 4000;  // the identity is only claimed at convergence
    int converged = 0;
    int ok = 0;
    double worst = 0.0;
    for (int t = 0; t < 12; ++t) {
      const auto phi = gaussian_sensing_matrix(32, 128, 500 + t);
      const GroundTruth gt =
          synthesize_sparse_signal(sf, std::vector<int>{4, 4}, 600 + t);
      const auto [y, eps] = measure(phi, gt.f, 0.0, 0);
      const RecoveryResult rec = solve(phi, sf, y, 0.0, config);
      if (!rec.converged) continue;
      ++converged;
      const CVector recon = sf.analysis_canonical(rec.f_iterate) + rec.p_g;
      const double rel = (rec.x_hat - recon).norm() / rec.x_hat.norm();
      worst = std::max(worst, rel);
      if (rel <= 1e-6) ++ok;
    }
    report(7, converged > 0 && ok == converged,
           "|x - (Dbar* f + Pg)| <= 1e-6 |x| on %d/%d converged runs (worst %.2e)",
           ok, converged, worst);
  }

  // --- 8: objective dominance on every experiment trial ----------------------
  {
    int ok = 0;
    int total = 0;
    for (const ExperimentResult* exp : {&exp2, &exp1}) {
      for (const auto& r : exp->records) {
        if (!r.error.empty()) continue;
        ++total;
        if (r.objective_synthesis <= r.objective_analysis + 1e-6) ++ok;
      }
    }
    report(8, total > 0 && ok == total,
           "|x|_1 <= |Dbar* f_analysis|_1 + 1e-6 on %d/%d trials", ok, total);
  }

  // --- 9: decay-profile ordering ---------------------------------------------
  {
    int ordered = 0;
    int total = 0;
    for (const auto& r : exp2.records) {
      if (!r.error.empty()) continue;
      ++total;
      if (r.tail_optimal < r.tail_canonical) ++ordered;
    }
    const double fraction = total > 0 ? static_cast<double>(ordered) / total : 0.0;
    report(9, fraction >= 0.8,
           "optimal-dual tail < canonical tail on %d/%d spike-Fourier truths (%.0f%%)",
           ordered, total, 100.0 * fraction);
  }

  // --- 10: sufficient-condition scan -----------------------------------------
  {
    const ConditionScanResult hit = scan_sufficient_condition(8, 1.0, 1.0, 0.13);
    const ConditionScanResult miss = scan_sufficient_condition(8, 1.0, 1.0, 0.5);
    report(10, hit.found && !miss.found,
           "Eq.-(9) scan at B*Bt = 1: delta 0.13 -> %zu satisfying pairs, delta 0.5 -> %zu",
           hit.satisfying.size(), miss.satisfying.size());
  }

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
