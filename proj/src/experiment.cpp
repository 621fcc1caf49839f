#include "optidual/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <stdexcept>
#include <thread>

#include "optidual/rng.hpp"

namespace optidual {

namespace {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - lo;
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

Dictionary build_dictionary(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kGabor:
      return build_gabor_dictionary(spec.n, spec.oversampling, spec.window_std);
    case ExperimentKind::kSpikeFourier:
      return build_spike_fourier_dictionary(spec.n);
    default:
      throw std::invalid_argument("run_experiment: custom experiments need a dictionary");
  }
}

TrialRecord run_trial(const ExperimentSpec& spec, const Dictionary& dict,
                      const DualFrame& dbar, double mu, int trial) {
  TrialRecord record;
  record.trial = trial;
  record.seed = derive_seed(spec.base_seed, trial, 0);
  record.coherence = mu;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto phi = gaussian_sensing_matrix(
        spec.m, spec.n, derive_seed(spec.base_seed, trial, 1));
    const GroundTruth gt =
        spec.block_sparsity.empty()
            ? synthesize_sparse_signal(dict, spec.sparsity,
                                       derive_seed(spec.base_seed, trial, 2))
            : synthesize_sparse_signal(dict, spec.block_sparsity,
                                       derive_seed(spec.base_seed, trial, 2));
    const auto [y, eps] =
        measure(phi, gt.f, spec.eps, derive_seed(spec.base_seed, trial, 3));

    const RecoveryResult syn = solve(phi, dict, y, eps, spec.solver);
    const RecoveryResult ana = solve_fixed_dual(phi, dbar, y, eps, spec.solver);

    record.signal_error_synthesis = relative_error(syn.f_hat, gt.f);
    record.signal_error_analysis = relative_error(ana.f_hat, gt.f);
    record.coefficient_error_synthesis = relative_error(syn.x_hat, gt.x);
    record.objective_synthesis = syn.objective;
    record.objective_analysis = dbar.analysis(ana.f_hat).cwiseAbs().sum();
    record.converged_synthesis = syn.converged;
    record.converged_analysis = ana.converged;
    record.outer_iters_synthesis = syn.outer_iters;
    record.outer_iters_analysis = ana.outer_iters;
    record.imag_residual =
        syn.f_hat.norm() > 0.0 ? syn.f_hat.imag().norm() / syn.f_hat.norm() : 0.0;

    const DualFrame optimal =
        optimal_dual_from_solution(dict, syn.f_iterate, syn.p_g);
    const CVector canonical_coeffs = dbar.analysis(gt.f);
    const CVector optimal_coeffs = optimal.analysis(gt.f);
    record.tail_canonical = s_term_tail(canonical_coeffs, gt.s);
    record.tail_optimal = s_term_tail(optimal_coeffs, gt.s);
    const int k = std::min(100, dict.d());
    record.decay_canonical = decay_profile(canonical_coeffs, k, "canonical").magnitudes;
    record.decay_optimal = decay_profile(optimal_coeffs, k, "optimal").magnitudes;
  } catch (const std::exception& ex) {
    record.error = ex.what();
  }
  record.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return record;
}

void write_trials_json(const std::vector<TrialRecord>& records,
                       const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& record : records) arr.push_back(trial_record_to_json(record));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("run_experiment: cannot write " + path.string());
  out << arr.dump(2) << "\n";
}

}  // namespace

void ExperimentSpec::validate() const {
  if (m < 1 || m > n) throw std::invalid_argument("ExperimentSpec: need 1 <= m <= n");
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: need at least one trial");
  if (eps < 0.0) throw std::invalid_argument("ExperimentSpec: negative eps");
  solver.validate();
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Dictionary dict = build_dictionary(spec);
  const DualFrame dbar = canonical_dual(dict);
  const double mu = coherence(dict);

  ExperimentResult result;
  result.coherence = mu;
  result.records.resize(spec.trials);

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(spec.trials)));
  std::atomic<int> next{0};
  std::vector<std::future<void>> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (int t = next.fetch_add(1); t < spec.trials; t = next.fetch_add(1)) {
        result.records[t] = run_trial(spec, dict, dbar, mu, t);
      }
    }));
  }
  for (auto& f : pool) f.get();

  std::vector<double> sig_syn, sig_ana, coef_syn;
  for (const auto& record : result.records) {
    if (!record.error.empty()) continue;
    sig_syn.push_back(record.signal_error_synthesis);
    sig_ana.push_back(record.signal_error_analysis);
    coef_syn.push_back(record.coefficient_error_synthesis);
  }
  auto& summary = result.summary;
  summary.trials_total = spec.trials;
  summary.trials_ok = static_cast<int>(sig_syn.size());
  summary.median_signal_error_synthesis = median(sig_syn);
  summary.median_signal_error_analysis = median(sig_ana);
  summary.median_coefficient_error_synthesis = median(coef_syn);
  summary.iqr_signal_error_synthesis = quantile(sig_syn, 0.75) - quantile(sig_syn, 0.25);
  summary.iqr_signal_error_analysis = quantile(sig_ana, 0.75) - quantile(sig_ana, 0.25);
  summary.iqr_coefficient_error_synthesis =
      quantile(coef_syn, 0.75) - quantile(coef_syn, 0.25);

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    write_trials_json(result.records, spec.out_dir / "trials.json");
    emit_plot_data(result.records, spec.out_dir);
    std::ofstream sj(spec.out_dir / "summary.json");
    sj << summary_to_json(summary).dump(2) << "\n";
    std::ofstream timings(spec.out_dir / "timings.csv");
    timings << "trial,timing_ms\n";
    for (const auto& record : result.records) {
      timings << record.trial << "," << record.timing_ms << "\n";
    }
  }
  return result;
}

void emit_plot_data(const std::vector<TrialRecord>& records,
                    const std::filesystem::path& out_dir) {
  if (records.empty()) {
    throw std::invalid_argument("emit_plot_data: no records");
  }
  std::filesystem::create_directories(out_dir);

  // per-trial error table
  const auto summary_path = out_dir / "summary.csv";
  std::ofstream summary(summary_path);
  if (!summary) throw std::runtime_error("emit_plot_data: cannot write " + summary_path.string());
  summary.precision(17);
  summary << "trial,seed,coherence,signal_error_synthesis,signal_error_analysis,"
             "coefficient_error_synthesis,objective_synthesis,objective_analysis,"
             "converged_synthesis,converged_analysis,tail_canonical,tail_optimal,error\n";
  for (const auto& r : records) {
    summary << r.trial << "," << r.seed << "," << r.coherence << ","
            << r.signal_error_synthesis << "," << r.signal_error_analysis << ","
            << r.coefficient_error_synthesis << "," << r.objective_synthesis << ","
            << r.objective_analysis << "," << r.converged_synthesis << ","
            << r.converged_analysis << "," << r.tail_canonical << ","
            << r.tail_optimal << "," << (r.error.empty() ? "" : "\"" + r.error + "\"")
            << "\n";
  }

  for (const auto& r : records) {
    if (r.decay_canonical.empty()) continue;
    const auto path = out_dir / ("decay_" + std::to_string(r.trial) + ".csv");
    std::ofstream decay(path);
    if (!decay) throw std::runtime_error("emit_plot_data: cannot write " + path.string());
    decay.precision(17);
    decay << "index,canonical,optimal\n";
    for (std::size_t i = 0; i < r.decay_canonical.size(); ++i) {
      decay << i << "," << r.decay_canonical[i] << "," << r.decay_optimal[i] << "\n";
    }
  }
}

nlohmann::json trial_record_to_json(const TrialRecord& record) {
  // timing_ms deliberately omitted: trials.json must be reproducible byte
  // for byte from the base seed
  return {{"trial", record.trial},
          {"seed", record.seed},
          {"coherence", record.coherence},
          {"signal_error_synthesis", record.signal_error_synthesis},
          {"signal_error_analysis", record.signal_error_analysis},
          {"coefficient_error_synthesis", record.coefficient_error_synthesis},
          {"objective_synthesis", record.objective_synthesis},
          {"objective_analysis", record.objective_analysis},
          {"converged_synthesis", record.converged_synthesis},
          {"converged_analysis", record.converged_analysis},
          {"outer_iters_synthesis", record.outer_iters_synthesis},
          {"outer_iters_analysis", record.outer_iters_analysis},
          {"tail_canonical", record.tail_canonical},
          {"tail_optimal", record.tail_optimal},
          {"imag_residual", record.imag_residual},
          {"decay_canonical", record.decay_canonical},
          {"decay_optimal", record.decay_optimal},
          {"error", record.error}};
}

nlohmann::json summary_to_json(const ExperimentSummary& summary) {
  return {{"trials_total", summary.trials_total},
          {"trials_ok", summary.trials_ok},
          {"median_signal_error_synthesis", summary.median_signal_error_synthesis},
          {"median_signal_error_analysis", summary.median_signal_error_analysis},
          {"median_coefficient_error_synthesis", summary.median_coefficient_error_synthesis},
          {"iqr_signal_error_synthesis", summary.iqr_signal_error_synthesis},
          {"iqr_signal_error_analysis", summary.iqr_signal_error_analysis},
          {"iqr_coefficient_error_synthesis", summary.iqr_coefficient_error_synthesis}};
}

}  // namespace optidual
