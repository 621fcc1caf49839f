#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "optidual/diagnostics.hpp"
#include "optidual/frames.hpp"
#include "optidual/sensing.hpp"
#include "optidual/solver.hpp"

namespace optidual {

enum class ExperimentKind { kGabor, kSpikeFourier, kCustom };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kSpikeFourier;
  int m = 32;
  int n = 128;
  int oversampling = 30;     // gabor
  double window_std = 8.0;   // gabor
  int sparsity = 7;          // single-block sparsity
  std::vector<int> block_sparsity;  // concatenation dictionaries, overrides sparsity
  double eps = 0.0;
  SolverConfig solver;
  int trials = 20;
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir;  // empty: keep results in memory only

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double coherence = 0.0;
  double signal_error_synthesis = 0.0;   // |D x_hat - f| / |f|
  double signal_error_analysis = 0.0;    // canonical-dual analysis recovery
  double coefficient_error_synthesis = 0.0;
  double objective_synthesis = 0.0;      // |x_hat|_1
  double objective_analysis = 0.0;       // |Dbar* f_hat_analysis|_1
  bool converged_synthesis = false;
  bool converged_analysis = false;
  int outer_iters_synthesis = 0;
  int outer_iters_analysis = 0;
  double tail_canonical = 0.0;  // s-term tail of Dbar* f (truth)
  double tail_optimal = 0.0;    // s-term tail of Dtilde_o* f (truth)
  double imag_residual = 0.0;   // |Im f_hat| / |f_hat|
  std::vector<double> decay_canonical;  // top-100 magnitudes
  std::vector<double> decay_optimal;
  std::string error;       // non-empty when the trial failed
  double timing_ms = 0.0;  // not serialized; wall time is not reproducible
};

struct ExperimentSummary {
  int trials_total = 0;
  int trials_ok = 0;
  double median_signal_error_synthesis = 0.0;
  double median_signal_error_analysis = 0.0;
  double median_coefficient_error_synthesis = 0.0;
  double iqr_signal_error_synthesis = 0.0;
  double iqr_signal_error_analysis = 0.0;
  double iqr_coefficient_error_synthesis = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
  double coherence = 0.0;
};

// Per trial: build dictionary -> sense -> optimal-dual solve (= synthesis) ->
// canonical-dual analysis solve -> optimal dual frame -> all figure metrics.
// Trials run in a worker pool with independent RNG streams; module errors are
// recorded per trial without aborting the batch. If out_dir is set, results
// are persisted (trials.json, summary.csv, summary.json, decay_<trial>.csv).
ExperimentResult run_experiment(const ExperimentSpec& spec);

// CSV emission on its own, for pre-computed records.
void emit_plot_data(const std::vector<TrialRecord>& records,
                    const std::filesystem::path& out_dir);

nlohmann::json trial_record_to_json(const TrialRecord& record);
nlohmann::json summary_to_json(const ExperimentSummary& summary);

double median(std::vector<double> values);

}  // namespace optidual
