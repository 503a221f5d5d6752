#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdemhe/scenario.hpp"

namespace pdemhe {

struct RunOptions {
  /// Directory for CSV/JSON artifacts; nothing is written when empty.
  std::optional<std::filesystem::path> out_dir;
  /// Suppress warnings on stderr.
  bool quiet = false;
};

struct RunSummary {
  std::string scenario;
  PlantClass plant_class = PlantClass::parabolic;
  /// Estimator error ||u - u_hat|| sampled every metrics.stride steps.
  std::vector<double> times;
  std::vector<double> errors;
  /// PDE-observer error on the same samples (only when output.observer).
  std::vector<double> observer_errors;
  /// Error at t = jT, j = 0, 1, ...
  std::vector<double> window_errors;
  double engagement_time = 0.0;
  double final_error = 0.0;
  /// Slope of log(error) after engagement, one intercept per phase t mod T;
  /// NaN when no phase has two samples above the floor.
  double decay_slope = 0.0;
  std::vector<double> contraction_ratios;
  double contraction_bound = 0.0;  // M exp(-pi^2 T), parabolic only
  double max_state_norm = 0.0;
  std::map<std::string, double> timings;

  /// Error at the sample closest to t.
  double error_at(double t) const;
};

/// Simulate plant, estimator (and optionally the PDE observer) and write
/// plant.csv, estimate.csv, error.csv, observer.csv, observer_error.csv and
/// summary.json into the output directory.
RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

/// JSON summary with keys engagement_time, final_error, decay_slope,
/// contraction_ratios and timings (plus a few descriptive extras).
void write_summary_json(const RunSummary& summary, std::ostream& out);

/// Plant only; writes plant.csv. Returns the final state norm.
double simulate_plant(const ScenarioConfig& cfg, const RunOptions& options = {});

/// Solve and export kernel.csv, inverse_kernel.csv, gain.csv and kernel.json.
void export_kernels(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

struct CompareLevel {
  std::size_t n_points = 0;
  double dt = 0.0;
  /// (t, ||u_hat_mhe - u_hat_obs||) at every compared instant.
  std::vector<double> times;
  std::vector<double> discrepancies;
  double sup_discrepancy = 0.0;
  double l2_discrepancy = 0.0;  // root-mean-square over the compared instants
  double max_state_norm = 0.0;
};

struct CompareReport {
  std::string scenario;
  std::vector<CompareLevel> levels;
  /// sup_discrepancy[k] / sup_discrepancy[k + 1].
  std::vector<double> refinement_ratios;
};

/// Noiseless MHE-versus-observer comparison at the configured grid and
/// `compare.refinements` successive halvings of dx. Hyperbolic: one observer
/// from u_hat0, compared on [1 + 2dx, total]. Parabolic: `compare.phases`
/// observers, each started from the warm-up profile at a phase s in [0, T)
/// and compared with the estimator at s + jT, which is where the two are
/// mathematically identical.
CompareReport compare_mhe_vs_observer(const ScenarioConfig& cfg);
CompareLevel compare_level(const ScenarioConfig& cfg);
void write_compare_json(const CompareReport& report, std::ostream& out);

struct ContractionReport {
  double horizon = 0.0;
  double threshold = 0.0;  // ln(M) / pi^2
  double bound = 0.0;      // M exp(-pi^2 T)
  double floor = 0.0;
  std::vector<double> window_errors;
  std::vector<double> ratios;
  /// Windows whose starting error exceeds the floor.
  std::vector<bool> informative;
  bool vacuous = false;  // bound >= 1
  bool satisfied = true;  // e_j <= bound e_{j-1} + floor on every window
};

/// Per-window error ratios of a noiseless parabolic run against the
/// overshoot bound. Throws ConfigError for hyperbolic or noisy configs.
ContractionReport check_contraction(const ScenarioConfig& cfg, std::size_t window_count);

struct BenchmarkReport {
  std::size_t steps = 0;
  double mhe_update_seconds = 0.0;    // per step
  double mhe_estimate_seconds = 0.0;  // per estimate
  double observer_step_seconds = 0.0; // per step
  double observer_seconds_per_unit_time = 0.0;
};

/// Wall-clock cost of the estimator against PDE-observer integration.
BenchmarkReport benchmark_cost(const ScenarioConfig& cfg, std::size_t steps);
void write_benchmark_json(const BenchmarkReport& report, std::ostream& out);

}  // namespace pdemhe
