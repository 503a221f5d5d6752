#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pdemhe/coefficients.hpp"
#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"
#include "pdemhe/parabolic_mhe.hpp"
#include "pdemhe/plant.hpp"

namespace pdemhe {

enum class PlantClass { hyperbolic, parabolic };

std::string_view to_string(PlantClass c) noexcept;

/// A * sin(omega t + phase).
struct SinusoidTerm {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  friend bool operator==(const SinusoidTerm&, const SinusoidTerm&) = default;
};

/// Exogenous boundary input U(t) as a sum of sinusoids.
struct InputSignal {
  std::vector<SinusoidTerm> terms;

  double operator()(double t) const noexcept;
  friend bool operator==(const InputSignal&, const InputSignal&) = default;
};

enum class InitialShape { constant, sine, ramp };

/// Initial plant profile. With U0 = U(0):
///   constant: A everywhere (boundary nodes are then overwritten);
///   sine:     A sin(pi x) + U0 x;
///   ramp:     A x (1 - x) + U0 x.
struct InitialProfile {
  InitialShape shape = InitialShape::constant;
  double amplitude = 0.0;

  double operator()(double x, double u0) const noexcept;
  friend bool operator==(const InitialProfile&, const InitialProfile&) = default;
};

enum class NoiseInterpretation { variance, stddev };

/// Full declarative description of one experiment. Serialized as flat
/// `dotted.key = value` lines; see README for the key list.
struct ScenarioConfig {
  std::string name = "custom";
  PlantClass plant_class = PlantClass::parabolic;

  ScalarFunction lambda = ScalarFunction::constant(0.0);
  BivariateFunction f = BivariateFunction::constant(0.0);
  ScalarFunction g = ScalarFunction::constant(0.0);

  InitialProfile u0;
  double uhat0 = 0.0;
  InputSignal input;

  std::size_t n_points = 101;
  double dt = 2.5e-5;
  double total_time = 1.0;

  double horizon = 0.1;
  int modes = 4;
  std::size_t snapshot_stride = 1;
  SourceForm source_form = SourceForm::intertwined;
  bool boundary_tail = true;

  double noise_level = 0.0;
  NoiseInterpretation noise_interpretation = NoiseInterpretation::variance;
  std::uint64_t seed = 1;

  std::size_t output_stride = 1;
  std::size_t metrics_stride = 1;
  bool output_observer = false;

  double kernel_tol = 1e-10;
  int kernel_max_iter = 200;

  std::size_t compare_phases = 4;
  std::size_t compare_refinements = 1;

  double fit_span = 0.5;
  double error_floor = 1e-6;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  Grid grid() const { return Grid(n_points); }
  CoefficientSet coefficients() const;
  SolverOptions solver() const { return {kernel_tol, kernel_max_iter}; }
  NoiseModel noise() const;
  ParabolicMheOptions mhe_options() const;
  std::size_t total_steps() const;

  /// Throws ConfigError describing the first violated precondition.
  void validate() const;
};

/// Parse `key = value` lines ('#' starts a comment). Unknown keys, malformed
/// values and violated preconditions raise ConfigError with the line number.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Canonical serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& cfg);

/// Names of the built-in presets.
std::vector<std::string> preset_names();

/// Throws ConfigError for an unknown name.
ScenarioConfig preset(std::string_view name);

/// Same scenario with dx halved `levels` times and dt rescaled to keep the
/// stability ratio (dt ~ dx for hyperbolic, dt ~ dx^2 for parabolic).
ScenarioConfig refined(const ScenarioConfig& cfg, std::size_t levels);

}  // namespace pdemhe
