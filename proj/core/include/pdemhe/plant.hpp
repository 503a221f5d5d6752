#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "pdemhe/coefficients.hpp"
#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"

namespace pdemhe {

/// Hyperbolic coefficients sampled once on the simulation grid.
class HyperbolicModel {
 public:
  HyperbolicModel(const CoefficientSet& coeffs, const Grid& grid);

  const Grid& grid() const noexcept { return f_.grid(); }
  const CoefficientSet& coefficients() const noexcept { return coeffs_; }
  const KernelTable& f() const noexcept { return f_; }
  std::span<const double> g() const noexcept { return g_; }

 private:
  CoefficientSet coeffs_;
  KernelTable f_;
  std::vector<double> g_;
};

/// Parabolic coefficient sampled once on the simulation grid.
class ParabolicModel {
 public:
  ParabolicModel(const CoefficientSet& coeffs, const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  const CoefficientSet& coefficients() const noexcept { return coeffs_; }
  std::span<const double> lambda() const noexcept { return lambda_; }
  double sup_lambda() const noexcept { return sup_lambda_; }

  /// Largest admissible explicit step: 0.4 dx^2 / (1 + lambda_bar dx^2).
  double max_stable_dt() const noexcept;

 private:
  CoefficientSet coeffs_;
  Grid grid_;
  std::vector<double> lambda_;
  double sup_lambda_;
};

struct HyperbolicPlantState {
  Profile profile;
  double t = 0.0;
  std::shared_ptr<const HyperbolicModel> model;
};

struct ParabolicPlantState {
  Profile profile;
  double t = 0.0;
  std::shared_ptr<const ParabolicModel> model;
};

/// One upwind step of u_t = u_x + g(x)u(0,t) + int_0^x f(x,y)u(y)dy with an
/// optional output-injection source gain(x) * innovation. Sets u(1) = boundary.
/// Throws ConfigError when dt > dx.
void advance_transport(std::span<double> u, const HyperbolicModel& model, double dt,
                       double boundary, std::span<const double> gain = {},
                       double innovation = 0.0);

/// One forward-Euler step of u_t = u_xx + lambda(x)u plus an optional
/// injection source; sets u(0) = 0 and u(1) = boundary. Throws ConfigError on a
/// stability violation.
void advance_diffusion(std::span<double> u, const ParabolicModel& model, double dt,
                       double boundary, std::span<const double> gain = {},
                       double innovation = 0.0);

/// Advance the plant from t to t + dt; `u_next` is U(t + dt).
void step_hyperbolic(HyperbolicPlantState& state, double u_next, double dt);
void step_parabolic(ParabolicPlantState& state, double u_next, double dt);

/// u(0, t).
double measure_hyperbolic(const Profile& u);
double measure_hyperbolic(const HyperbolicPlantState& state);

/// u_x(1, t) by the second-order one-sided stencil. Needs at least 4 nodes.
double measure_parabolic(const Profile& u);
double measure_parabolic(const ParabolicPlantState& state);

struct NoiseModel {
  double sigma2 = 0.0;  // variance
  std::uint64_t seed = 0;
};

/// Seeded Gaussian measurement noise; identical seeds give identical draws.
class NoiseSource {
 public:
  explicit NoiseSource(const NoiseModel& model);

  const NoiseModel& model() const noexcept { return model_; }
  double draw();

 private:
  NoiseModel model_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// y plus one draw of the noise source. Leaves the source untouched when the
/// variance is zero.
double add_noise(double y, NoiseSource& noise);

}  // namespace pdemhe
