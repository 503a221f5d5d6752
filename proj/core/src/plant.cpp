#include "pdemhe/plant.hpp"

#include <cmath>
#include <string>

#include "pdemhe/errors.hpp"

namespace pdemhe {

HyperbolicModel::HyperbolicModel(const CoefficientSet& coeffs, const Grid& grid)
    : coeffs_(coeffs), f_(grid), g_(grid.size()) {
  const auto& hyp = coeffs_.require_hyperbolic();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    g_[i] = hyp.g(grid.x(i));
    for (std::size_t j = 0; j <= i; ++j) f_(i, j) = hyp.f(grid.x(i), grid.x(j));
  }
}

ParabolicModel::ParabolicModel(const CoefficientSet& coeffs, const Grid& grid)
    : coeffs_(coeffs), grid_(grid), lambda_(grid.size()), sup_lambda_(coeffs.sup_lambda(grid)) {
  const auto& lambda = coeffs_.require_parabolic().lambda;
  for (std::size_t i = 0; i < grid.size(); ++i) lambda_[i] = lambda(grid.x(i));
}

double ParabolicModel::max_stable_dt() const noexcept {
  const double h2 = grid_.dx() * grid_.dx();
  return 0.4 * h2 / (1.0 + sup_lambda_ * h2);
}

namespace {

void check_step(std::span<const double> u, const Grid& grid, std::span<const double> gain) {
  if (u.size() != grid.size()) throw GridMismatchError("state length does not match the grid");
  if (!gain.empty() && gain.size() != grid.size()) {
    throw GridMismatchError("injection gain length does not match the grid");
  }
}

void check_result(std::span<const double> u) {
  for (double v : u) {
    if (!std::isfinite(v)) throw NonFiniteError("simulation produced a non-finite value");
  }
}

}  // namespace

void advance_transport(std::span<double> u, const HyperbolicModel& model, double dt,
                       double boundary, std::span<const double> gain, double innovation) {
  const Grid& grid = model.grid();
  check_step(u, grid, gain);
  const double h = grid.dx();
  if (!(dt > 0.0) || dt > h * (1.0 + 1e-12)) {
    throw ConfigError("hyperbolic step violates CFL: dt = " + std::to_string(dt) +
                      " must lie in (0, dx = " + std::to_string(h) + "]");
  }
  const std::size_t n = u.size();
  const std::vector<double> prev(u.begin(), u.end());
  const double courant = dt / h;
  const auto& f = model.f();
  const auto g = model.g();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double integral = 0.0;
    if (i > 0) {
      integral = 0.5 * (f(i, 0) * prev[0] + f(i, i) * prev[i]);
      for (std::size_t j = 1; j < i; ++j) integral += f(i, j) * prev[j];
      integral *= h;
    }
    double src = g[i] * prev[0] + integral;
    if (!gain.empty()) src += gain[i] * innovation;
    u[i] = prev[i] + courant * (prev[i + 1] - prev[i]) + dt * src;
  }
  u[n - 1] = boundary;
  check_result(u);
}

void step_hyperbolic(HyperbolicPlantState& state, double u_next, double dt) {
  advance_transport(state.profile.values(), *state.model, dt, u_next);
  state.t += dt;
}

void advance_diffusion(std::span<double> u, const ParabolicModel& model, double dt,
                       double boundary, std::span<const double> gain, double innovation) {
  const Grid& grid = model.grid();
  check_step(u, grid, gain);
  const double limit = model.max_stable_dt();
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw ConfigError("parabolic step violates the explicit stability bound: dt = " +
                      std::to_string(dt) + " exceeds " + std::to_string(limit));
  }
  const std::size_t n = u.size();
  const double r = dt / (grid.dx() * grid.dx());
  const auto lambda = model.lambda();
  double left = u[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double centre = u[i];
    double next = centre + r * (u[i + 1] - 2.0 * centre + left) + dt * lambda[i] * centre;
    if (!gain.empty()) next += dt * gain[i] * innovation;
    left = centre;
    u[i] = next;
  }
  u[0] = 0.0;
  u[n - 1] = boundary;
  check_result(u);
}

void step_parabolic(ParabolicPlantState& state, double u_next, double dt) {
  advance_diffusion(state.profile.values(), *state.model, dt, u_next);
  state.t += dt;
}

double measure_hyperbolic(const Profile& u) { return u[0]; }
double measure_hyperbolic(const HyperbolicPlantState& state) {
  return measure_hyperbolic(state.profile);
}

double measure_parabolic(const Profile& u) {
  const std::size_t n = u.size();
  if (n < 4) throw ConfigError("boundary derivative stencil needs at least 4 nodes");
  return (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * u.grid().dx());
}
double measure_parabolic(const ParabolicPlantState& state) {
  return measure_parabolic(state.profile);
}

NoiseSource::NoiseSource(const NoiseModel& model)
    : model_(model), engine_(model.seed), normal_(0.0, std::sqrt(model.sigma2)) {
  if (!(model.sigma2 >= 0.0) || !std::isfinite(model.sigma2)) {
    throw ConfigError("noise variance must be finite and non-negative");
  }
}

double NoiseSource::draw() { return normal_(engine_); }

double add_noise(double y, NoiseSource& noise) {
  if (noise.model().sigma2 == 0.0) return y;
  return y + noise.draw();
}

}  // namespace pdemhe
