#include "pdemhe/observer.hpp"

#include <cmath>
#include <vector>

namespace pdemhe {

void step_observer_hyperbolic(HyperbolicObserverState& obs, double y_now, double u_next,
                              double dt) {
  require_same_grid(obs.profile.grid(), obs.gain.grid, "hyperbolic observer");
  const double innovation = y_now - measure_hyperbolic(obs.profile);
  advance_transport(obs.profile.values(), *obs.model, dt, u_next, obs.gain.values, innovation);
  obs.t += dt;
}

void step_observer_parabolic(ParabolicObserverState& obs, double y_now, double u_next,
                             double dt) {
  require_same_grid(obs.profile.grid(), obs.gain.grid, "parabolic observer");
  const double innovation = y_now - measure_parabolic(obs.profile);
  advance_diffusion(obs.profile.values(), *obs.model, dt, u_next, obs.gain.values, innovation);
  obs.t += dt;
}

double error_norm(const Profile& plant, const Profile& estimate) {
  require_same_grid(plant.grid(), estimate.grid(), "error norm");
  std::vector<double> sq(plant.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double d = plant[i] - estimate[i];
    sq[i] = d * d;
  }
  return std::sqrt(trapezoid_integral(sq, plant.grid().dx()));
}

}  // namespace pdemhe
