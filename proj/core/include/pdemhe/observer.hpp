#pragma once

#include <memory>

#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"
#include "pdemhe/plant.hpp"

namespace pdemhe {

/// PDE observer for the hyperbolic plant; the same upwind scheme as the plant
/// plus the injection p1(x)[Y - u_hat(0,t)].
struct HyperbolicObserverState {
  Profile profile;
  double t = 0.0;
  std::shared_ptr<const HyperbolicModel> model;
  GainVector gain;
};

/// PDE observer for the parabolic plant with injection p1(x)[Y - u_hat_x(1,t)].
struct ParabolicObserverState {
  Profile profile;
  double t = 0.0;
  std::shared_ptr<const ParabolicModel> model;
  GainVector gain;
};

/// `y_now` is the measurement at the current time t, `u_next` is U(t + dt).
void step_observer_hyperbolic(HyperbolicObserverState& obs, double y_now, double u_next,
                              double dt);
void step_observer_parabolic(ParabolicObserverState& obs, double y_now, double u_next,
                             double dt);

/// L2 norm of the difference; throws GridMismatchError on different grids.
double error_norm(const Profile& plant, const Profile& estimate);

}  // namespace pdemhe
