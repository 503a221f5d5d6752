#pragma once

#include "pdemhe/coefficients.hpp"
#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"
#include "pdemhe/signal_history.hpp"

namespace pdemhe {

/// Explicit moving-horizon estimator for the hyperbolic PIDE. The estimate at
/// time t is a closed-form functional of Y and U on [t - 1, t]:
///
///   w(x,t) = int_{t+x-1}^t theta(t+x-tau) Y(tau) dtau + U(t+x-1)
///   u(x,t) = w(x,t) - int_0^x k(x,y) w(y,t) dy
class HyperbolicMhe {
 public:
  /// Solves k, l and theta for `coeffs` on `grid`.
  HyperbolicMhe(const CoefficientSet& coeffs, const Grid& grid, double dt,
                const SolverOptions& solver = {});
  HyperbolicMhe(KernelTable k, KernelTable l, GainVector theta, double dt);

  static constexpr double horizon = 1.0;

  /// Record Y(t) and U(t). Timestamps must advance by exactly dt.
  void push(double t, double y, double u);

  /// True once the histories span [t - 1, t].
  bool ready(double t) const noexcept;

  /// Target-system state w(., t). Throws WindowError when the histories do not
  /// cover [t - 1, t].
  Profile estimate_target(double t) const;

  /// Plant-state estimate u_hat(., t).
  Profile estimate(double t) const;

  const KernelTable& k() const noexcept { return k_; }
  const KernelTable& l() const noexcept { return l_; }
  const GainVector& theta() const noexcept { return theta_; }
  const SignalHistory& y_history() const noexcept { return y_hist_; }
  const SignalHistory& u_history() const noexcept { return u_hist_; }
  double dt() const noexcept { return y_hist_.dt(); }

 private:
  double theta_at(double s) const noexcept;

  KernelTable k_;
  KernelTable l_;
  GainVector theta_;
  SignalHistory y_hist_;
  SignalHistory u_hist_;
};

}  // namespace pdemhe
