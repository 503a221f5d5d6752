#include "pdemhe/hyperbolic_mhe.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pdemhe/errors.hpp"
#include "pdemhe/transforms.hpp"

namespace pdemhe {

namespace {

struct Kernels {
  KernelTable k;
  KernelTable l;
  GainVector theta;
};

Kernels solve_all(const CoefficientSet& coeffs, const Grid& grid, const SolverOptions& solver) {
  KernelTable k = solve_hyperbolic_kernel(coeffs, grid, solver);
  KernelTable l = invert_kernel(k, solver);
  GainVector theta = theta_kernel(observer_gain_hyperbolic(coeffs, k), l);
  return {std::move(k), std::move(l), std::move(theta)};
}

// Slightly more than one unit so that [t - 1, t] stays covered when 1/dt is
// not an integer.
double history_span(double dt) { return HyperbolicMhe::horizon + dt; }

}  // namespace

HyperbolicMhe::HyperbolicMhe(const CoefficientSet& coeffs, const Grid& grid, double dt,
                             const SolverOptions& solver)
    : HyperbolicMhe([&] {
        Kernels s = solve_all(coeffs, grid, solver);
        return HyperbolicMhe(std::move(s.k), std::move(s.l), std::move(s.theta), dt);
      }()) {}

HyperbolicMhe::HyperbolicMhe(KernelTable k, KernelTable l, GainVector theta, double dt)
    : k_(std::move(k)),
      l_(std::move(l)),
      theta_(std::move(theta)),
      y_hist_(dt, history_span(dt)),
      u_hist_(dt, history_span(dt)) {
  require_same_grid(k_.grid(), l_.grid(), "hyperbolic estimator");
  require_same_grid(k_.grid(), theta_.grid, "hyperbolic estimator");
}

void HyperbolicMhe::push(double t, double y, double u) {
  y_hist_.push(t, y);
  u_hist_.push(t, u);
}

bool HyperbolicMhe::ready(double t) const noexcept {
  return y_hist_.covers(t - horizon, t) && u_hist_.covers(t - horizon, t);
}

double HyperbolicMhe::theta_at(double s) const noexcept {
  const Grid& grid = theta_.grid;
  const double pos = std::clamp(s, 0.0, 1.0) / grid.dx();
  auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= grid.size()) return theta_[grid.size() - 1];
  const double w = pos - static_cast<double>(i);
  return theta_[i] + w * (theta_[i + 1] - theta_[i]);
}

Profile HyperbolicMhe::estimate_target(double t) const {
  if (!ready(t)) {
    throw WindowError("hyperbolic estimator needs Y and U on [t-1, t] at t=" + std::to_string(t));
  }
  const Grid& grid = k_.grid();
  const double tol = 1e-7 * dt();
  const std::size_t newest = y_hist_.index_at_or_before(t);

  std::vector<double> w(grid.size());
  std::vector<double> taus;
  std::vector<double> vals;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = t + grid.x(i) - horizon;
    taus.clear();
    vals.clear();
    // Integrate tau from t down to a; the endpoints may fall between samples.
    auto add = [&](double tau, double y) {
      taus.push_back(tau);
      vals.push_back(theta_at(t + grid.x(i) - tau) * y);
    };
    if (std::abs(y_hist_[newest].t - t) > tol) add(t, y_hist_.interpolate(t));
    for (std::size_t m = newest + 1; m-- > 0;) {
      const double tau = y_hist_[m].t;
      if (tau < a - tol) break;
      add(tau, y_hist_[m].value);
    }
    if (taus.empty() || taus.back() > a + tol) add(a, y_hist_.interpolate(a));

    double integral = 0.0;
    for (std::size_t m = 1; m < taus.size(); ++m) {
      integral += 0.5 * (taus[m - 1] - taus[m]) * (vals[m - 1] + vals[m]);
    }
    w[i] = integral + u_hist_.interpolate(a);
  }
  return Profile(grid, std::move(w));
}

Profile HyperbolicMhe::estimate(double t) const {
  return forward_transform_hyperbolic(estimate_target(t), k_);
}

}  // namespace pdemhe
