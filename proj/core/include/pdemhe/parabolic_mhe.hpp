#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "pdemhe/coefficients.hpp"
#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"
#include "pdemhe/signal_history.hpp"

namespace pdemhe {

/// How the output-injection source of the target heat system is written.
///   intertwined: l(1,x) Y - d/dx l(1,x) U, which is what the transposed
///                transform actually produces when u(1,t) = U(t) != 0;
///   printed:     l(1,x) [Y - k(1,1) U].
enum class SourceForm { intertwined, printed };

std::string_view to_string(SourceForm form) noexcept;
SourceForm parse_source_form(std::string_view text);

struct ParabolicMheOptions {
  double horizon = 0.1;
  int modes = 4;
  std::size_t snapshot_stride = 1;
  SourceForm source_form = SourceForm::intertwined;
  /// Add the N -> infinity limit of the boundary-lifting series.
  bool boundary_tail = true;
  /// Interior value of the estimate while t < T (boundaries follow 0 and U).
  double warmup_value = 20.0;
  SolverOptions solver;
};

/// Explicit moving-horizon estimator for u_t = u_xx + lambda(x) u with
/// u(0) = 0, u(1) = U and measurement Y = u_x(1). After the first horizon the
/// estimate is assembled from the target-state snapshot w(., t - T), the
/// per-mode exponentially weighted window integrals of Y and U over [t-T, t],
/// and the transposed backstepping transform.
class ParabolicMhe {
 public:
  ParabolicMhe(const CoefficientSet& coeffs, const Grid& grid, double dt,
               ParabolicMheOptions options = {});

  /// Record Y(t), U(t). The first call fixes the time origin; later calls must
  /// advance by exactly dt.
  void update(double t, double y, double u);

  /// True once t - T is at or after the time origin.
  bool engaged() const noexcept { return steps_ >= window_ + 1; }

  /// Time of the most recent update. Throws WindowError before the first one.
  double time() const;

  /// Target-state estimate w(., t) at the current time.
  Profile estimate_target() const;

  /// Plant-state estimate u_hat(., t) at the current time.
  Profile estimate() const;

  /// Recursive window integrals, one entry per mode.
  const std::vector<double>& window_integral_y() const noexcept { return jy_; }
  const std::vector<double>& window_integral_u() const noexcept { return ju_; }

  /// The same integrals by direct trapezoid quadrature over the stored window
  /// [max(origin, t - T), t]; the oracle for the recursion.
  std::vector<double> direct_window_integral_y() const;
  std::vector<double> direct_window_integral_u() const;

  const KernelTable& k() const noexcept { return k_; }
  const KernelTable& l() const noexcept { return l_; }
  const ParabolicMheOptions& options() const noexcept { return options_; }
  double dt() const noexcept { return dt_; }
  std::size_t window_steps() const noexcept { return window_; }

  /// Eigen-cache entries, index n - 1 for mode n.
  const std::vector<double>& projection_y() const noexcept { return c_; }
  const std::vector<double>& projection_u() const noexcept { return d_; }
  const std::vector<double>& boundary_weights() const noexcept { return b_; }

  /// k(1,1) read from the kernel table and -1/2 int_0^1 lambda by quadrature.
  double corner_from_table() const noexcept { return k11_table_; }
  double corner_from_quadrature() const noexcept { return k11_quad_; }

  /// Text checkpoint of the online state (histories, integrals, snapshots),
  /// every float written with 17 significant digits. `restore` requires an
  /// estimator built with the same grid, dt and options.
  void save(std::ostream& out) const;
  void restore(std::istream& in);

 private:
  Profile warmup_profile(double u) const;
  std::vector<double> direct_window_integral(const SignalHistory& h) const;
  Profile assemble_target(const Profile& snapshot) const;

  Grid grid_;
  double dt_;
  ParabolicMheOptions options_;
  std::size_t window_;
  KernelTable k_;
  KernelTable l_;
  double k11_table_;
  double k11_quad_;

  std::vector<double> rates_;  // n^2 pi^2
  std::vector<double> decay_step_;
  std::vector<double> decay_horizon_;
  std::vector<double> decay_exit_;
  std::vector<double> phi_;  // modes x n_points, row-major
  std::vector<double> c_;
  std::vector<double> d_;
  std::vector<double> b_;
  std::vector<double> tail_;

  SignalHistory y_hist_;
  SignalHistory u_hist_;
  SnapshotQueue snapshots_;
  std::vector<double> jy_;
  std::vector<double> ju_;
  std::size_t steps_ = 0;
};

}  // namespace pdemhe
