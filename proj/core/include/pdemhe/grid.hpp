#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pdemhe {

/// Uniform discretization of [0, 1] with n_points nodes, x_i = i * dx.
class Grid {
 public:
  /// Throws ConfigError when n_points < 3.
  explicit Grid(std::size_t n_points);

  std::size_t size() const noexcept { return n_points_; }
  double dx() const noexcept { return dx_; }

  /// Node coordinate; the last node is exactly 1.
  double x(std::size_t i) const noexcept {
    return i + 1 == n_points_ ? 1.0 : static_cast<double>(i) * dx_;
  }

  std::vector<double> nodes() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_points_ == b.n_points_;
  }

 private:
  std::size_t n_points_;
  double dx_;
};

/// A sampled spatial function u(., t) at one time instant.
class Profile {
 public:
  /// Throws GridMismatchError on a length mismatch and NonFiniteError on
  /// non-finite samples.
  Profile(Grid grid, std::vector<double> values);

  static Profile zeros(const Grid& grid);
  static Profile constant(const Grid& grid, double value);
  static Profile sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Throws NonFiniteError if any sample is NaN or infinite.
  void check_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Composite trapezoid rule on uniformly spaced samples. Exact for affine
/// integrands. Requires at least two samples.
double trapezoid_integral(std::span<const double> values, double dx);

/// L2(0,1) norm by the trapezoid rule.
double l2_norm(const Profile& p);

/// Throws GridMismatchError unless both profiles live on the same grid.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace pdemhe
