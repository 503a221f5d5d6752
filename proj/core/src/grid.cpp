#include "pdemhe/grid.hpp"

#include <cmath>
#include <string>

#include "pdemhe/errors.hpp"

namespace pdemhe {

Grid::Grid(std::size_t n_points) : n_points_(n_points), dx_(0.0) {
  if (n_points < 3) {
    throw ConfigError("grid needs at least 3 points, got " + std::to_string(n_points));
  }
  dx_ = 1.0 / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = x(i);
  return xs;
}

Profile::Profile(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatchError("profile has " + std::to_string(values_.size()) +
                            " values for a grid of " + std::to_string(grid_.size()));
  }
  check_finite();
}

Profile Profile::zeros(const Grid& grid) { return constant(grid, 0.0); }

Profile Profile::constant(const Grid& grid, double value) {
  return Profile(grid, std::vector<double>(grid.size(), value));
}

Profile Profile::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid.x(i));
  return Profile(grid, std::move(v));
}

void Profile::check_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFiniteError("non-finite profile value at node " + std::to_string(i));
    }
  }
}

double trapezoid_integral(std::span<const double> values, double dx) {
  if (values.size() < 2) throw ConfigError("trapezoid rule needs at least two samples");
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  const double sum = interior + 0.5 * (values.front() + values.back());
  if (!std::isfinite(sum)) throw NonFiniteError("non-finite integrand in trapezoid rule");
  return dx * sum;
}

double l2_norm(const Profile& p) {
  std::vector<double> sq(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) sq[i] = p[i] * p[i];
  return std::sqrt(trapezoid_integral(sq, p.grid().dx()));
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) {
    throw GridMismatchError(std::string(context) + ": grids differ (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                            " points)");
  }
}

}  // namespace pdemhe
