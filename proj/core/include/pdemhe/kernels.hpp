#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "pdemhe/coefficients.hpp"
#include "pdemhe/grid.hpp"

namespace pdemhe {

/// Bivariate kernel sampled on the triangle 0 <= y_j <= x_i <= 1, stored as a
/// packed lower-triangular matrix (row i holds j = 0..i).
class KernelTable {
 public:
  explicit KernelTable(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[offset(i) + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[offset(i) + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + offset(i), i + 1};
  }

  double max_abs() const noexcept;
  double max_abs_difference(const KernelTable& other) const;

  /// Columns x, y, k; one row per stored entry, row-major over the triangle.
  void write_csv(std::ostream& out, std::string_view value_name = "k") const;

 private:
  static std::size_t offset(std::size_t i) noexcept { return i * (i + 1) / 2; }

  Grid grid_;
  std::vector<double> data_;
};

/// Observer gain p1 (or the derived theta) sampled on the grid.
struct GainVector {
  Grid grid;
  std::vector<double> values;

  double operator[](std::size_t i) const noexcept { return values[i]; }
  std::size_t size() const noexcept { return values.size(); }
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct SolveReport {
  int iterations = 0;
  double last_update = 0.0;
};

/// Goursat problem k_x + k_y = f(x,y) - int_y^x f(x,s) k(s,y) ds, k(1,y) = 0.
/// Each sweep integrates along the characteristics x - y = const from the
/// data line x = 1 with the nonlocal term frozen at the previous iterate.
KernelTable solve_hyperbolic_kernel(const CoefficientSet& coeffs, const Grid& grid,
                                    const SolverOptions& opts = {},
                                    SolveReport* report = nullptr);

/// Goursat problem k_xx - k_yy = lambda(y) k, k(x,0) = 0,
/// k(x,x) = -1/2 int_0^x lambda. Solved by successive approximation of the
/// equivalent integral equation in xi = x + y, eta = x - y on a lattice of
/// spacing dx; grid nodes are the lattice points with even xi/dx + eta/dx.
KernelTable solve_parabolic_kernel(const CoefficientSet& coeffs, const Grid& grid,
                                   const SolverOptions& opts = {},
                                   SolveReport* report = nullptr);

/// Inverse kernel l of l(x,y) = k(x,y) + int_y^x k(x,s) l(s,y) ds by fixed-point
/// (Neumann series) iteration.
KernelTable invert_kernel(const KernelTable& k, const SolverOptions& opts = {},
                          SolveReport* report = nullptr);

/// p1(x) = g(x) - k(x, 0).
GainVector observer_gain_hyperbolic(const CoefficientSet& coeffs, const KernelTable& k);

/// p1(x) = k(1, x).
GainVector observer_gain_parabolic(const KernelTable& k);

/// theta(x) = p1(x) + int_0^x l(x,y) p1(y) dy.
GainVector theta_kernel(const GainVector& p1, const KernelTable& l);

/// Max discrete residual of the hyperbolic kernel PDE using second-order
/// finite differences (centered inside, one-sided at the edges).
double hyperbolic_kernel_residual(const CoefficientSet& coeffs, const KernelTable& k);

/// Max discrete residual of k_xx - k_yy - lambda(y) k over nodes where a
/// second-order stencil fits (centered inside, one-sided near the edges).
double parabolic_kernel_residual(const CoefficientSet& coeffs, const KernelTable& k);

/// Max residual of the discrete (trapezoid) Volterra relation between k and l.
double volterra_residual(const KernelTable& k, const KernelTable& l);

/// -1/2 int_0^x_i lambda for every node, by the trapezoid rule at spacing
/// dx/2 (the rule the parabolic solver uses on its diagonal).
std::vector<double> parabolic_diagonal_values(const CoefficientSet& coeffs, const Grid& grid);

}  // namespace pdemhe
