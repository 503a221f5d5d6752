#include "pdemhe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pdemhe/csv.hpp"
#include "pdemhe/errors.hpp"

namespace pdemhe {

KernelTable::KernelTable(Grid grid) : grid_(grid), data_(grid.size() * (grid.size() + 1) / 2, 0.0) {}

double KernelTable::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double KernelTable::max_abs_difference(const KernelTable& other) const {
  require_same_grid(grid_, other.grid_, "kernel difference");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

void KernelTable::write_csv(std::ostream& out, std::string_view value_name) const {
  CsvWriter csv(out, {"x", "y", value_name});
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) csv.row({grid_.x(i), grid_.x(j), (*this)(i, j)});
  }
}

namespace {

void check_options(const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  if (opts.max_iter < 1) throw ConfigError("solver max_iter must be at least 1");
}

void check_finite(const KernelTable& k, const char* what) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (double v : k.row(i)) {
      if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + " produced a non-finite value");
    }
  }
}

/// Trapezoid over s = j..i of a(i, s) * b(s, j); zero when i == j.
double volterra_term(const KernelTable& a, const KernelTable& b, std::size_t i, std::size_t j,
                     double h) {
  if (i == j) return 0.0;
  double acc = 0.5 * (a(i, j) * b(j, j) + a(i, i) * b(i, j));
  for (std::size_t s = j + 1; s < i; ++s) acc += a(i, s) * b(s, j);
  return h * acc;
}

// Second-order first derivative along x (first index) at (i, j), restricted
// to nodes inside the triangle. Returns nullopt when no stencil fits.
std::optional<double> d_dx(const KernelTable& k, std::size_t i, std::size_t j) {
  const std::size_t n = k.size();
  const double h = k.grid().dx();
  if (i >= j + 1 && i + 1 < n) return (k(i + 1, j) - k(i - 1, j)) / (2 * h);
  if (i + 2 < n) return (-3 * k(i, j) + 4 * k(i + 1, j) - k(i + 2, j)) / (2 * h);
  if (i >= j + 2) return (3 * k(i, j) - 4 * k(i - 1, j) + k(i - 2, j)) / (2 * h);
  return std::nullopt;
}

std::optional<double> d_dy(const KernelTable& k, std::size_t i, std::size_t j) {
  const double h = k.grid().dx();
  if (j >= 1 && j + 1 <= i) return (k(i, j + 1) - k(i, j - 1)) / (2 * h);
  if (j + 2 <= i) return (-3 * k(i, j) + 4 * k(i, j + 1) - k(i, j + 2)) / (2 * h);
  if (j >= 2) return (3 * k(i, j) - 4 * k(i, j - 1) + k(i, j - 2)) / (2 * h);
  return std::nullopt;
}

std::optional<double> d2_dx2(const KernelTable& k, std::size_t i, std::size_t j) {
  const std::size_t n = k.size();
  const double h2 = k.grid().dx() * k.grid().dx();
  if (i >= j + 1 && i + 1 < n) return (k(i + 1, j) - 2 * k(i, j) + k(i - 1, j)) / h2;
  if (i + 3 < n)
    return (2 * k(i, j) - 5 * k(i + 1, j) + 4 * k(i + 2, j) - k(i + 3, j)) / h2;
  if (i >= j + 3)
    return (2 * k(i, j) - 5 * k(i - 1, j) + 4 * k(i - 2, j) - k(i - 3, j)) / h2;
  return std::nullopt;
}

std::optional<double> d2_dy2(const KernelTable& k, std::size_t i, std::size_t j) {
  const double h2 = k.grid().dx() * k.grid().dx();
  if (j >= 1 && j + 1 <= i) return (k(i, j + 1) - 2 * k(i, j) + k(i, j - 1)) / h2;
  if (j + 3 <= i)
    return (2 * k(i, j) - 5 * k(i, j + 1) + 4 * k(i, j + 2) - k(i, j + 3)) / h2;
  if (j >= 3)
    return (2 * k(i, j) - 5 * k(i, j - 1) + 4 * k(i, j - 2) - k(i, j - 3)) / h2;
  return std::nullopt;
}

KernelTable sample_bivariate(const BivariateFunction& f, const Grid& grid) {
  KernelTable table(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) table(i, j) = f(grid.x(i), grid.x(j));
  }
  return table;
}

// Right-hand side S = f - int_y^x f(x,s) k(s,y) ds of the hyperbolic kernel PDE.
KernelTable hyperbolic_rhs(const KernelTable& f, const KernelTable& k) {
  const double h = k.grid().dx();
  KernelTable s(k.grid());
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) s(i, j) = f(i, j) - volterra_term(f, k, i, j, h);
  }
  return s;
}

}  // namespace

KernelTable solve_hyperbolic_kernel(const CoefficientSet& coeffs, const Grid& grid,
                                    const SolverOptions& opts, SolveReport* report) {
  check_options(opts);
  const auto& hyp = coeffs.require_hyperbolic();
  const std::size_t n = grid.size();
  const double h = grid.dx();
  const KernelTable f = sample_bivariate(hyp.f, grid);

  KernelTable k(grid);
  double diff = 0.0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const KernelTable s = hyperbolic_rhs(f, k);
    KernelTable next(grid);
    // Along x - y = const, dk/dtau = S with k = 0 on x = 1; march inward.
    for (std::size_t i = n - 1; i-- > 0;) {
      for (std::size_t j = 0; j <= i; ++j) {
        next(i, j) = next(i + 1, j + 1) - 0.5 * h * (s(i + 1, j + 1) + s(i, j));
      }
    }
    diff = next.max_abs_difference(k);
    k = std::move(next);
    if (!std::isfinite(diff)) break;
    if (diff < opts.tol) {
      if (report) *report = {iter, diff};
      check_finite(k, "hyperbolic kernel solver");
      return k;
    }
  }
  throw ConvergenceError("hyperbolic kernel successive approximation did not converge", diff,
                         opts.max_iter);
}

std::vector<double> parabolic_diagonal_values(const CoefficientSet& coeffs, const Grid& grid) {
  const auto& lambda = coeffs.require_parabolic().lambda;
  const std::size_t n = grid.size();
  const std::size_t m = 2 * (n - 1);
  const double half = 0.5 * grid.dx();
  std::vector<double> out(n, 0.0);
  double cum = 0.0;
  double prev = lambda(0.0);
  for (std::size_t p = 1; p <= m; ++p) {
    const double x = p == m ? 1.0 : static_cast<double>(p) / static_cast<double>(m);
    const double cur = lambda(x);
    cum += 0.5 * half * (prev + cur);
    prev = cur;
    if (p % 2 == 0) out[p / 2] = -0.5 * cum;
  }
  return out;
}

namespace {

// Values G(p, q) on the (xi, eta) lattice, 0 <= q <= min(p, P - p).
class DiamondLattice {
 public:
  explicit DiamondLattice(std::size_t last) : last_(last), rows_(last + 1) {
    for (std::size_t p = 0; p <= last; ++p) rows_[p].assign(qmax(p) + 1, 0.0);
  }

  std::size_t last() const noexcept { return last_; }
  std::size_t qmax(std::size_t p) const noexcept { return std::min(p, last_ - p); }
  double operator()(std::size_t p, std::size_t q) const noexcept { return rows_[p][q]; }
  double& operator()(std::size_t p, std::size_t q) noexcept { return rows_[p][q]; }

  double max_abs_difference(const DiamondLattice& o) const noexcept {
    double m = 0.0;
    for (std::size_t p = 0; p <= last_; ++p) {
      for (std::size_t q = 0; q < rows_[p].size(); ++q) {
        m = std::max(m, std::abs(rows_[p][q] - o.rows_[p][q]));
      }
    }
    return m;
  }

 private:
  std::size_t last_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace

KernelTable solve_parabolic_kernel(const CoefficientSet& coeffs, const Grid& grid,
                                   const SolverOptions& opts, SolveReport* report) {
  check_options(opts);
  const auto& lambda = coeffs.require_parabolic().lambda;
  const std::size_t n = grid.size();
  const std::size_t last = 2 * (n - 1);
  const double h = grid.dx();

  // lambda at x = m dx / 2, i.e. at (xi - eta) / 2 for lattice points.
  std::vector<double> lam(last + 1);
  for (std::size_t m = 0; m <= last; ++m) {
    lam[m] = lambda(m == last ? 1.0 : static_cast<double>(m) / static_cast<double>(last));
  }
  // cum[p] = int_0^{xi_p} lambda(tau / 2) dtau.
  std::vector<double> cum(last + 1, 0.0);
  for (std::size_t p = 1; p <= last; ++p) cum[p] = cum[p - 1] + 0.5 * h * (lam[p - 1] + lam[p]);

  // G = A + 1/4 int_eta^xi int_0^eta lambda((tau - s)/2) G(tau, s) ds dtau,
  // A(xi, eta) = -1/4 int_eta^xi lambda(tau / 2) dtau.
  DiamondLattice base(last);
  for (std::size_t p = 0; p <= last; ++p) {
    for (std::size_t q = 0; q <= base.qmax(p); ++q) base(p, q) = -0.25 * (cum[p] - cum[q]);
  }

  DiamondLattice g = base;
  DiamondLattice inner(last);
  double diff = 0.0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    for (std::size_t p = 0; p <= last; ++p) {
      inner(p, 0) = 0.0;
      for (std::size_t q = 1; q <= inner.qmax(p); ++q) {
        inner(p, q) = inner(p, q - 1) +
                      0.5 * h * (lam[p - q + 1] * g(p, q - 1) + lam[p - q] * g(p, q));
      }
    }
    DiamondLattice next = base;
    for (std::size_t q = 0; 2 * q <= last; ++q) {
      double acc = 0.0;
      for (std::size_t p = q + 1; p <= last - q; ++p) {
        acc += 0.5 * h * (inner(p - 1, q) + inner(p, q));
        next(p, q) += 0.25 * acc;
      }
    }
    diff = next.max_abs_difference(g);
    g = std::move(next);
    if (!std::isfinite(diff)) break;
    if (diff < opts.tol) {
      KernelTable k(grid);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) k(i, j) = g(i + j, i - j);
      }
      if (report) *report = {iter, diff};
      check_finite(k, "parabolic kernel solver");
      return k;
    }
  }
  throw ConvergenceError("parabolic kernel successive approximation did not converge", diff,
                         opts.max_iter);
}

KernelTable invert_kernel(const KernelTable& k, const SolverOptions& opts, SolveReport* report) {
  check_options(opts);
  const std::size_t n = k.size();
  const double h = k.grid().dx();
  KernelTable l(k.grid());
  double diff = 0.0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    KernelTable next(k.grid());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) next(i, j) = k(i, j) + volterra_term(k, l, i, j, h);
    }
    diff = next.max_abs_difference(l);
    l = std::move(next);
    if (!std::isfinite(diff)) break;
    if (diff < opts.tol) {
      if (report) *report = {iter, diff};
      check_finite(l, "inverse kernel iteration");
      return l;
    }
  }
  throw ConvergenceError("inverse kernel fixed-point iteration did not converge", diff,
                         opts.max_iter);
}

GainVector observer_gain_hyperbolic(const CoefficientSet& coeffs, const KernelTable& k) {
  const auto& hyp = coeffs.require_hyperbolic();
  const Grid& grid = k.grid();
  GainVector p1{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) p1.values[i] = hyp.g(grid.x(i)) - k(i, 0);
  return p1;
}

GainVector observer_gain_parabolic(const KernelTable& k) {
  const std::size_t last = k.size() - 1;
  const auto row = k.row(last);
  return GainVector{k.grid(), std::vector<double>(row.begin(), row.end())};
}

GainVector theta_kernel(const GainVector& p1, const KernelTable& l) {
  require_same_grid(p1.grid, l.grid(), "theta kernel");
  const double h = l.grid().dx();
  GainVector theta{p1.grid, std::vector<double>(p1.size())};
  std::vector<double> integrand;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    double acc = p1[i];
    if (i > 0) {
      integrand.resize(i + 1);
      for (std::size_t j = 0; j <= i; ++j) integrand[j] = l(i, j) * p1[j];
      acc += trapezoid_integral(integrand, h);
    }
    theta.values[i] = acc;
  }
  return theta;
}

double hyperbolic_kernel_residual(const CoefficientSet& coeffs, const KernelTable& k) {
  const KernelTable f = sample_bivariate(coeffs.require_hyperbolic().f, k.grid());
  const KernelTable s = hyperbolic_rhs(f, k);
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto kx = d_dx(k, i, j);
      const auto ky = d_dy(k, i, j);
      if (!kx || !ky) continue;
      worst = std::max(worst, std::abs(*kx + *ky - s(i, j)));
    }
  }
  return worst;
}

double parabolic_kernel_residual(const CoefficientSet& coeffs, const KernelTable& k) {
  const auto& lambda = coeffs.require_parabolic().lambda;
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto kxx = d2_dx2(k, i, j);
      const auto kyy = d2_dy2(k, i, j);
      if (!kxx || !kyy) continue;
      worst = std::max(worst, std::abs(*kxx - *kyy - lambda(k.grid().x(j)) * k(i, j)));
    }
  }
  return worst;
}

double volterra_residual(const KernelTable& k, const KernelTable& l) {
  require_same_grid(k.grid(), l.grid(), "volterra residual");
  const double h = k.grid().dx();
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      worst = std::max(worst, std::abs(l(i, j) - k(i, j) - volterra_term(k, l, i, j, h)));
    }
  }
  return worst;
}

}  // namespace pdemhe
