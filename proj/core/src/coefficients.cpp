#include "pdemhe/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "pdemhe/errors.hpp"

namespace pdemhe {

namespace {

std::size_t dense_count(const Grid& grid) { return 10 * (grid.size() - 1) + 1; }

double ipow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

}  // namespace

ScalarFunction ScalarFunction::constant(double value) {
  return ScalarFunction(Kind::constant, {value}, 0.0, 0);
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("polynomial preset needs at least one coefficient");
  return ScalarFunction(Kind::polynomial, std::move(coeffs), 0.0, 0);
}

ScalarFunction ScalarFunction::chebyshev(double amplitude, int order) {
  if (order < 0) throw ConfigError("chebyshev order must be non-negative");
  return ScalarFunction(Kind::chebyshev, {}, amplitude, order);
}

double ScalarFunction::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::constant:
      return coeffs_[0];
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case Kind::chebyshev:
      return amplitude_ * std::cos(order_ * std::acos(std::clamp(x, -1.0, 1.0)));
  }
  return 0.0;
}

double ScalarFunction::sup_abs(const Grid& grid) const {
  const std::size_t m = dense_count(grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = i + 1 == m ? 1.0 : static_cast<double>(i) / static_cast<double>(m - 1);
    sup = std::max(sup, std::abs((*this)(x)));
  }
  return sup;
}

bool ScalarFunction::is_zero() const noexcept {
  switch (kind_) {
    case Kind::constant:
      return coeffs_[0] == 0.0;
    case Kind::polynomial:
      return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
    case Kind::chebyshev:
      return amplitude_ == 0.0;
  }
  return false;
}

BivariateFunction BivariateFunction::constant(double value) {
  return BivariateFunction(Kind::constant, {{value, 0, 0}});
}

BivariateFunction BivariateFunction::polynomial(std::vector<PolyTerm> terms) {
  if (terms.empty()) throw ConfigError("bivariate polynomial needs at least one term");
  for (const auto& t : terms) {
    if (t.px < 0 || t.py < 0) throw ConfigError("polynomial powers must be non-negative");
  }
  return BivariateFunction(Kind::polynomial, std::move(terms));
}

double BivariateFunction::operator()(double x, double y) const noexcept {
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.coeff * ipow(x, t.px) * ipow(y, t.py);
  return acc;
}

double BivariateFunction::sup_abs(const Grid& grid) const {
  if (kind_ == Kind::constant) return std::abs(terms_[0].coeff);
  const std::size_t m = dense_count(grid);
  const double h = 1.0 / static_cast<double>(m - 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = i + 1 == m ? 1.0 : static_cast<double>(i) * h;
    for (std::size_t j = 0; j <= i; ++j) {
      const double y = j + 1 == m ? 1.0 : static_cast<double>(j) * h;
      sup = std::max(sup, std::abs((*this)(x, y)));
    }
  }
  return sup;
}

bool BivariateFunction::is_zero() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const PolyTerm& t) { return t.coeff == 0.0; });
}

CoefficientSet CoefficientSet::make_hyperbolic(BivariateFunction f, ScalarFunction g) {
  CoefficientSet c;
  c.hyperbolic = HyperbolicCoefficients{std::move(f), std::move(g)};
  return c;
}

CoefficientSet CoefficientSet::make_parabolic(ScalarFunction lambda) {
  CoefficientSet c;
  c.parabolic = ParabolicCoefficients{std::move(lambda)};
  return c;
}

const HyperbolicCoefficients& CoefficientSet::require_hyperbolic() const {
  if (!hyperbolic) throw ConfigError("hyperbolic coefficients (f, g) are required");
  return *hyperbolic;
}

const ParabolicCoefficients& CoefficientSet::require_parabolic() const {
  if (!parabolic) throw ConfigError("parabolic coefficient lambda is required");
  return *parabolic;
}

}  // namespace pdemhe
