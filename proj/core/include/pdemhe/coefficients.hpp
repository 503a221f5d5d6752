#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdemhe/grid.hpp"

namespace pdemhe {

/// Univariate coefficient on [0, 1] (g or lambda) given by a preset.
class ScalarFunction {
 public:
  enum class Kind { constant, polynomial, chebyshev };

  static ScalarFunction constant(double value);
  /// sum_k coeffs[k] * x^k
  static ScalarFunction polynomial(std::vector<double> coeffs);
  /// amplitude * cos(order * acos(x)), the Chebyshev polynomial T_order scaled.
  static ScalarFunction chebyshev(double amplitude, int order);

  double operator()(double x) const noexcept;

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double amplitude() const noexcept { return amplitude_; }
  int order() const noexcept { return order_; }

  /// sup |fn| over [0, 1], sampled at 10x the density of `grid`.
  double sup_abs(const Grid& grid) const;
  bool is_zero() const noexcept;

  friend bool operator==(const ScalarFunction&, const ScalarFunction&) = default;

 private:
  ScalarFunction(Kind kind, std::vector<double> coeffs, double amplitude, int order)
      : kind_(kind), coeffs_(std::move(coeffs)), amplitude_(amplitude), order_(order) {}

  Kind kind_;
  std::vector<double> coeffs_;
  double amplitude_;
  int order_;
};

/// One monomial coeff * x^px * y^py.
struct PolyTerm {
  double coeff = 0.0;
  int px = 0;
  int py = 0;
  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// Bivariate coefficient f(x, y) on the triangle 0 <= y <= x <= 1.
class BivariateFunction {
 public:
  enum class Kind { constant, polynomial };

  static BivariateFunction constant(double value);
  static BivariateFunction polynomial(std::vector<PolyTerm> terms);

  double operator()(double x, double y) const noexcept;

  Kind kind() const noexcept { return kind_; }
  const std::vector<PolyTerm>& terms() const noexcept { return terms_; }

  /// sup |f| over the triangle, sampled at 10x the density of `grid`.
  double sup_abs(const Grid& grid) const;
  bool is_zero() const noexcept;

  friend bool operator==(const BivariateFunction&, const BivariateFunction&) = default;

 private:
  BivariateFunction(Kind kind, std::vector<PolyTerm> terms)
      : kind_(kind), terms_(std::move(terms)) {}

  Kind kind_;
  std::vector<PolyTerm> terms_;
};

struct HyperbolicCoefficients {
  BivariateFunction f = BivariateFunction::constant(0.0);
  ScalarFunction g = ScalarFunction::constant(0.0);
  friend bool operator==(const HyperbolicCoefficients&, const HyperbolicCoefficients&) = default;
};

struct ParabolicCoefficients {
  ScalarFunction lambda = ScalarFunction::constant(0.0);
  friend bool operator==(const ParabolicCoefficients&, const ParabolicCoefficients&) = default;
};

/// Coefficients of one plant class together with their sup-bounds.
struct CoefficientSet {
  std::optional<HyperbolicCoefficients> hyperbolic;
  std::optional<ParabolicCoefficients> parabolic;

  static CoefficientSet make_hyperbolic(BivariateFunction f, ScalarFunction g);
  static CoefficientSet make_parabolic(ScalarFunction lambda);

  /// Throw ConfigError when the requested class is absent.
  const HyperbolicCoefficients& require_hyperbolic() const;
  const ParabolicCoefficients& require_parabolic() const;

  double sup_f(const Grid& grid) const { return require_hyperbolic().f.sup_abs(grid); }
  double sup_g(const Grid& grid) const { return require_hyperbolic().g.sup_abs(grid); }
  double sup_lambda(const Grid& grid) const { return require_parabolic().lambda.sup_abs(grid); }

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

}  // namespace pdemhe
