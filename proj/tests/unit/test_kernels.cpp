#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pdemhe/errors.hpp"
#include "pdemhe/kernels.hpp"
#include "pdemhe/transforms.hpp"

using namespace pdemhe;

namespace {

CoefficientSet hyperbolic(double f, double g) {
  return CoefficientSet::make_hyperbolic(BivariateFunction::constant(f), ScalarFunction::constant(g));
}

CoefficientSet parabolic(double lambda) {
  return CoefficientSet::make_parabolic(ScalarFunction::constant(lambda));
}

CoefficientSet chebyshev_lambda() {
  return CoefficientSet::make_parabolic(ScalarFunction::chebyshev(21.0, 5));
}

Profile random_profile(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& e : v) e = ud(rng);
  return Profile(g, std::move(v));
}

}  // namespace

TEST(OracleSelfCheck, BesselKernelSatisfiesGoursatProblem) {
  // Finite-difference substitution into k_xx - k_yy = lambda k and the
  // boundary data, before the closed form is trusted as an oracle.
  const double lam = 5.0, h = 1e-3;
  auto k = [&](double x, double y) { return oracle::parabolic_constant_kernel(lam, x, y); };
  for (double x : {0.3, 0.6, 0.9}) {
    for (double y : {0.1, 0.2}) {
      const double kxx = (k(x + h, y) - 2 * k(x, y) + k(x - h, y)) / (h * h);
      const double kyy = (k(x, y + h) - 2 * k(x, y) + k(x, y - h)) / (h * h);
      EXPECT_NEAR(kxx - kyy, lam * k(x, y), 1e-4);
    }
    EXPECT_EQ(k(x, 0.0), 0.0);
    EXPECT_NEAR(k(x, x), -0.5 * lam * x, 1e-15);
  }
}

TEST(OracleSelfCheck, SimpsonIsExactForCubics) {
  for (std::size_t n : {3u, 4u, 5u, 8u}) {
    std::vector<double> v(n);
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) * h;
      v[i] = x * x * x;
    }
    EXPECT_NEAR(oracle::simpson(v, h), 0.25, 1e-14) << n;
  }
}

TEST(HyperbolicKernel, ZeroCoefficientGivesZeroKernel) {
  Grid g(41);
  const auto k = solve_hyperbolic_kernel(hyperbolic(0.0, 3.0), g);
  EXPECT_EQ(k.max_abs(), 0.0);
}

TEST(HyperbolicKernel, VanishesOnTheDataLine) {
  Grid g(101);
  const auto k = solve_hyperbolic_kernel(hyperbolic(1.0, 0.0), g);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(k(g.size() - 1, j), 0.0);
}

TEST(HyperbolicKernel, MatchesCharacteristicsOracle) {
  Grid g(201);
  const auto k = solve_hyperbolic_kernel(hyperbolic(1.0, 0.0), g);
  const auto ref = oracle::hyperbolic_kernel_characteristics([](double, double) { return 1.0; }, 201, 4);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) err = std::max(err, std::abs(k(i, j) - ref[i * 201 + j]));
  EXPECT_LT(err, 1e-4);
}

TEST(HyperbolicKernel, NonConstantCoefficientMatchesOracle) {
  Grid g(101);
  const auto coeffs = CoefficientSet::make_hyperbolic(
      BivariateFunction::polynomial({{2.0, 1, 0}, {-1.0, 0, 1}}), ScalarFunction::constant(0.0));
  const auto k = solve_hyperbolic_kernel(coeffs, g);
  const auto ref = oracle::hyperbolic_kernel_characteristics(
      [](double x, double y) { return 2.0 * x - y; }, 101, 4);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) err = std::max(err, std::abs(k(i, j) - ref[i * 101 + j]));
  EXPECT_LT(err, 4e-4);
}

TEST(HyperbolicKernel, ResidualShrinksWithGrid) {
  const auto coeffs = hyperbolic(1.0, 0.0);
  const double r1 = hyperbolic_kernel_residual(coeffs, solve_hyperbolic_kernel(coeffs, Grid(51)));
  const double r2 = hyperbolic_kernel_residual(coeffs, solve_hyperbolic_kernel(coeffs, Grid(101)));
  EXPECT_LT(r1, 0.05);
  EXPECT_LT(r2, r1);
}

TEST(HyperbolicKernel, GridConvergence) {
  const auto coeffs = hyperbolic(1.0, 0.0);
  const auto k1 = solve_hyperbolic_kernel(coeffs, Grid(26));
  const auto k2 = solve_hyperbolic_kernel(coeffs, Grid(51));
  const auto k3 = solve_hyperbolic_kernel(coeffs, Grid(101));
  auto dist = [](const KernelTable& a, const KernelTable& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) d = std::max(d, std::abs(a(i, j) - b(2 * i, 2 * j)));
    return d;
  };
  EXPECT_GE(dist(k1, k2) / dist(k2, k3), 1.5);
}

TEST(HyperbolicKernel, ReportsNonConvergence) {
  SolverOptions opts;
  opts.max_iter = 1;
  EXPECT_THROW(solve_hyperbolic_kernel(hyperbolic(1.0, 0.0), Grid(51), opts), ConvergenceError);
}

TEST(HyperbolicKernel, RequiresHyperbolicCoefficients) {
  EXPECT_THROW(solve_hyperbolic_kernel(parabolic(1.0), Grid(11)), ConfigError);
}

TEST(ParabolicKernel, ZeroReactionGivesZeroKernel) {
  const auto k = solve_parabolic_kernel(parabolic(0.0), Grid(41));
  EXPECT_EQ(k.max_abs(), 0.0);
}

TEST(ParabolicKernel, MatchesBesselClosedForm) {
  Grid g(201);
  const auto k = solve_parabolic_kernel(parabolic(5.0), g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      err = std::max(err, std::abs(k(i, j) - oracle::parabolic_constant_kernel(5.0, g.x(i), g.x(j))));
  EXPECT_LT(err, 1e-4);
}

TEST(ParabolicKernel, BoundaryDataAreExact) {
  Grid g(101);
  const auto coeffs = chebyshev_lambda();
  const auto k = solve_parabolic_kernel(coeffs, g);
  const auto diag = parabolic_diagonal_values(coeffs, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(k(i, 0), 0.0);
    EXPECT_EQ(k(i, i), diag[i]);
  }
}

TEST(ParabolicKernel, CornerMatchesHalfIntegralOfLambda) {
  // -1/2 int_0^1 (3 + 4x^2) = -13/6
  Grid g(101);
  const auto coeffs = CoefficientSet::make_parabolic(ScalarFunction::polynomial({3.0, 0.0, 4.0}));
  const auto k = solve_parabolic_kernel(coeffs, g);
  EXPECT_NEAR(k(g.size() - 1, g.size() - 1), -13.0 / 6.0, 1e-4);
}

TEST(ParabolicKernel, ResidualIsSmall) {
  const auto coeffs = CoefficientSet::make_parabolic(ScalarFunction::polynomial({3.0, 0.0, 4.0}));
  const double r1 = parabolic_kernel_residual(coeffs, solve_parabolic_kernel(coeffs, Grid(51)));
  const double r2 = parabolic_kernel_residual(coeffs, solve_parabolic_kernel(coeffs, Grid(101)));
  EXPECT_LT(r1, 0.1);
  EXPECT_LT(r2, r1);
}

TEST(ParabolicKernel, ChebyshevPresetConverges) {
  SolveReport report;
  const auto k = solve_parabolic_kernel(chebyshev_lambda(), Grid(101), {}, &report);
  EXPECT_GT(report.iterations, 1);
  EXPECT_LE(report.last_update, 1e-10);
  EXPECT_TRUE(std::isfinite(k.max_abs()));
}

TEST(InverseKernel, ZeroKernelGivesZero) {
  const auto k = solve_hyperbolic_kernel(hyperbolic(0.0, 0.0), Grid(21));
  EXPECT_EQ(invert_kernel(k).max_abs(), 0.0);
}

TEST(InverseKernel, SatisfiesVolterraRelation) {
  for (const auto& coeffs : {hyperbolic(1.0, 0.0), chebyshev_lambda()}) {
    Grid g(101);
    const auto k = coeffs.hyperbolic ? solve_hyperbolic_kernel(coeffs, g) : solve_parabolic_kernel(coeffs, g);
    const auto l = invert_kernel(k);
    EXPECT_LT(volterra_residual(k, l), 1e-9);
  }
}

TEST(InverseKernel, ConstantParabolicInverseIsBessel) {
  // The inverse of the lambda kernel is the J1 kernel: l = -lambda y J1(z)/z.
  // Its series alternates, so use the same power series with a sign flip.
  Grid g(201);
  const double lam = 5.0;
  const auto l = invert_kernel(solve_parabolic_kernel(parabolic(lam), g));
  auto j1_over_z = [](double z) {
    const double q = 0.25 * z * z;
    double term = 0.5, sum = 0.5;
    for (int m = 1; m < 60; ++m) {
      term *= -q / (static_cast<double>(m) * (m + 1));
      sum += term;
    }
    return sum;
  };
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = g.x(i), y = g.x(j);
      const double ref = -lam * y * j1_over_z(std::sqrt(lam * (x * x - y * y)));
      err = std::max(err, std::abs(l(i, j) - ref));
    }
  EXPECT_LT(err, 1e-3);
}

TEST(Gains, HyperbolicGainExamples) {
  Grid g(51);
  {
    const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(0.0),
                                                        ScalarFunction::polynomial({1.0, 2.0}));
    const auto p1 = observer_gain_hyperbolic(coeffs, solve_hyperbolic_kernel(coeffs, g));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(p1[i], 1.0 + 2.0 * g.x(i));
  }
  {
    const auto coeffs = hyperbolic(0.0, 0.0);
    const auto p1 = observer_gain_hyperbolic(coeffs, solve_hyperbolic_kernel(coeffs, g));
    for (double v : p1.values) EXPECT_EQ(v, 0.0);
  }
  {
    const auto coeffs = hyperbolic(1.0, 0.0);
    const auto k = solve_hyperbolic_kernel(coeffs, g);
    const auto p1 = observer_gain_hyperbolic(coeffs, k);
    EXPECT_EQ(p1[g.size() - 1], 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(p1[i], -k(i, 0));
  }
}

TEST(Gains, ParabolicGainIsLastKernelRow) {
  Grid g(201);
  const auto k = solve_parabolic_kernel(parabolic(5.0), g);
  const auto p1 = observer_gain_parabolic(k);
  EXPECT_EQ(p1[0], 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_EQ(p1[j], k(g.size() - 1, j));
    EXPECT_NEAR(p1[j], oracle::parabolic_constant_kernel(5.0, 1.0, g.x(j)), 1e-4);
  }
  const auto zero = observer_gain_parabolic(solve_parabolic_kernel(parabolic(0.0), g));
  for (double v : zero.values) EXPECT_EQ(v, 0.0);
}

TEST(Gains, ThetaExamples) {
  Grid g(51);
  const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(0.0),
                                                      ScalarFunction::polynomial({0.0, 1.0}));
  const auto k = solve_hyperbolic_kernel(coeffs, g);
  const auto l = invert_kernel(k);
  const auto p1 = observer_gain_hyperbolic(coeffs, k);
  const auto th = theta_kernel(p1, l);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(th[i], g.x(i));

  GainVector zero{g, std::vector<double>(g.size(), 0.0)};
  const auto l1 = invert_kernel(solve_hyperbolic_kernel(hyperbolic(1.0, 1.0), g));
  for (double v : theta_kernel(zero, l1).values) EXPECT_EQ(v, 0.0);
}

TEST(Gains, ThetaIsTheInverseTransformOfTheGain) {
  Grid g(101);
  const auto coeffs = hyperbolic(1.0, 1.0);
  const auto k = solve_hyperbolic_kernel(coeffs, g);
  const auto l = invert_kernel(k);
  const auto p1 = observer_gain_hyperbolic(coeffs, k);
  const auto th = theta_kernel(p1, l);
  const auto w = inverse_transform_hyperbolic(Profile(g, p1.values), l);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(th[i], w[i], 1e-12);
}

TEST(Transforms, IdentityForZeroKernel) {
  Grid g(31);
  KernelTable zero(g);
  const auto p = random_profile(g, 3);
  for (const auto& q : {forward_transform_hyperbolic(p, zero), inverse_transform_hyperbolic(p, zero),
                        forward_transform_parabolic(p, zero), inverse_transform_parabolic(p, zero)}) {
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(q[i], p[i]);
  }
  const auto z = forward_transform_hyperbolic(Profile::zeros(g), solve_hyperbolic_kernel(hyperbolic(1.0, 0.0), g));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(z[i], 0.0);
}

namespace {

// Max pointwise round-trip defect over both composition orders.
double round_trip_defect(const KernelTable& k, const KernelTable& l, bool lower, const Profile& p) {
  const auto fwd = lower ? forward_transform_hyperbolic : forward_transform_parabolic;
  const auto inv = lower ? inverse_transform_hyperbolic : inverse_transform_parabolic;
  const auto a = inv(fwd(p, k), l);
  const auto b = fwd(inv(p, l), k);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d = std::max({d, std::abs(a[i] - p[i]), std::abs(b[i] - p[i])});
  return d;
}

}  // namespace

TEST(Transforms, RoundTripWithinTenDxSquared) {
  Grid g(201);
  const double dx = g.dx();
  const auto kh = solve_hyperbolic_kernel(hyperbolic(1.0, 0.0), g);
  const auto lh = invert_kernel(kh);
  const auto kp = solve_parabolic_kernel(parabolic(5.0), g);
  const auto lp = invert_kernel(kp);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto p = random_profile(g, seed);
    const double tol = 10.0 * dx * dx * l2_norm(p);
    EXPECT_LT(round_trip_defect(kh, lh, true, p), tol);
    EXPECT_LT(round_trip_defect(kp, lp, false, p), tol);
  }
}

TEST(Transforms, RoundTripDefectIsSecondOrder) {
  // The defect is dominated by the diagonal quadrature weights, about
  // dx^2/4 k(x,x)^2 |p(x)|, so large kernels need a finer grid.
  auto defect = [](std::size_t n) {
    Grid g(n);
    const auto k = solve_parabolic_kernel(chebyshev_lambda(), g);
    const auto l = invert_kernel(k);
    return round_trip_defect(k, l, false, Profile::sample(g, [](double x) { return std::cos(3.0 * x); }));
  };
  const double d1 = defect(101), d2 = defect(201);
  EXPECT_NEAR(d1 / d2, 4.0, 0.5);
}

TEST(Transforms, RejectGridMismatch) {
  Grid a(11), b(21);
  KernelTable k(a);
  EXPECT_THROW(forward_transform_hyperbolic(Profile::zeros(b), k), GridMismatchError);
  EXPECT_THROW(inverse_transform_parabolic(Profile::zeros(b), k), GridMismatchError);
}

TEST(KernelTable, CsvIsDeterministic) {
  Grid g(11);
  const auto k = solve_parabolic_kernel(parabolic(2.0), g);
  std::ostringstream a, b;
  k.write_csv(a);
  solve_parabolic_kernel(parabolic(2.0), g).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, 6), "x,y,k\n");
}
