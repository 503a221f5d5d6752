#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "pdemhe/errors.hpp"
#include "pdemhe/plant.hpp"

using namespace pdemhe;

namespace {

constexpr double pi = std::numbers::pi;

HyperbolicPlantState transport_plant(const Grid& g, const std::function<double(double)>& u0) {
  const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(0.0),
                                                      ScalarFunction::constant(0.0));
  return {Profile::sample(g, u0), 0.0, std::make_shared<HyperbolicModel>(coeffs, g)};
}

ParabolicPlantState heat_plant(const Grid& g, const ScalarFunction& lambda,
                               const std::function<double(double)>& u0) {
  return {Profile::sample(g, u0), 0.0,
          std::make_shared<ParabolicModel>(CoefficientSet::make_parabolic(lambda), g)};
}

double max_abs(const Profile& p) {
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Transport, RampShiftsLeftAtUnitSpeed) {
  Grid g(101);
  auto u0 = [](double x) { return 1.0 - x; };
  auto s = transport_plant(g, u0);
  const double dt = g.dx();
  for (int k = 0; k < 30; ++k) {
    step_hyperbolic(s, 0.0, dt);
    const double t = (k + 1) * dt;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.x(i);
      const double expected = x + t <= 1.0 ? u0(x + t) : 0.0;
      EXPECT_NEAR(s.profile[i], expected, 1e-12);
    }
    EXPECT_NEAR(measure_hyperbolic(s), u0(t), 1e-12);
  }
}

TEST(Transport, BoundaryValuePropagatesAlongCharacteristics) {
  Grid g(201);
  auto s = transport_plant(g, [](double) { return 0.0; });
  const double dt = 0.5 * g.dx();
  const int steps = 200;  // t = 0.5
  for (int k = 0; k < steps; ++k) step_hyperbolic(s, 1.0, dt);
  const double t = steps * dt;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    if (x > 1.0 - t + 0.1) {
      EXPECT_NEAR(s.profile[i], 1.0, 1e-2);
    }
    if (x < 1.0 - t - 0.1) {
      EXPECT_NEAR(s.profile[i], 0.0, 1e-2);
    }
    EXPECT_GE(s.profile[i], -1e-12);
    EXPECT_LE(s.profile[i], 1.0 + 1e-12);
  }
  // Numerical diffusion spreads the front over about sqrt(dx t) but keeps it centred.
  std::size_t i = 0;
  while (s.profile[i] < 0.5) ++i;
  EXPECT_NEAR(g.x(i), 1.0 - t, 5 * g.dx());
}

TEST(Transport, RejectsCflViolation) {
  Grid g(11);
  auto s = transport_plant(g, [](double) { return 0.0; });
  EXPECT_THROW(step_hyperbolic(s, 0.0, 1.5 * g.dx()), ConfigError);
  EXPECT_THROW(step_hyperbolic(s, 0.0, 0.0), ConfigError);
}

TEST(Transport, WashoutAfterUnitTime) {
  Grid g(101);
  auto s = transport_plant(g, [](double x) { return std::sin(3.0 * x) * (1.0 - x); });
  const double dt = 0.5 * g.dx();
  while (s.t < 1.0 + g.dx()) step_hyperbolic(s, 0.0, dt);
  // Upwinding at Courant number 1/2 leaves a numerically diffused tail.
  EXPECT_LT(max_abs(s.profile), 0.02);
  while (s.t < 1.5) step_hyperbolic(s, 0.0, dt);
  EXPECT_LT(max_abs(s.profile), 1e-9);
  auto exact = transport_plant(g, [](double x) { return std::sin(3.0 * x) * (1.0 - x); });
  while (exact.t < 1.0 - 0.5 * g.dx()) step_hyperbolic(exact, 0.0, g.dx());
  EXPECT_EQ(max_abs(exact.profile), 0.0);
}

TEST(Transport, SourceTermsMatchAnalyticRate) {
  // With u constant c inside, one step adds dt (g c + c int_0^x f) to node i.
  Grid g(11);
  const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(2.0),
                                                      ScalarFunction::constant(0.5));
  HyperbolicPlantState s{Profile::constant(g, 3.0), 0.0, std::make_shared<HyperbolicModel>(coeffs, g)};
  const double dt = 0.05;
  step_hyperbolic(s, 3.0, dt);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    EXPECT_NEAR(s.profile[i], 3.0 + dt * (0.5 * 3.0 + 2.0 * 3.0 * g.x(i)), 1e-13);
  }
}

TEST(Diffusion, EigenmodeDecays) {
  Grid g(101);
  auto s = heat_plant(g, ScalarFunction::constant(0.0),
                      [](double x) { return std::sqrt(2.0) * std::sin(pi * x); });
  const double dt = s.model->max_stable_dt();
  while (s.t < 0.1 - 0.5 * dt) step_parabolic(s, 0.0, dt);
  const double expected = std::exp(-pi * pi * s.t);
  EXPECT_NEAR(l2_norm(s.profile), expected, 1e-3 * expected + 1e-4);
}

TEST(Diffusion, BoundariesAreReimposed) {
  Grid g(51);
  auto s = heat_plant(g, ScalarFunction::constant(1.0), [](double) { return 10.0; });
  const double dt = s.model->max_stable_dt();
  for (int k = 0; k < 100; ++k) {
    const double u_next = 10.0 * std::cos(2.0 * pi * (k + 1) * dt);
    step_parabolic(s, u_next, dt);
    EXPECT_EQ(s.profile[0], 0.0);
    EXPECT_EQ(s.profile[g.size() - 1], u_next);
  }
}

TEST(Diffusion, RejectsUnstableStep) {
  Grid g(51);
  auto s = heat_plant(g, ScalarFunction::constant(21.0), [](double) { return 0.0; });
  EXPECT_NO_THROW(step_parabolic(s, 0.0, s.model->max_stable_dt()));
  EXPECT_THROW(step_parabolic(s, 0.0, 1.01 * s.model->max_stable_dt()), ConfigError);
  const double h2 = g.dx() * g.dx();
  EXPECT_DOUBLE_EQ(s.model->max_stable_dt(), 0.4 * h2 / (1.0 + 21.0 * h2));
}

TEST(Diffusion, MaximumPrinciple) {
  Grid g(51);
  auto s = heat_plant(g, ScalarFunction::constant(0.0),
                      [](double x) { return std::sin(7.0 * x) + (x > 0.3 && x < 0.5 ? 2.0 : 0.0); });
  const double dt = s.model->max_stable_dt();
  double prev = max_abs(s.profile);
  for (int k = 0; k < 2000; ++k) {
    step_parabolic(s, 0.0, dt);
    const double now = max_abs(s.profile);
    EXPECT_LE(now, prev + 1e-14);
    prev = now;
  }
}

TEST(Diffusion, ChebyshevPlantIsBoundedButNotDecaying) {
  Grid g(101);
  auto s = heat_plant(g, ScalarFunction::chebyshev(21.0, 5), [](double) { return 10.0; });
  s.profile[0] = 0.0;
  const double dt = 2.5e-5;
  auto input = [](double t) { return 10.0 * std::cos(2.0 * pi * t) + 7.0 * std::sin(16.0 * t); };
  double max_norm = 0.0;
  double late_min = INFINITY;
  for (int k = 0; k < 80000; ++k) {
    step_parabolic(s, input((k + 1) * dt), dt);
    const double n = l2_norm(s.profile);
    max_norm = std::max(max_norm, n);
    if (s.t > 1.5) late_min = std::min(late_min, n);
  }
  EXPECT_LT(max_norm, 1e3);
  EXPECT_GT(late_min, 0.5);
}

TEST(Measurement, ParabolicStencil) {
  Grid g(201);
  EXPECT_NEAR(measure_parabolic(Profile::sample(g, [](double x) { return std::sqrt(2.0) * std::sin(pi * x); })),
              -std::sqrt(2.0) * pi, 1e-3);
  EXPECT_EQ(measure_parabolic(Profile::constant(g, 4.0)), 0.0);
  EXPECT_NEAR(measure_parabolic(Profile::sample(g, [](double x) { return x; })), 1.0, 1e-12);
  EXPECT_THROW(measure_parabolic(Profile::zeros(Grid(3))), ConfigError);
}

TEST(Measurement, HyperbolicReadsLeftNode) {
  Grid g(11);
  EXPECT_EQ(measure_hyperbolic(Profile::zeros(g)), 0.0);
  EXPECT_EQ(measure_hyperbolic(Profile::sample(g, [](double x) { return x; })), 0.0);
  EXPECT_EQ(measure_hyperbolic(Profile::sample(g, [](double x) { return 2.0 + x; })), 2.0);
}

TEST(Noise, ZeroVarianceLeavesMeasurementUnchanged) {
  NoiseSource src({0.0, 42});
  for (double y : {-3.0, 0.0, 1e10}) EXPECT_EQ(add_noise(y, src), y);
}

TEST(Noise, MomentsMatchConfiguredVariance) {
  const double sigma2 = 500.0;
  NoiseSource src({sigma2, 7});
  const int n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = add_noise(0.0, src);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_LE(std::abs(mean), 3.0 * std::sqrt(sigma2 / n));
  EXPECT_NEAR(var, sigma2, 0.01 * sigma2);
}

TEST(Noise, SeedDeterminesSequence) {
  NoiseSource a({2.0, 99}), b({2.0, 99}), c({2.0, 100});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.draw();
    EXPECT_EQ(x, b.draw());
    differs |= x != c.draw();
  }
  EXPECT_TRUE(differs);
}

TEST(Noise, RejectsNegativeVariance) {
  EXPECT_THROW(NoiseSource({-1.0, 0}), ConfigError);
}

TEST(Refinement, HyperbolicTrajectoriesConvergeFirstOrder) {
  auto run = [](std::size_t n) {
    Grid g(n);
    const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(1.0),
                                                        ScalarFunction::polynomial({0.0, 1.0}));
    HyperbolicPlantState s{Profile::sample(g, [](double x) { return 10.0 * x * (1.0 - x); }), 0.0,
                           std::make_shared<HyperbolicModel>(coeffs, g)};
    const double dt = g.dx();
    const auto steps = static_cast<int>(std::lround(0.5 / dt));
    for (int k = 0; k < steps; ++k) step_hyperbolic(s, 0.0, dt);
    return s.profile;
  };
  const auto a = run(51), b = run(101), c = run(201);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d1 = std::max(d1, std::abs(a[i] - b[2 * i]));
    d2 = std::max(d2, std::abs(b[2 * i] - c[4 * i]));
  }
  EXPECT_NEAR(d1 / d2, 2.0, 0.5);
}

TEST(Refinement, ParabolicTrajectoriesConvergeSecondOrder) {
  auto run = [](std::size_t n) {
    Grid g(n);
    auto s = heat_plant(g, ScalarFunction::polynomial({3.0, 0.0, 4.0}),
                        [](double x) { return std::sin(pi * x) + x; });
    const double dt = 0.2 * g.dx() * g.dx();
    const auto steps = static_cast<int>(std::lround(0.05 / dt));
    for (int k = 0; k < steps; ++k) step_parabolic(s, 1.0, dt);
    return s.profile;
  };
  const auto a = run(11), b = run(21), c = run(41);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d1 = std::max(d1, std::abs(a[i] - b[2 * i]));
    d2 = std::max(d2, std::abs(b[2 * i] - c[4 * i]));
  }
  EXPECT_NEAR(d1 / d2, 4.0, 0.6);
}
