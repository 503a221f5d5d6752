#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pdemhe/errors.hpp"
#include "pdemhe/scenario.hpp"

using namespace pdemhe;

TEST(Presets, AllRoundTripThroughText) {
  for (const auto& name : preset_names()) {
    const ScenarioConfig cfg = preset(name);
    EXPECT_NO_THROW(cfg.validate()) << name;
    const std::string text = emit_config(cfg);
    const ScenarioConfig back = parse_config_text(text);
    EXPECT_EQ(back, cfg) << name;
    EXPECT_EQ(emit_config(back), text) << name;
  }
}

TEST(Presets, UnknownNameIsConfigError) { EXPECT_THROW(preset("nope"), ConfigError); }

TEST(Presets, DeskReproductionSettings) {
  const auto c = preset("fig1-desk");
  EXPECT_EQ(c.plant_class, PlantClass::parabolic);
  EXPECT_EQ(c.lambda, ScalarFunction::chebyshev(21.0, 5));
  EXPECT_EQ(c.n_points, 101u);
  EXPECT_EQ(c.dt, 2.5e-5);
  EXPECT_EQ(c.total_time, 2.0);
  EXPECT_EQ(c.horizon, 0.1);
  EXPECT_EQ(c.modes, 4);
  EXPECT_EQ(c.noise().sigma2, 500.0);
  EXPECT_EQ(c.uhat0, 20.0);
  EXPECT_EQ(c.u0(0.5, c.input(0.0)), 10.0);
  for (double t : {0.0, 0.13, 1.7}) {
    EXPECT_NEAR(c.input(t), 10.0 * std::cos(2.0 * std::numbers::pi * t) + 7.0 * std::sin(16.0 * t), 1e-12);
  }
}

TEST(Presets, FineScaleRespectsStabilityBound) {
  const auto c = preset("fig1-paper");
  EXPECT_EQ(c.n_points, 1001u);
  const ParabolicModel model(c.coefficients(), c.grid());
  EXPECT_LE(c.dt, model.max_stable_dt());
  EXPECT_GT(4e-7, model.max_stable_dt());
}

TEST(Presets, HyperbolicRampIsBoundaryCompatible) {
  const auto c = preset("hyperbolic-finite-time");
  EXPECT_EQ(c.dt, c.grid().dx());
  EXPECT_NEAR(c.u0(1.0, c.input(0.0)), c.input(0.0), 1e-15);
  EXPECT_NEAR(c.u0(0.5, c.input(0.0)), 10.0 * 0.25 + 0.5 * c.input(0.0), 1e-15);
}

TEST(Config, ParsesCommentsAndWhitespace) {
  const auto c = parse_config_text(R"(
# minimal parabolic scenario
name = demo
plant.class = parabolic
plant.lambda.preset = polynomial
plant.lambda.coeffs = 1 0 2   # 1 + 2 x^2
init.u0.preset = sine
init.u0.amplitude = 3
input.terms = 1 6.5 0; 0.5 2 1.5
grid.n_points = 21
time.dt = 1e-4
time.total = 0.5
mhe.T = 0.05
noise.sigma2 = 4
noise.interpretation = stddev
rng.seed = 12345678901234
)");
  EXPECT_EQ(c.name, "demo");
  EXPECT_EQ(c.lambda, ScalarFunction::polynomial({1.0, 0.0, 2.0}));
  EXPECT_EQ(c.u0.shape, InitialShape::sine);
  ASSERT_EQ(c.input.terms.size(), 2u);
  EXPECT_EQ(c.input.terms[1].phase, 1.5);
  EXPECT_EQ(c.noise().sigma2, 16.0);
  EXPECT_EQ(c.seed, 12345678901234u);
  EXPECT_EQ(parse_config_text(emit_config(c)), c);
}

TEST(Config, HyperbolicPolynomialKernel) {
  const auto c = parse_config_text(
      "plant.class = hyperbolic\nplant.f.preset = polynomial\nplant.f.terms = 1 0 0; -0.5 1 2\n"
      "plant.g.preset = constant\nplant.g.value = 2\ngrid.n_points = 11\ntime.dt = 0.1\n"
      "time.total = 2\nmhe.T = 1\n");
  EXPECT_EQ(c.f, BivariateFunction::polynomial({{1.0, 0, 0}, {-0.5, 1, 2}}));
  EXPECT_DOUBLE_EQ(c.f(0.5, 0.5), 1.0 - 0.5 * 0.5 * 0.25);
  EXPECT_EQ(parse_config_text(emit_config(c)), c);
}

TEST(Config, RejectsBadInput) {
  const std::string base = emit_config(preset("parabolic-envelope"));
  auto with = [&](const std::string& extra) { return parse_config_text(base + extra); };
  EXPECT_THROW(with("bogus.key = 1\n"), ConfigError);
  EXPECT_THROW(with("name = again\n"), ConfigError);
  EXPECT_THROW(parse_config_text("time.dt 1e-4\n"), ConfigError);
  EXPECT_THROW(parse_config_text("grid.n_points = many\n"), ConfigError);
  EXPECT_THROW(parse_config_text("time.dt = nan\n"), ConfigError);
  EXPECT_THROW(parse_config_text("plant.class = elliptic\n"), ConfigError);
  EXPECT_THROW(parse_config_text("mhe.boundary_tail = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config_text("plant.lambda.value = 3\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/dir/cfg.txt"), ConfigError);
}

TEST(Config, ValidateChecksPreconditions) {
  auto c = preset("parabolic-envelope");
  c.dt = 1e-4;  // above 0.4 dx^2
  EXPECT_THROW(c.validate(), ConfigError);

  auto h = preset("hyperbolic-finite-time");
  h.horizon = 0.5;
  EXPECT_THROW(h.validate(), ConfigError);
  h = preset("hyperbolic-finite-time");
  h.dt = 2.0 * h.grid().dx();
  EXPECT_THROW(h.validate(), ConfigError);

  auto t = preset("fig1-desk");
  t.total_time = 0.05;
  EXPECT_THROW(t.validate(), ConfigError);
  t = preset("fig1-desk");
  t.horizon = 0.10001;
  EXPECT_THROW(t.validate(), ConfigError);
  t = preset("fig1-desk");
  t.noise_level = -1.0;
  EXPECT_THROW(t.validate(), ConfigError);
}

TEST(Config, RefinementKeepsStabilityRatio) {
  const auto p = preset("parabolic-generic");
  const auto r = refined(p, 1);
  EXPECT_EQ(r.n_points, 101u);
  EXPECT_DOUBLE_EQ(r.dt, p.dt / 4.0);
  EXPECT_NO_THROW(r.validate());
  const auto h = refined(preset("hyperbolic-finite-time"), 1);
  EXPECT_EQ(h.n_points, 401u);
  EXPECT_DOUBLE_EQ(h.dt, h.grid().dx());
  EXPECT_EQ(refined(p, 0), p);
}

TEST(Config, MheOptionsMirrorConfig) {
  const auto c = preset("fig1-paper");
  const auto o = c.mhe_options();
  EXPECT_EQ(o.horizon, 0.1);
  EXPECT_EQ(o.modes, 4);
  EXPECT_EQ(o.snapshot_stride, 100u);
  EXPECT_EQ(o.warmup_value, 20.0);
  EXPECT_EQ(c.total_steps(), 8'000'000u);
}
