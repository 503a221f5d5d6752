#include "pdemhe/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>

#include "json.hpp"
#include "pdemhe/bounds.hpp"
#include "pdemhe/csv.hpp"
#include "pdemhe/errors.hpp"
#include "pdemhe/hyperbolic_mhe.hpp"
#include "pdemhe/observer.hpp"
#include "pdemhe/parabolic_mhe.hpp"
#include "pdemhe/transforms.hpp"

namespace pdemhe {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

Profile initial_plant_profile(const ScenarioConfig& cfg, const Grid& grid, bool quiet) {
  const double u_start = cfg.input(0.0);
  Profile p = Profile::sample(grid, [&](double x) { return cfg.u0(x, u_start); });
  const std::size_t last = grid.size() - 1;
  double mismatch = std::abs(p[last] - u_start);
  p[last] = u_start;
  if (cfg.plant_class == PlantClass::parabolic) {
    mismatch = std::max(mismatch, std::abs(p[0]));
    p[0] = 0.0;
  }
  if (mismatch > 1e-12 && !quiet) {
    std::cerr << "warning: initial profile does not match the boundary conditions (off by "
              << mismatch << "); boundary nodes overwritten\n";
  }
  return p;
}

Profile warm_profile(const ScenarioConfig& cfg, const Grid& grid, double u_boundary) {
  Profile p = Profile::constant(grid, cfg.uhat0);
  if (cfg.plant_class == PlantClass::parabolic) p[0] = 0.0;
  p[grid.size() - 1] = u_boundary;
  return p;
}

// Plant, estimator and PDE observer for one plant class behind a common
// interface so the time loops below are written once.
class HyperbolicPipeline {
 public:
  HyperbolicPipeline(const ScenarioConfig& cfg, bool quiet)
      : cfg_(cfg),
        grid_(cfg.grid()),
        model_(std::make_shared<const HyperbolicModel>(cfg.coefficients(), grid_)),
        plant_{initial_plant_profile(cfg, grid_, quiet), 0.0, model_},
        mhe_(cfg.coefficients(), grid_, cfg.dt, cfg.solver()),
        gain_(observer_gain_hyperbolic(cfg.coefficients(), mhe_.k())) {}

  double engagement_time() const { return HyperbolicMhe::horizon; }
  std::size_t window_steps() const {
    return static_cast<std::size_t>(std::llround(HyperbolicMhe::horizon / cfg_.dt));
  }
  const Grid& grid() const { return grid_; }
  const Profile& plant() const { return plant_.profile; }
  double measure() const { return measure_hyperbolic(plant_); }
  void step_plant(double u_next) { step_hyperbolic(plant_, u_next, cfg_.dt); }
  void feed(double t, double y, double u) { mhe_.push(t, y, u); }
  Profile estimate(double t) const {
    return mhe_.ready(t) ? mhe_.estimate(t) : warm_profile(cfg_, grid_, cfg_.input(t));
  }

  HyperbolicObserverState make_observer(double t) const {
    return {warm_profile(cfg_, grid_, cfg_.input(t)), t, model_, gain_};
  }
  void step_observer(HyperbolicObserverState& obs, double y, double u_next) const {
    step_observer_hyperbolic(obs, y, u_next, cfg_.dt);
  }

 private:
  const ScenarioConfig& cfg_;
  Grid grid_;
  std::shared_ptr<const HyperbolicModel> model_;
  HyperbolicPlantState plant_;
  HyperbolicMhe mhe_;
  GainVector gain_;
};

class ParabolicPipeline {
 public:
  ParabolicPipeline(const ScenarioConfig& cfg, bool quiet)
      : cfg_(cfg),
        grid_(cfg.grid()),
        model_(std::make_shared<const ParabolicModel>(cfg.coefficients(), grid_)),
        plant_{initial_plant_profile(cfg, grid_, quiet), 0.0, model_},
        mhe_(cfg.coefficients(), grid_, cfg.dt, cfg.mhe_options()),
        gain_(observer_gain_parabolic(mhe_.k())) {}

  double engagement_time() const {
    return static_cast<double>(mhe_.window_steps()) * cfg_.dt;
  }
  std::size_t window_steps() const { return mhe_.window_steps(); }
  const Grid& grid() const { return grid_; }
  const Profile& plant() const { return plant_.profile; }
  double measure() const { return measure_parabolic(plant_); }
  void step_plant(double u_next) { step_parabolic(plant_, u_next, cfg_.dt); }
  void feed(double t, double y, double u) { mhe_.update(t, y, u); }
  Profile estimate(double) const { return mhe_.estimate(); }

  ParabolicObserverState make_observer(double t) const {
    return {warm_profile(cfg_, grid_, cfg_.input(t)), t, model_, gain_};
  }
  void step_observer(ParabolicObserverState& obs, double y, double u_next) const {
    step_observer_parabolic(obs, y, u_next, cfg_.dt);
  }

 private:
  const ScenarioConfig& cfg_;
  Grid grid_;
  std::shared_ptr<const ParabolicModel> model_;
  ParabolicPlantState plant_;
  ParabolicMhe mhe_;
  GainVector gain_;
};

struct ProfileCsv {
  std::ofstream file;
  std::optional<CsvWriter> csv;

  ProfileCsv(const std::optional<std::filesystem::path>& dir, const char* name,
             std::initializer_list<std::string_view> header) {
    if (!dir) return;
    file.open(*dir / name);
    if (!file) throw ConfigError("cannot write " + (*dir / name).string());
    csv.emplace(file, header);
  }

  void profile(double t, const Profile& p) {
    if (!csv) return;
    for (std::size_t i = 0; i < p.size(); ++i) csv->row({t, p.grid().x(i), p[i]});
  }

  void scalar(double t, double v) {
    if (csv) csv->row({t, v});
  }
};

// Least-squares slope of log(error) against t on [engagement, engagement +
// span], with one intercept per phase t mod T: estimates at different phases
// descend from different warm-up profiles, so only the within-phase trend is a
// decay rate.
double fit_decay_slope(const RunSummary& s, double dt, std::size_t window, double span,
                       double floor) {
  struct Sums {
    double n = 0.0, t = 0.0, y = 0.0, tt = 0.0, ty = 0.0;
  };
  std::map<std::size_t, Sums> phases;
  const double tol = 1e-9;
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const double t = s.times[k];
    if (t < s.engagement_time - tol || t > s.engagement_time + span + tol) continue;
    if (!(s.errors[k] > floor)) continue;
    const double y = std::log(s.errors[k]);
    const auto step = static_cast<std::size_t>(std::llround(t / dt));
    Sums& g = phases[window > 0 ? step % window : 0];
    g.n += 1.0;
    g.t += t;
    g.y += y;
    g.tt += t * t;
    g.ty += t * y;
  }
  double num = 0.0, den = 0.0;
  for (const auto& [phase, g] : phases) {
    if (g.n < 2.0) continue;
    num += g.ty - g.t * g.y / g.n;
    den += g.tt - g.t * g.t / g.n;
  }
  if (!(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

template <typename Pipeline>
RunSummary run_pipeline(const ScenarioConfig& cfg, const RunOptions& options) {
  RunSummary summary;
  summary.scenario = cfg.name;
  summary.plant_class = cfg.plant_class;

  auto t0 = Clock::now();
  Pipeline pipe(cfg, options.quiet);
  summary.timings["kernels"] = seconds_since(t0);
  summary.engagement_time = pipe.engagement_time();

  if (options.out_dir) std::filesystem::create_directories(*options.out_dir);
  ProfileCsv plant_csv(options.out_dir, "plant.csv", {"t", "x", "u"});
  ProfileCsv estimate_csv(options.out_dir, "estimate.csv", {"t", "x", "u_hat"});
  ProfileCsv error_csv(options.out_dir, "error.csv", {"t", "l2_error"});
  std::optional<ProfileCsv> observer_csv;
  std::optional<ProfileCsv> observer_error_csv;
  std::optional<decltype(pipe.make_observer(0.0))> observer;
  if (cfg.output_observer) {
    observer_csv.emplace(options.out_dir, "observer.csv", std::initializer_list<std::string_view>{"t", "x", "u_hat"});
    observer_error_csv.emplace(options.out_dir, "observer_error.csv", std::initializer_list<std::string_view>{"t", "l2_error"});
    observer.emplace(pipe.make_observer(0.0));
  }

  NoiseSource noise(cfg.noise());
  const std::size_t steps = cfg.total_steps();
  const std::size_t window = pipe.window_steps();
  double plant_time = 0.0, mhe_time = 0.0, observer_time = 0.0, io_time = 0.0;

  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;
    const double u_now = cfg.input(t);
    const double y = add_noise(pipe.measure(), noise);

    auto tm = Clock::now();
    pipe.feed(t, y, u_now);
    const bool want_metrics = s % cfg.metrics_stride == 0 || s == steps;
    const bool want_output = options.out_dir && s % cfg.output_stride == 0;
    const bool want_window = window > 0 && s % window == 0;
    std::optional<Profile> est;
    if (want_metrics || want_output || want_window) est = pipe.estimate(t);
    mhe_time += seconds_since(tm);

    tm = Clock::now();
    if (est) {
      const double err = error_norm(pipe.plant(), *est);
      if (want_metrics) {
        summary.times.push_back(t);
        summary.errors.push_back(err);
        summary.max_state_norm = std::max(summary.max_state_norm, l2_norm(pipe.plant()));
        error_csv.scalar(t, err);
        if (observer) {
          const double oerr = error_norm(pipe.plant(), observer->profile);
          summary.observer_errors.push_back(oerr);
          observer_error_csv->scalar(t, oerr);
        }
      }
      if (want_window) summary.window_errors.push_back(err);
      if (want_output) {
        plant_csv.profile(t, pipe.plant());
        estimate_csv.profile(t, *est);
        if (observer) observer_csv->profile(t, observer->profile);
      }
    }
    io_time += seconds_since(tm);

    if (s == steps) break;
    const double u_next = cfg.input(static_cast<double>(s + 1) * cfg.dt);
    if (observer) {
      tm = Clock::now();
      pipe.step_observer(*observer, y, u_next);
      observer_time += seconds_since(tm);
    }
    tm = Clock::now();
    pipe.step_plant(u_next);
    plant_time += seconds_since(tm);
  }

  summary.timings["plant"] = plant_time;
  summary.timings["mhe"] = mhe_time;
  summary.timings["observer"] = observer_time;
  summary.timings["metrics_io"] = io_time;
  summary.timings["total"] = seconds_since(t0);

  summary.final_error = summary.errors.empty() ? 0.0 : summary.errors.back();
  summary.decay_slope =
      fit_decay_slope(summary, cfg.dt, window, cfg.fit_span, cfg.error_floor);
  for (std::size_t j = 1; j < summary.window_errors.size(); ++j) {
    const double prev = summary.window_errors[j - 1];
    if (!(prev > cfg.error_floor)) break;
    summary.contraction_ratios.push_back(summary.window_errors[j] / prev);
  }
  if (cfg.plant_class == PlantClass::parabolic) {
    const double lbar = cfg.coefficients().sup_lambda(pipe.grid());
    summary.contraction_bound =
        std::exp(parabolic_log_overshoot(lbar) - std::numbers::pi * std::numbers::pi *
                                                     pipe.engagement_time());
  }

  if (options.out_dir) {
    std::ofstream json(*options.out_dir / "summary.json");
    write_summary_json(summary, json);
  }
  return summary;
}

}  // namespace

double RunSummary::error_at(double t) const {
  if (times.empty()) throw WindowError("run summary has no error samples");
  std::size_t best = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
  }
  return errors[best];
}

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  cfg.validate();
  if (cfg.plant_class == PlantClass::hyperbolic) {
    return run_pipeline<HyperbolicPipeline>(cfg, options);
  }
  return run_pipeline<ParabolicPipeline>(cfg, options);
}

void write_summary_json(const RunSummary& s, std::ostream& out) {
  ordered_json j;
  j["scenario"] = s.scenario;
  j["plant_class"] = std::string(to_string(s.plant_class));
  j["engagement_time"] = s.engagement_time;
  j["final_error"] = number_or_null(s.final_error);
  j["decay_slope"] = number_or_null(s.decay_slope);
  ordered_json ratios = ordered_json::array();
  for (double r : s.contraction_ratios) ratios.push_back(number_or_null(r));
  j["contraction_ratios"] = ratios;
  if (s.plant_class == PlantClass::parabolic) {
    j["contraction_bound"] = number_or_null(s.contraction_bound);
  }
  j["max_state_norm"] = s.max_state_norm;
  ordered_json timings = ordered_json::object();
  for (const auto& [k, v] : s.timings) timings[k] = v;
  j["timings"] = timings;
  out << j.dump(2) << '\n';
}

double simulate_plant(const ScenarioConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const Grid grid = cfg.grid();
  const std::size_t steps = cfg.total_steps();
  if (options.out_dir) std::filesystem::create_directories(*options.out_dir);
  ProfileCsv plant_csv(options.out_dir, "plant.csv", {"t", "x", "u"});
  auto run = [&](auto& state, auto step) {
    for (std::size_t s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) * cfg.dt;
      if (s % cfg.output_stride == 0) plant_csv.profile(t, state.profile);
      if (s == steps) break;
      step(state, cfg.input(static_cast<double>(s + 1) * cfg.dt), cfg.dt);
    }
    return l2_norm(state.profile);
  };
  if (cfg.plant_class == PlantClass::hyperbolic) {
    HyperbolicPlantState st{initial_plant_profile(cfg, grid, options.quiet), 0.0,
                            std::make_shared<const HyperbolicModel>(cfg.coefficients(), grid)};
    return run(st, step_hyperbolic);
  }
  ParabolicPlantState st{initial_plant_profile(cfg, grid, options.quiet), 0.0,
                         std::make_shared<const ParabolicModel>(cfg.coefficients(), grid)};
  return run(st, step_parabolic);
}

void export_kernels(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  const Grid grid = cfg.grid();
  const CoefficientSet coeffs = cfg.coefficients();
  const bool hyperbolic = cfg.plant_class == PlantClass::hyperbolic;

  SolveReport k_report, l_report;
  const KernelTable k = hyperbolic ? solve_hyperbolic_kernel(coeffs, grid, cfg.solver(), &k_report)
                                   : solve_parabolic_kernel(coeffs, grid, cfg.solver(), &k_report);
  const KernelTable l = invert_kernel(k, cfg.solver(), &l_report);
  const GainVector p1 = hyperbolic ? observer_gain_hyperbolic(coeffs, k) : observer_gain_parabolic(k);

  {
    std::ofstream out(out_dir / "kernel.csv");
    k.write_csv(out, "k");
  }
  {
    std::ofstream out(out_dir / "inverse_kernel.csv");
    l.write_csv(out, "l");
  }
  {
    std::ofstream out(out_dir / "gain.csv");
    if (hyperbolic) {
      const GainVector theta = theta_kernel(p1, l);
      CsvWriter csv(out, {"x", "p1", "theta"});
      for (std::size_t i = 0; i < grid.size(); ++i) csv.row({grid.x(i), p1[i], theta[i]});
    } else {
      CsvWriter csv(out, {"x", "p1"});
      for (std::size_t i = 0; i < grid.size(); ++i) csv.row({grid.x(i), p1[i]});
    }
  }

  ordered_json j;
  j["plant_class"] = std::string(to_string(cfg.plant_class));
  j["n_points"] = grid.size();
  j["kernel_iterations"] = k_report.iterations;
  j["kernel_last_update"] = k_report.last_update;
  j["inverse_iterations"] = l_report.iterations;
  j["inverse_last_update"] = l_report.last_update;
  j["max_abs_k"] = k.max_abs();
  j["max_abs_l"] = l.max_abs();
  j["pde_residual"] =
      hyperbolic ? hyperbolic_kernel_residual(coeffs, k) : parabolic_kernel_residual(coeffs, k);
  j["volterra_residual"] = volterra_residual(k, l);
  if (hyperbolic) {
    j["sup_f"] = coeffs.sup_f(grid);
    j["inverse_bound"] = hyperbolic_inverse_bound(coeffs.sup_f(grid));
  } else {
    const double lbar = coeffs.sup_lambda(grid);
    j["sup_lambda"] = lbar;
    j["kernel_bound"] = parabolic_kernel_bound(lbar, 1.0);
    j["inverse_bound"] = parabolic_inverse_bound(lbar);
    j["contraction_threshold"] = contraction_threshold(lbar);
  }
  std::ofstream out(out_dir / "kernel.json");
  out << j.dump(2) << '\n';
}

namespace {

void finish_level(CompareLevel& level) {
  double sq = 0.0;
  for (double d : level.discrepancies) {
    level.sup_discrepancy = std::max(level.sup_discrepancy, d);
    sq += d * d;
  }
  if (!level.discrepancies.empty()) {
    level.l2_discrepancy = std::sqrt(sq / static_cast<double>(level.discrepancies.size()));
  }
}

CompareLevel compare_hyperbolic(const ScenarioConfig& cfg) {
  HyperbolicPipeline pipe(cfg, true);
  CompareLevel level{cfg.n_points, cfg.dt, {}, {}, 0.0, 0.0, 0.0};
  auto observer = pipe.make_observer(0.0);
  const std::size_t steps = cfg.total_steps();
  const double start = HyperbolicMhe::horizon + 2.0 * pipe.grid().dx();
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;
    const double y = pipe.measure();
    pipe.feed(t, y, cfg.input(t));
    level.max_state_norm = std::max(level.max_state_norm, l2_norm(pipe.plant()));
    if (t >= start - 1e-9 * cfg.dt) {
      level.times.push_back(t);
      level.discrepancies.push_back(error_norm(pipe.estimate(t), observer.profile));
    }
    if (s == steps) break;
    const double u_next = cfg.input(static_cast<double>(s + 1) * cfg.dt);
    pipe.step_observer(observer, y, u_next);
    pipe.step_plant(u_next);
  }
  finish_level(level);
  return level;
}

CompareLevel compare_parabolic(const ScenarioConfig& cfg) {
  ParabolicPipeline pipe(cfg, true);
  CompareLevel level{cfg.n_points, cfg.dt, {}, {}, 0.0, 0.0, 0.0};
  const std::size_t window = pipe.window_steps();
  const std::size_t phases = std::min(cfg.compare_phases, window);
  std::vector<std::size_t> starts(phases);
  for (std::size_t i = 0; i < phases; ++i) starts[i] = i * window / phases;

  std::vector<std::optional<ParabolicObserverState>> observers(phases);
  const std::size_t steps = cfg.total_steps();
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;
    const double y = pipe.measure();
    pipe.feed(t, y, cfg.input(t));
    if (s % cfg.metrics_stride == 0) {
      level.max_state_norm = std::max(level.max_state_norm, l2_norm(pipe.plant()));
    }
    std::optional<Profile> est;
    for (std::size_t i = 0; i < phases; ++i) {
      if (s == starts[i]) observers[i].emplace(pipe.make_observer(t));
      if (!observers[i] || s < starts[i] + window || (s - starts[i]) % window != 0) continue;
      if (!est) est = pipe.estimate(t);
      level.times.push_back(t);
      level.discrepancies.push_back(error_norm(*est, observers[i]->profile));
      level.max_state_norm = std::max(level.max_state_norm, l2_norm(pipe.plant()));
    }
    if (s == steps) break;
    const double u_next = cfg.input(static_cast<double>(s + 1) * cfg.dt);
    for (auto& obs : observers) {
      if (obs) pipe.step_observer(*obs, y, u_next);
    }
    pipe.step_plant(u_next);
  }
  finish_level(level);
  return level;
}

}  // namespace

CompareLevel compare_level(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.noise_level != 0.0) throw ConfigError("comparison requires a noiseless config");
  return cfg.plant_class == PlantClass::hyperbolic ? compare_hyperbolic(cfg)
                                                   : compare_parabolic(cfg);
}

CompareReport compare_mhe_vs_observer(const ScenarioConfig& cfg) {
  CompareReport report;
  report.scenario = cfg.name;
  for (std::size_t k = 0; k <= cfg.compare_refinements; ++k) {
    report.levels.push_back(compare_level(refined(cfg, k)));
  }
  for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
    report.refinement_ratios.push_back(report.levels[k].sup_discrepancy /
                                       report.levels[k + 1].sup_discrepancy);
  }
  return report;
}

void write_compare_json(const CompareReport& report, std::ostream& out) {
  ordered_json j;
  j["scenario"] = report.scenario;
  ordered_json levels = ordered_json::array();
  for (const auto& level : report.levels) {
    ordered_json l;
    l["n_points"] = level.n_points;
    l["dx"] = 1.0 / static_cast<double>(level.n_points - 1);
    l["dt"] = level.dt;
    l["compared_instants"] = level.discrepancies.size();
    l["sup_discrepancy"] = level.sup_discrepancy;
    l["l2_discrepancy"] = level.l2_discrepancy;
    l["max_state_norm"] = level.max_state_norm;
    l["relative_sup_discrepancy"] =
        level.max_state_norm > 0.0 ? level.sup_discrepancy / level.max_state_norm : 0.0;
    levels.push_back(l);
  }
  j["levels"] = levels;
  ordered_json ratios = ordered_json::array();
  for (double r : report.refinement_ratios) ratios.push_back(number_or_null(r));
  j["refinement_ratios"] = ratios;
  out << j.dump(2) << '\n';
}

ContractionReport check_contraction(const ScenarioConfig& cfg, std::size_t window_count) {
  if (cfg.plant_class != PlantClass::parabolic) {
    throw ConfigError("contraction check applies to the parabolic estimator");
  }
  if (cfg.noise_level != 0.0) throw ConfigError("contraction check requires a noiseless config");
  ScenarioConfig run_cfg = cfg;
  run_cfg.total_time = std::max(cfg.total_time, cfg.horizon * static_cast<double>(window_count));
  run_cfg.total_time = cfg.dt * std::round(run_cfg.total_time / cfg.dt);
  RunOptions quiet;
  quiet.quiet = true;
  const RunSummary s = run_scenario(run_cfg, quiet);

  ContractionReport r;
  r.horizon = cfg.horizon;
  const double lbar = cfg.coefficients().sup_lambda(cfg.grid());
  r.threshold = contraction_threshold(lbar);
  r.bound = s.contraction_bound;
  r.floor = cfg.error_floor;
  r.vacuous = !(r.bound < 1.0);
  const std::size_t windows = std::min(window_count + 1, s.window_errors.size());
  r.window_errors.assign(s.window_errors.begin(), s.window_errors.begin() + windows);
  for (std::size_t j = 1; j < windows; ++j) {
    const double prev = r.window_errors[j - 1];
    const double cur = r.window_errors[j];
    r.ratios.push_back(prev > 0.0 ? cur / prev : 0.0);
    r.informative.push_back(prev > r.floor);
    if (cur > r.bound * prev + r.floor) r.satisfied = false;
  }
  return r;
}

BenchmarkReport benchmark_cost(const ScenarioConfig& cfg, std::size_t steps) {
  cfg.validate();
  BenchmarkReport r;
  r.steps = std::max<std::size_t>(1, std::min(steps, cfg.total_steps()));
  const auto run = [&](auto& pipe) {
    auto observer = pipe.make_observer(0.0);
    double update = 0.0, estimate = 0.0, obs = 0.0;
    std::size_t estimates = 0;
    // Estimates are only meaningful once the window is full; time them from then on.
    const std::size_t window = pipe.window_steps();
    for (std::size_t s = 0; s < window + r.steps; ++s) {
      const double t = static_cast<double>(s) * cfg.dt;
      const double y = pipe.measure();
      auto tm = Clock::now();
      pipe.feed(t, y, cfg.input(t));
      if (s >= window) update += seconds_since(tm);
      if (s >= window) {
        tm = Clock::now();
        const Profile est = pipe.estimate(t);
        estimate += seconds_since(tm);
        ++estimates;
      }
      const double u_next = cfg.input(static_cast<double>(s + 1) * cfg.dt);
      tm = Clock::now();
      pipe.step_observer(observer, y, u_next);
      if (s >= window) obs += seconds_since(tm);
      pipe.step_plant(u_next);
    }
    const double n = static_cast<double>(r.steps);
    r.mhe_update_seconds = update / n;
    r.mhe_estimate_seconds = estimate / static_cast<double>(std::max<std::size_t>(1, estimates));
    r.observer_step_seconds = obs / n;
    r.observer_seconds_per_unit_time = r.observer_step_seconds / cfg.dt;
  };
  if (cfg.plant_class == PlantClass::hyperbolic) {
    HyperbolicPipeline pipe(cfg, true);
    run(pipe);
  } else {
    ParabolicPipeline pipe(cfg, true);
    run(pipe);
  }
  return r;
}

void write_benchmark_json(const BenchmarkReport& r, std::ostream& out) {
  ordered_json j;
  j["steps"] = r.steps;
  j["mhe_update_seconds"] = r.mhe_update_seconds;
  j["mhe_estimate_seconds"] = r.mhe_estimate_seconds;
  j["observer_step_seconds"] = r.observer_step_seconds;
  j["observer_seconds_per_unit_time"] = r.observer_seconds_per_unit_time;
  out << j.dump(2) << '\n';
}

}  // namespace pdemhe
