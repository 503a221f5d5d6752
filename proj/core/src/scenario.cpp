#include "pdemhe/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "pdemhe/csv.hpp"
#include "pdemhe/errors.hpp"

namespace pdemhe {

std::string_view to_string(PlantClass c) noexcept {
  return c == PlantClass::hyperbolic ? "hyperbolic" : "parabolic";
}

double InputSignal::operator()(double t) const noexcept {
  double acc = 0.0;
  for (const auto& term : terms) acc += term.amplitude * std::sin(term.omega * t + term.phase);
  return acc;
}

double InitialProfile::operator()(double x, double u0) const noexcept {
  switch (shape) {
    case InitialShape::constant:
      return amplitude;
    case InitialShape::sine:
      return amplitude * std::sin(std::numbers::pi * x) + u0 * x;
    case InitialShape::ramp:
      return amplitude * x * (1.0 - x) + u0 * x;
  }
  return 0.0;
}

CoefficientSet ScenarioConfig::coefficients() const {
  return plant_class == PlantClass::hyperbolic ? CoefficientSet::make_hyperbolic(f, g)
                                               : CoefficientSet::make_parabolic(lambda);
}

NoiseModel ScenarioConfig::noise() const {
  const double variance =
      noise_interpretation == NoiseInterpretation::variance ? noise_level : noise_level * noise_level;
  return NoiseModel{variance, seed};
}

ParabolicMheOptions ScenarioConfig::mhe_options() const {
  ParabolicMheOptions o;
  o.horizon = horizon;
  o.modes = modes;
  o.snapshot_stride = snapshot_stride;
  o.source_form = source_form;
  o.boundary_tail = boundary_tail;
  o.warmup_value = uhat0;
  o.solver = solver();
  return o;
}

std::size_t ScenarioConfig::total_steps() const {
  return static_cast<std::size_t>(std::llround(total_time / dt));
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n_points < 4) fail("grid.n_points must be at least 4");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("time.dt must be positive");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) fail("time.total must be positive");
  const double steps = total_time / dt;
  if (std::abs(steps - std::round(steps)) > 1e-6 * std::max(1.0, steps)) {
    fail("time.total must be an integer multiple of time.dt");
  }
  if (!(horizon > 0.0)) fail("mhe.T must be positive");
  if (!(total_time > horizon)) fail("time.total must exceed the horizon mhe.T");
  if (modes < 1) fail("mhe.N must be at least 1");
  if (snapshot_stride < 1) fail("mhe.snapshot_stride must be at least 1");
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level)) fail("noise.sigma2 must be >= 0");
  if (output_stride < 1 || metrics_stride < 1) fail("output/metrics strides must be >= 1");
  if (!(kernel_tol > 0.0) || kernel_max_iter < 1) fail("kernel.tol > 0 and kernel.max_iter >= 1");
  if (compare_phases < 1) fail("compare.phases must be at least 1");
  if (!(fit_span > 0.0)) fail("metrics.fit_span must be positive");
  if (!(error_floor >= 0.0)) fail("metrics.floor must be non-negative");
  if (!std::isfinite(uhat0)) fail("init.uhat0 must be finite");

  const Grid gr = grid();
  if (plant_class == PlantClass::hyperbolic) {
    if (horizon < 1.0) fail("mhe.T must be at least 1 for the hyperbolic estimator");
    if (dt > gr.dx() * (1.0 + 1e-12)) fail("time.dt must not exceed dx for the hyperbolic plant");
  } else {
    const ParabolicModel model(coefficients(), gr);
    if (dt > model.max_stable_dt() * (1.0 + 1e-12)) {
      fail("time.dt = " + format_double(dt) + " exceeds the explicit stability bound " +
           format_double(model.max_stable_dt()));
    }
    const double w = horizon / dt;
    if (std::abs(w - std::round(w)) > 1e-6) fail("mhe.T must be an integer multiple of time.dt");
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto end = pos == std::string_view::npos ? s.size() : pos;
    out.push_back(trim(s.substr(start, end - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("expected a finite number, got '" + s + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& s) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("expected an integer, got '" + s + "'");
  }
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("expected true or false, got '" + s + "'");
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& w : words(s)) out.push_back(to_double(w));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

// Raw key/value pairs of one coefficient block, resolved once all lines are read.
struct ScalarKeys {
  std::optional<std::string> preset, value, coeffs, amplitude, order;
};

struct BivariateKeys {
  std::optional<std::string> preset, value, terms;
};

ScalarFunction build_scalar(const ScalarKeys& k, const std::string& prefix,
                            const ScalarFunction& fallback) {
  if (!k.preset) {
    if (k.value || k.coeffs || k.amplitude || k.order) {
      throw ConfigError(prefix + ".preset is required when its parameters are given");
    }
    return fallback;
  }
  auto require = [&](const std::optional<std::string>& v, const char* key) -> const std::string& {
    if (!v) throw ConfigError(prefix + "." + key + " is required for preset " + *k.preset);
    return *v;
  };
  auto forbid = [&](const std::optional<std::string>& v, const char* key) {
    if (v) throw ConfigError(prefix + "." + key + " is not used by preset " + *k.preset);
  };
  if (*k.preset == "constant") {
    forbid(k.coeffs, "coeffs");
    forbid(k.amplitude, "amplitude");
    forbid(k.order, "order");
    return ScalarFunction::constant(to_double(require(k.value, "value")));
  }
  if (*k.preset == "polynomial") {
    forbid(k.value, "value");
    forbid(k.amplitude, "amplitude");
    forbid(k.order, "order");
    return ScalarFunction::polynomial(to_doubles(require(k.coeffs, "coeffs")));
  }
  if (*k.preset == "chebyshev") {
    forbid(k.value, "value");
    forbid(k.coeffs, "coeffs");
    return ScalarFunction::chebyshev(to_double(require(k.amplitude, "amplitude")),
                                     to_int<int>(require(k.order, "order")));
  }
  throw ConfigError(prefix + ".preset must be constant, polynomial or chebyshev");
}

BivariateFunction build_bivariate(const BivariateKeys& k, const std::string& prefix,
                                  const BivariateFunction& fallback) {
  if (!k.preset) {
    if (k.value || k.terms) throw ConfigError(prefix + ".preset is required");
    return fallback;
  }
  if (*k.preset == "constant") {
    if (k.terms) throw ConfigError(prefix + ".terms is not used by preset constant");
    if (!k.value) throw ConfigError(prefix + ".value is required");
    return BivariateFunction::constant(to_double(*k.value));
  }
  if (*k.preset == "polynomial") {
    if (k.value) throw ConfigError(prefix + ".value is not used by preset polynomial");
    if (!k.terms) throw ConfigError(prefix + ".terms is required");
    std::vector<PolyTerm> terms;
    for (const auto& group : split(*k.terms, ';')) {
      const auto w = words(group);
      if (w.size() != 3) throw ConfigError(prefix + ".terms entries are 'coeff px py'");
      terms.push_back({to_double(w[0]), to_int<int>(w[1]), to_int<int>(w[2])});
    }
    return BivariateFunction::polynomial(std::move(terms));
  }
  throw ConfigError(prefix + ".preset must be constant or polynomial");
}

void emit_scalar(std::ostream& out, const std::string& prefix, const ScalarFunction& fn) {
  switch (fn.kind()) {
    case ScalarFunction::Kind::constant:
      out << prefix << ".preset = constant\n" << prefix << ".value = " << format_double(fn.coeffs()[0]) << '\n';
      break;
    case ScalarFunction::Kind::polynomial:
      out << prefix << ".preset = polynomial\n" << prefix << ".coeffs = " << join(fn.coeffs()) << '\n';
      break;
    case ScalarFunction::Kind::chebyshev:
      out << prefix << ".preset = chebyshev\n"
          << prefix << ".amplitude = " << format_double(fn.amplitude()) << '\n'
          << prefix << ".order = " << fn.order() << '\n';
      break;
  }
}

void emit_bivariate(std::ostream& out, const std::string& prefix, const BivariateFunction& fn) {
  if (fn.kind() == BivariateFunction::Kind::constant) {
    out << prefix << ".preset = constant\n"
        << prefix << ".value = " << format_double(fn.terms()[0].coeff) << '\n';
    return;
  }
  out << prefix << ".preset = polynomial\n" << prefix << ".terms = ";
  for (std::size_t i = 0; i < fn.terms().size(); ++i) {
    const auto& t = fn.terms()[i];
    if (i) out << "; ";
    out << format_double(t.coeff) << ' ' << t.px << ' ' << t.py;
  }
  out << '\n';
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  ScalarKeys lambda, g;
  BivariateKeys f;
  std::map<std::string, int> seen;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!seen.emplace(key, line_no).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      if (key == "name") cfg.name = value;
      else if (key == "plant.class") {
        if (value == "hyperbolic") cfg.plant_class = PlantClass::hyperbolic;
        else if (value == "parabolic") cfg.plant_class = PlantClass::parabolic;
        else throw ConfigError("plant.class must be hyperbolic or parabolic");
      }
      else if (key == "plant.lambda.preset") lambda.preset = value;
      else if (key == "plant.lambda.value") lambda.value = value;
      else if (key == "plant.lambda.coeffs") lambda.coeffs = value;
      else if (key == "plant.lambda.amplitude") lambda.amplitude = value;
      else if (key == "plant.lambda.order") lambda.order = value;
      else if (key == "plant.g.preset") g.preset = value;
      else if (key == "plant.g.value") g.value = value;
      else if (key == "plant.g.coeffs") g.coeffs = value;
      else if (key == "plant.g.amplitude") g.amplitude = value;
      else if (key == "plant.g.order") g.order = value;
      else if (key == "plant.f.preset") f.preset = value;
      else if (key == "plant.f.value") f.value = value;
      else if (key == "plant.f.terms") f.terms = value;
      else if (key == "init.u0.preset") {
        if (value == "constant") cfg.u0.shape = InitialShape::constant;
        else if (value == "sine") cfg.u0.shape = InitialShape::sine;
        else if (value == "ramp") cfg.u0.shape = InitialShape::ramp;
        else throw ConfigError("init.u0.preset must be constant, sine or ramp");
      }
      else if (key == "init.u0.amplitude") cfg.u0.amplitude = to_double(value);
      else if (key == "init.uhat0") cfg.uhat0 = to_double(value);
      else if (key == "input.terms") {
        cfg.input.terms.clear();
        if (!value.empty() && value != "none") {
          for (const auto& group : split(value, ';')) {
            const auto v = to_doubles(group);
            if (v.size() != 3) throw ConfigError("input.terms entries are 'amplitude omega phase'");
            cfg.input.terms.push_back({v[0], v[1], v[2]});
          }
        }
      }
      else if (key == "grid.n_points") cfg.n_points = to_int<std::size_t>(value);
      else if (key == "time.dt") cfg.dt = to_double(value);
      else if (key == "time.total") cfg.total_time = to_double(value);
      else if (key == "mhe.T") cfg.horizon = to_double(value);
      else if (key == "mhe.N") cfg.modes = to_int<int>(value);
      else if (key == "mhe.snapshot_stride") cfg.snapshot_stride = to_int<std::size_t>(value);
      else if (key == "mhe.source_form") cfg.source_form = parse_source_form(value);
      else if (key == "mhe.boundary_tail") cfg.boundary_tail = to_bool(value);
      else if (key == "noise.sigma2") cfg.noise_level = to_double(value);
      else if (key == "noise.interpretation") {
        if (value == "variance") cfg.noise_interpretation = NoiseInterpretation::variance;
        else if (value == "stddev") cfg.noise_interpretation = NoiseInterpretation::stddev;
        else throw ConfigError("noise.interpretation must be variance or stddev");
      }
      else if (key == "rng.seed") cfg.seed = to_int<std::uint64_t>(value);
      else if (key == "output.stride") cfg.output_stride = to_int<std::size_t>(value);
      else if (key == "output.observer") cfg.output_observer = to_bool(value);
      else if (key == "metrics.stride") cfg.metrics_stride = to_int<std::size_t>(value);
      else if (key == "metrics.fit_span") cfg.fit_span = to_double(value);
      else if (key == "metrics.floor") cfg.error_floor = to_double(value);
      else if (key == "kernel.tol") cfg.kernel_tol = to_double(value);
      else if (key == "kernel.max_iter") cfg.kernel_max_iter = to_int<int>(value);
      else if (key == "compare.phases") cfg.compare_phases = to_int<std::size_t>(value);
      else if (key == "compare.refinements") cfg.compare_refinements = to_int<std::size_t>(value);
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.lambda = build_scalar(lambda, "plant.lambda", cfg.lambda);
  cfg.g = build_scalar(g, "plant.g", cfg.g);
  cfg.f = build_bivariate(f, "plant.f", cfg.f);
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "name = " << cfg.name << '\n';
  out << "plant.class = " << to_string(cfg.plant_class) << '\n';
  emit_scalar(out, "plant.lambda", cfg.lambda);
  emit_bivariate(out, "plant.f", cfg.f);
  emit_scalar(out, "plant.g", cfg.g);
  static constexpr const char* shapes[] = {"constant", "sine", "ramp"};
  out << "init.u0.preset = " << shapes[static_cast<int>(cfg.u0.shape)] << '\n';
  out << "init.u0.amplitude = " << format_double(cfg.u0.amplitude) << '\n';
  out << "init.uhat0 = " << format_double(cfg.uhat0) << '\n';
  out << "input.terms = ";
  if (cfg.input.terms.empty()) out << "none";
  for (std::size_t i = 0; i < cfg.input.terms.size(); ++i) {
    const auto& t = cfg.input.terms[i];
    if (i) out << "; ";
    out << format_double(t.amplitude) << ' ' << format_double(t.omega) << ' '
        << format_double(t.phase);
  }
  out << '\n';
  out << "grid.n_points = " << cfg.n_points << '\n';
  out << "time.dt = " << format_double(cfg.dt) << '\n';
  out << "time.total = " << format_double(cfg.total_time) << '\n';
  out << "mhe.T = " << format_double(cfg.horizon) << '\n';
  out << "mhe.N = " << cfg.modes << '\n';
  out << "mhe.snapshot_stride = " << cfg.snapshot_stride << '\n';
  out << "mhe.source_form = " << to_string(cfg.source_form) << '\n';
  out << "mhe.boundary_tail = " << (cfg.boundary_tail ? "true" : "false") << '\n';
  out << "noise.sigma2 = " << format_double(cfg.noise_level) << '\n';
  out << "noise.interpretation = "
      << (cfg.noise_interpretation == NoiseInterpretation::variance ? "variance" : "stddev") << '\n';
  out << "rng.seed = " << cfg.seed << '\n';
  out << "output.stride = " << cfg.output_stride << '\n';
  out << "output.observer = " << (cfg.output_observer ? "true" : "false") << '\n';
  out << "metrics.stride = " << cfg.metrics_stride << '\n';
  out << "metrics.fit_span = " << format_double(cfg.fit_span) << '\n';
  out << "metrics.floor = " << format_double(cfg.error_floor) << '\n';
  out << "kernel.tol = " << format_double(cfg.kernel_tol) << '\n';
  out << "kernel.max_iter = " << cfg.kernel_max_iter << '\n';
  out << "compare.phases = " << cfg.compare_phases << '\n';
  out << "compare.refinements = " << cfg.compare_refinements << '\n';
  return out.str();
}

namespace {

InputSignal fig1_input() {
  // 10 cos(2 pi t) + 7 sin(16 t)
  return InputSignal{{{10.0, 2.0 * std::numbers::pi, std::numbers::pi / 2.0}, {7.0, 16.0, 0.0}}};
}

ScenarioConfig fig1_desk() {
  ScenarioConfig c;
  c.name = "fig1-desk";
  c.plant_class = PlantClass::parabolic;
  c.lambda = ScalarFunction::chebyshev(21.0, 5);
  c.u0 = {InitialShape::constant, 10.0};
  c.uhat0 = 20.0;
  c.input = fig1_input();
  c.n_points = 101;
  c.dt = 2.5e-5;
  c.total_time = 2.0;
  c.horizon = 0.1;
  c.modes = 4;
  c.noise_level = 500.0;
  c.seed = 1;
  c.output_stride = 400;
  c.metrics_stride = 4;
  c.fit_span = 0.2;
  c.error_floor = 1e-3;
  return c;
}

ScenarioConfig fig1_paper() {
  ScenarioConfig c = fig1_desk();
  c.name = "fig1-paper";
  c.n_points = 1001;
  c.dt = 2.5e-7;
  c.snapshot_stride = 100;
  c.output_stride = 40000;
  c.metrics_stride = 400;
  return c;
}

ScenarioConfig hyperbolic_finite_time() {
  ScenarioConfig c;
  c.name = "hyperbolic-finite-time";
  c.plant_class = PlantClass::hyperbolic;
  c.f = BivariateFunction::constant(1.0);
  c.g = ScalarFunction::polynomial({0.0, 1.0});
  c.u0 = {InitialShape::ramp, 10.0};
  c.uhat0 = 0.0;
  // 2 cos(2 pi t) + sin(5 t)
  c.input = InputSignal{{{2.0, 2.0 * std::numbers::pi, std::numbers::pi / 2.0}, {1.0, 5.0, 0.0}}};
  c.n_points = 201;
  c.dt = 1.0 / 200.0;
  c.total_time = 2.0;
  c.horizon = 1.0;
  c.output_stride = 4;
  c.metrics_stride = 1;
  c.fit_span = 1.0;
  c.error_floor = 1e-6;
  return c;
}

ScenarioConfig parabolic_generic() {
  ScenarioConfig c;
  c.name = "parabolic-generic";
  c.plant_class = PlantClass::parabolic;
  c.lambda = ScalarFunction::polynomial({3.0, 0.0, 4.0});
  c.u0 = {InitialShape::constant, 10.0};
  c.uhat0 = 20.0;
  c.input = fig1_input();
  c.n_points = 51;
  c.dt = 1e-4;
  c.total_time = 1.0;
  c.horizon = 0.1;
  c.modes = 16;
  c.output_stride = 100;
  c.metrics_stride = 1;
  c.fit_span = 0.3;
  c.error_floor = 1e-3;
  return c;
}

ScenarioConfig parabolic_envelope() {
  ScenarioConfig c;
  c.name = "parabolic-envelope";
  c.plant_class = PlantClass::parabolic;
  c.lambda = ScalarFunction::constant(0.1);
  c.u0 = {InitialShape::sine, 10.0};
  c.uhat0 = 5.0;
  c.input = InputSignal{{{1.0, 2.0 * std::numbers::pi, 0.0}}};
  c.n_points = 101;
  c.dt = 2.5e-5;
  c.total_time = 1.0;
  c.horizon = 0.1;
  c.modes = 4;
  c.output_stride = 400;
  c.metrics_stride = 4;
  c.fit_span = 0.4;
  // N = 4 leaves a boundary-series remainder of about 3e-3 for this input.
  c.error_floor = 5e-3;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1-desk", "fig1-paper", "hyperbolic-finite-time", "parabolic-generic",
          "parabolic-envelope"};
}

ScenarioConfig preset(std::string_view name) {
  if (name == "fig1-desk") return fig1_desk();
  if (name == "fig1-paper") return fig1_paper();
  if (name == "hyperbolic-finite-time") return hyperbolic_finite_time();
  if (name == "parabolic-generic") return parabolic_generic();
  if (name == "parabolic-envelope") return parabolic_envelope();
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

ScenarioConfig refined(const ScenarioConfig& cfg, std::size_t levels) {
  ScenarioConfig c = cfg;
  for (std::size_t k = 0; k < levels; ++k) {
    c.n_points = 2 * (c.n_points - 1) + 1;
    const std::size_t factor = c.plant_class == PlantClass::hyperbolic ? 2 : 4;
    c.dt /= static_cast<double>(factor);
    c.output_stride *= factor;
    c.metrics_stride *= factor;
  }
  return c;
}

}  // namespace pdemhe
