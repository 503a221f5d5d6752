#include "pdemhe/parabolic_mhe.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "pdemhe/csv.hpp"
#include "pdemhe/errors.hpp"
#include "pdemhe/transforms.hpp"

namespace pdemhe {

std::string_view to_string(SourceForm form) noexcept {
  return form == SourceForm::printed ? "printed" : "intertwined";
}

SourceForm parse_source_form(std::string_view text) {
  if (text == "intertwined") return SourceForm::intertwined;
  if (text == "printed") return SourceForm::printed;
  throw ConfigError("unknown source form '" + std::string(text) +
                    "' (expected intertwined or printed)");
}

namespace {

constexpr double pi = std::numbers::pi;

std::size_t horizon_steps(double horizon, double dt) {
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ConfigError("horizon and dt must be positive");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6) {
    throw ConfigError("horizon must be an integer multiple of dt (T/dt = " +
                      std::to_string(ratio) + ")");
  }
  return static_cast<std::size_t>(rounded);
}

std::size_t validated_modes(int modes) {
  if (modes < 1) throw ConfigError("series truncation order must be at least 1");
  return static_cast<std::size_t>(modes);
}

const Grid& validated_grid(const Grid& grid) {
  if (grid.size() < 4) throw ConfigError("parabolic estimator needs at least 4 grid points");
  return grid;
}

}  // namespace

ParabolicMhe::ParabolicMhe(const CoefficientSet& coeffs, const Grid& grid, double dt,
                           ParabolicMheOptions options)
    : grid_(validated_grid(grid)),
      dt_(dt),
      options_(options),
      window_(horizon_steps(options.horizon, dt)),
      k_(solve_parabolic_kernel(coeffs, grid, options.solver)),
      l_(invert_kernel(k_, options.solver)),
      k11_table_(k_(grid.size() - 1, grid.size() - 1)),
      k11_quad_(parabolic_diagonal_values(coeffs, grid).back()),
      y_hist_(dt, options.horizon + dt),
      u_hist_(dt, options.horizon + dt),
      snapshots_(dt, options.horizon, options.snapshot_stride) {
  const std::size_t modes = validated_modes(options_.modes);
  if (!std::isfinite(options_.warmup_value)) throw ConfigError("warm-up value must be finite");
  if (std::abs(k11_table_ - k11_quad_) > 1e-9 * (1.0 + std::abs(k11_quad_))) {
    throw Error("kernel corner k(1,1) disagrees with -1/2 int lambda: " +
                std::to_string(k11_table_) + " vs " + std::to_string(k11_quad_));
  }

  const std::size_t n = grid_.size();
  const double h = grid_.dx();
  const double horizon = static_cast<double>(window_) * dt_;
  rates_.resize(modes);
  decay_step_.resize(modes);
  decay_horizon_.resize(modes);
  decay_exit_.resize(modes);
  phi_.resize(modes * n);
  c_.assign(modes, 0.0);
  d_.assign(modes, 0.0);
  b_.resize(modes);
  tail_ = grid_.nodes();
  jy_.assign(modes, 0.0);
  ju_.assign(modes, 0.0);

  std::vector<double> row(n);
  for (std::size_t m = 0; m < modes; ++m) {
    const double nn = static_cast<double>(m + 1);
    const double sign = (m + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^n
    rates_[m] = nn * nn * pi * pi;
    decay_step_[m] = std::exp(-rates_[m] * dt_);
    decay_horizon_[m] = std::exp(-rates_[m] * horizon);
    decay_exit_[m] = std::exp(-rates_[m] * (horizon + dt_));
    b_[m] = -pi * std::numbers::sqrt2 * nn * sign;
    const double x_projection = -std::numbers::sqrt2 * sign / (nn * pi);

    double* phi = &phi_[m * n];
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = std::numbers::sqrt2 * std::sin(nn * pi * grid_.x(i));
      tail_[i] -= x_projection * phi[i];
    }

    for (std::size_t j = 0; j < n; ++j) row[j] = l_(n - 1, j) * phi[j];
    c_[m] = trapezoid_integral(row, h);

    if (options_.source_form == SourceForm::printed) {
      d_[m] = c_[m] * k11_table_;
    } else {
      // d/dx at x = 1 of C(x) = int_0^x l(x,y) phi(y) dy.
      auto partial = [&](std::size_t i) {
        for (std::size_t j = 0; j <= i; ++j) row[j] = l_(i, j) * phi[j];
        return trapezoid_integral(std::span<const double>(row.data(), i + 1), h);
      };
      d_[m] = (3.0 * partial(n - 1) - 4.0 * partial(n - 2) + partial(n - 3)) / (2.0 * h);
    }
  }
}

double ParabolicMhe::time() const {
  if (y_hist_.empty()) throw WindowError("parabolic estimator has no samples yet");
  return y_hist_.newest().t;
}

Profile ParabolicMhe::warmup_profile(double u) const {
  Profile p = Profile::constant(grid_, options_.warmup_value);
  p[0] = 0.0;
  p[grid_.size() - 1] = u;
  return p;
}

void ParabolicMhe::update(double t, double y, double u) {
  y_hist_.push(t, y);
  u_hist_.push(t, u);
  const std::size_t step = steps_++;
  const std::size_t modes = rates_.size();
  if (step > 0) {
    const std::size_t last = y_hist_.size() - 1;
    const double y_prev = y_hist_[last - 1].value;
    const double u_prev = u_hist_[last - 1].value;
    const double half = 0.5 * dt_;
    const bool exiting = step >= window_ + 1;
    for (std::size_t m = 0; m < modes; ++m) {
      const double e = decay_step_[m];
      jy_[m] = e * jy_[m] + half * (e * y_prev + y);
      ju_[m] = e * ju_[m] + half * (e * u_prev + u);
      if (exiting) {
        // The segment [t - T - dt, t - T] has just left the window.
        jy_[m] -= half * (decay_exit_[m] * y_hist_[0].value + decay_horizon_[m] * y_hist_[1].value);
        ju_[m] -= half * (decay_exit_[m] * u_hist_[0].value + decay_horizon_[m] * u_hist_[1].value);
      }
    }
  }
  if (step % options_.snapshot_stride == 0) snapshots_.push(t, estimate_target());
}

std::vector<double> ParabolicMhe::direct_window_integral(const SignalHistory& h) const {
  const std::size_t count = std::min(h.size(), window_ + 1);
  const std::size_t first = h.size() - count;
  std::vector<double> out(rates_.size(), 0.0);
  if (count < 2) return out;
  std::vector<double> vals(count);
  for (std::size_t m = 0; m < rates_.size(); ++m) {
    for (std::size_t q = 0; q < count; ++q) {
      const double age = static_cast<double>(count - 1 - q) * dt_;
      vals[q] = std::exp(-rates_[m] * age) * h[first + q].value;
    }
    out[m] = trapezoid_integral(vals, dt_);
  }
  return out;
}

std::vector<double> ParabolicMhe::direct_window_integral_y() const {
  return direct_window_integral(y_hist_);
}

std::vector<double> ParabolicMhe::direct_window_integral_u() const {
  return direct_window_integral(u_hist_);
}

Profile ParabolicMhe::assemble_target(const Profile& snapshot) const {
  const std::size_t n = grid_.size();
  const std::size_t modes = rates_.size();
  const double h = grid_.dx();
  const double u_now = u_hist_.newest().value;
  std::vector<double> w(n, 0.0);
  if (options_.boundary_tail) {
    for (std::size_t i = 0; i < n; ++i) w[i] = u_now * tail_[i];
  }
  for (std::size_t m = 0; m < modes; ++m) {
    const double* phi = &phi_[m * n];
    double inner = 0.5 * (snapshot[0] * phi[0] + snapshot[n - 1] * phi[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) inner += snapshot[i] * phi[i];
    inner *= h;
    const double coef =
        decay_horizon_[m] * inner + c_[m] * jy_[m] + (b_[m] - d_[m]) * ju_[m];
    for (std::size_t i = 0; i < n; ++i) w[i] += coef * phi[i];
  }
  return Profile(grid_, std::move(w));
}

Profile ParabolicMhe::estimate_target() const {
  const double t = time();
  if (!engaged()) {
    return inverse_transform_parabolic(warmup_profile(u_hist_.newest().value), l_);
  }
  return assemble_target(snapshots_.at(t - static_cast<double>(window_) * dt_));
}

Profile ParabolicMhe::estimate() const {
  if (!engaged()) return warmup_profile(u_hist_.newest().value);
  return forward_transform_parabolic(estimate_target(), k_);
}

namespace {

constexpr std::string_view checkpoint_magic = "pdemhe-parabolic-mhe-checkpoint";
constexpr int checkpoint_version = 1;

void write_vector(std::ostream& out, std::string_view tag, const std::vector<double>& v) {
  out << tag << ' ' << v.size();
  for (double x : v) out << ' ' << format_double(x);
  out << '\n';
}

void write_history(std::ostream& out, std::string_view tag, const SignalHistory& h) {
  out << tag << ' ' << h.size() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) {
    out << format_double(h[i].t) << ' ' << format_double(h[i].value) << '\n';
  }
}

void expect(std::istream& in, std::string_view token) {
  std::string got;
  if (!(in >> got) || got != token) {
    throw ConfigError("malformed checkpoint: expected '" + std::string(token) + "', got '" +
                      got + "'");
  }
}

template <typename T>
T read_value(std::istream& in, std::string_view what) {
  T v{};
  if (!(in >> v)) throw ConfigError("malformed checkpoint: cannot read " + std::string(what));
  return v;
}

template <typename T>
void expect_value(std::istream& in, std::string_view tag, const T& expected) {
  expect(in, tag);
  const T got = read_value<T>(in, tag);
  if (!(got == expected)) {
    std::ostringstream msg;
    msg << "checkpoint " << tag << " mismatch: file has " << got << ", estimator has "
        << expected;
    throw ConfigError(msg.str());
  }
}

std::vector<double> read_vector(std::istream& in, std::string_view tag, std::size_t size) {
  expect(in, tag);
  const auto count = read_value<std::size_t>(in, tag);
  if (count != size) throw ConfigError("checkpoint " + std::string(tag) + " has wrong length");
  std::vector<double> v(count);
  for (auto& x : v) x = read_value<double>(in, tag);
  return v;
}

void read_history(std::istream& in, std::string_view tag, SignalHistory& h) {
  expect(in, tag);
  const auto count = read_value<std::size_t>(in, tag);
  if (count > h.capacity()) throw ConfigError("checkpoint history exceeds capacity");
  h.clear();
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = read_value<double>(in, tag);
    const auto v = read_value<double>(in, tag);
    h.push(t, v);
  }
}

}  // namespace

void ParabolicMhe::save(std::ostream& out) const {
  out << checkpoint_magic << ' ' << checkpoint_version << '\n';
  out << "n_points " << grid_.size() << '\n';
  out << "dt " << format_double(dt_) << '\n';
  out << "horizon " << format_double(options_.horizon) << '\n';
  out << "modes " << options_.modes << '\n';
  out << "stride " << options_.snapshot_stride << '\n';
  out << "source " << to_string(options_.source_form) << '\n';
  out << "tail " << (options_.boundary_tail ? 1 : 0) << '\n';
  out << "warmup " << format_double(options_.warmup_value) << '\n';
  out << "steps " << steps_ << '\n';
  write_history(out, "y", y_hist_);
  write_history(out, "u", u_hist_);
  write_vector(out, "jy", jy_);
  write_vector(out, "ju", ju_);
  out << "snapshots " << snapshots_.size() << '\n';
  for (std::size_t s = 0; s < snapshots_.size(); ++s) {
    const auto& [t, p] = snapshots_[s];
    out << format_double(t);
    for (double v : p.values()) out << ' ' << format_double(v);
    out << '\n';
  }
  out << "end\n";
}

void ParabolicMhe::restore(std::istream& in) {
  expect(in, checkpoint_magic);
  if (read_value<int>(in, "version") != checkpoint_version) {
    throw ConfigError("unsupported checkpoint version");
  }
  expect_value(in, "n_points", grid_.size());
  expect_value(in, "dt", dt_);
  expect_value(in, "horizon", options_.horizon);
  expect_value(in, "modes", options_.modes);
  expect_value(in, "stride", options_.snapshot_stride);
  expect_value(in, "source", std::string(to_string(options_.source_form)));
  expect_value(in, "tail", options_.boundary_tail ? 1 : 0);
  expect_value(in, "warmup", options_.warmup_value);
  expect(in, "steps");
  const auto steps = read_value<std::size_t>(in, "steps");

  SignalHistory y_hist = y_hist_;
  SignalHistory u_hist = u_hist_;
  read_history(in, "y", y_hist);
  read_history(in, "u", u_hist);
  auto jy = read_vector(in, "jy", jy_.size());
  auto ju = read_vector(in, "ju", ju_.size());

  SnapshotQueue snapshots = snapshots_;
  snapshots.clear();
  expect(in, "snapshots");
  const auto count = read_value<std::size_t>(in, "snapshots");
  for (std::size_t s = 0; s < count; ++s) {
    const auto t = read_value<double>(in, "snapshot time");
    std::vector<double> v(grid_.size());
    for (auto& x : v) x = read_value<double>(in, "snapshot value");
    snapshots.push(t, Profile(grid_, std::move(v)));
  }
  expect(in, "end");

  y_hist_ = std::move(y_hist);
  u_hist_ = std::move(u_hist);
  jy_ = std::move(jy);
  ju_ = std::move(ju);
  snapshots_ = std::move(snapshots);
  steps_ = steps;
}

}  // namespace pdemhe
