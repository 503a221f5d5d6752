#include "pdemhe/signal_history.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdemhe/errors.hpp"

namespace pdemhe {

namespace {

std::size_t window_capacity(double span, double period) {
  return static_cast<std::size_t>(std::ceil(span / period - 1e-9)) + 1;
}

}  // namespace

SignalHistory::SignalHistory(double dt, double span) : dt_(dt), span_(span), capacity_(0) {
  if (!(dt > 0.0) || !(span > 0.0)) {
    throw ConfigError("signal history needs dt > 0 and span > 0");
  }
  capacity_ = window_capacity(span, dt);
}

void SignalHistory::push(double t, double value) {
  if (!std::isfinite(value) || !std::isfinite(t)) {
    throw NonFiniteError("non-finite sample pushed into signal history at t=" + std::to_string(t));
  }
  if (!samples_.empty()) {
    const double expected = samples_.back().t + dt_;
    if (std::abs(t - expected) > time_tolerance() * 10.0) {
      throw WindowError("history discontinuity: expected t=" + std::to_string(expected) +
                        ", got t=" + std::to_string(t));
    }
  }
  samples_.push_back({t, value});
  while (samples_.size() > capacity_) samples_.pop_front();
}

bool SignalHistory::covers(double t_begin, double t_end) const noexcept {
  if (samples_.empty()) return false;
  const double tol = time_tolerance();
  return t_begin >= samples_.front().t - tol && t_end <= samples_.back().t + tol;
}

std::size_t SignalHistory::index_at_or_before(double t) const {
  if (!covers(t, t)) {
    throw WindowError("time " + std::to_string(t) + " outside stored signal window");
  }
  const double rel = (t - samples_.front().t) / dt_;
  auto k = static_cast<std::ptrdiff_t>(std::floor(rel + 1e-7));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(samples_.size()) - 1);
  return static_cast<std::size_t>(k);
}

double SignalHistory::interpolate(double t) const {
  const std::size_t k = index_at_or_before(t);
  const Sample& a = samples_[k];
  if (std::abs(t - a.t) <= time_tolerance() || k + 1 == samples_.size()) return a.value;
  const Sample& b = samples_[k + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return a.value + w * (b.value - a.value);
}

SnapshotQueue::SnapshotQueue(double dt, double span, std::size_t stride)
    : period_(dt * static_cast<double>(stride)), stride_(stride), capacity_(0) {
  if (!(dt > 0.0) || !(span > 0.0) || stride == 0) {
    throw ConfigError("snapshot queue needs dt > 0, span > 0 and stride >= 1");
  }
  // One extra slot so that t - span stays bracketed while the newest
  // snapshot is being produced.
  capacity_ = window_capacity(span, period_) + 1;
}

void SnapshotQueue::push(double t, Profile profile) {
  if (!snapshots_.empty()) {
    const double expected = snapshots_.back().first + period_;
    if (std::abs(t - expected) > 1e-6 * period_) {
      throw WindowError("snapshot discontinuity: expected t=" + std::to_string(expected) +
                        ", got t=" + std::to_string(t));
    }
    require_same_grid(snapshots_.back().second.grid(), profile.grid(), "snapshot queue");
  }
  snapshots_.emplace_back(t, std::move(profile));
  while (snapshots_.size() > capacity_) snapshots_.pop_front();
}

Profile SnapshotQueue::at(double t) const {
  const double tol = 1e-7 * period_;
  if (snapshots_.empty() || t < snapshots_.front().first - tol ||
      t > snapshots_.back().first + tol) {
    throw WindowError("no snapshot available at t=" + std::to_string(t));
  }
  const double rel = (t - snapshots_.front().first) / period_;
  auto k = static_cast<std::size_t>(std::max(0.0, std::floor(rel + 1e-7)));
  k = std::min(k, snapshots_.size() - 1);
  const auto& [ta, pa] = snapshots_[k];
  if (std::abs(t - ta) <= tol || k + 1 == snapshots_.size()) return pa;
  const auto& [tb, pb] = snapshots_[k + 1];
  const double w = (t - ta) / (tb - ta);
  std::vector<double> v(pa.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pa[i] + w * (pb[i] - pa[i]);
  return Profile(pa.grid(), std::move(v));
}

}  // namespace pdemhe
