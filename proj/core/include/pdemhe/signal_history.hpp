#pragma once

#include <cstddef>
#include <deque>
#include <utility>

#include "pdemhe/grid.hpp"

namespace pdemhe {

/// Time-ordered window of uniformly sampled scalar values (Y or U).
///
/// Holds ceil(span/dt) + 1 samples once warm, which covers [t - span, t] when
/// span is a multiple of dt. Pushing a sample whose timestamp is not exactly
/// one period after the newest raises WindowError.
class SignalHistory {
 public:
  struct Sample {
    double t;
    double value;
  };

  SignalHistory(double dt, double span);

  void push(double t, double value);

  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return samples_.empty(); }
  double dt() const noexcept { return dt_; }
  double span() const noexcept { return span_; }

  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  const Sample& oldest() const { return samples_.front(); }
  const Sample& newest() const { return samples_.back(); }

  /// True when [t_begin, t_end] lies inside the stored samples.
  bool covers(double t_begin, double t_end) const noexcept;

  /// Linear interpolation between the bracketing samples. Exact at stored
  /// timestamps. Throws WindowError outside the stored span.
  double interpolate(double t) const;

  /// Index of the newest sample with timestamp <= t (with a small tolerance).
  std::size_t index_at_or_before(double t) const;

  void clear() noexcept { samples_.clear(); }

 private:
  double time_tolerance() const noexcept { return 1e-7 * dt_; }

  double dt_;
  double span_;
  std::size_t capacity_;
  std::deque<Sample> samples_;
};

/// Time-ordered queue of profiles sampled every `dt * stride` seconds,
/// retaining at least `span` seconds of history.
class SnapshotQueue {
 public:
  SnapshotQueue(double dt, double span, std::size_t stride = 1);

  void push(double t, Profile profile);

  std::size_t size() const noexcept { return snapshots_.size(); }
  bool empty() const noexcept { return snapshots_.empty(); }
  double period() const noexcept { return period_; }
  std::size_t stride() const noexcept { return stride_; }

  /// Profile at time t, linearly interpolated between stored snapshots.
  /// Throws WindowError when t is not bracketed by stored snapshots.
  Profile at(double t) const;

  const std::pair<double, Profile>& operator[](std::size_t i) const { return snapshots_[i]; }

  void clear() noexcept { snapshots_.clear(); }

 private:
  double period_;
  std::size_t stride_;
  std::size_t capacity_;
  std::deque<std::pair<double, Profile>> snapshots_;
};

}  // namespace pdemhe
