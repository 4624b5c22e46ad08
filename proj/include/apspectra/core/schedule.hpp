#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/track.hpp"

namespace apspectra {

enum class ScheduleKind { Intervals, Dyadic, Alternating, Custom };

inline const char* to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Intervals: return "intervals";
    case ScheduleKind::Dyadic: return "dyadic";
    case ScheduleKind::Alternating: return "alternating";
    case ScheduleKind::Custom: return "custom";
  }
  return "?";
}

/**
 * A Folner sequence truncated to finitely many windows B_1, ..., B_n.
 *
 * Indices are 1-based to match the usual B_n notation; `window(n)` for
 * n in [1, size()].
 *
 *   Intervals    B_n = [0, base*n)
 *   Dyadic       B_n = [1, 2^n]
 *   Alternating  B_n = [0, n] for even n, [-n, 0) for odd n
 *   Custom       caller supplied, lengths strictly increasing
 *
 * Alternating lengths go 1, 3, 3, 5, 5, ... and are only nondecreasing.
 */
class FolnerSchedule {
 public:
  static FolnerSchedule intervals(std::int64_t base, std::size_t count) {
    if (base <= 0) throw InvalidArgument("schedule.base", "must be positive");
    std::vector<Window> w;
    for (std::size_t n = 1; n <= count; ++n) w.push_back({0, base * static_cast<std::int64_t>(n)});
    return FolnerSchedule(ScheduleKind::Intervals, std::move(w), base);
  }

  static FolnerSchedule dyadic(std::size_t count) {
    if (count > 40) throw InvalidArgument("schedule.count", "dyadic schedules stop at n=40");
    std::vector<Window> w;
    for (std::size_t n = 1; n <= count; ++n) w.push_back({1, std::int64_t{1} << n});
    return FolnerSchedule(ScheduleKind::Dyadic, std::move(w), 0);
  }

  static FolnerSchedule alternating(std::size_t count) {
    std::vector<Window> w;
    for (std::size_t n = 1; n <= count; ++n) {
      const auto m = static_cast<std::int64_t>(n);
      w.push_back(n % 2 == 0 ? Window{0, m + 1} : Window{-m, m});
    }
    return FolnerSchedule(ScheduleKind::Alternating, std::move(w), 0);
  }

  static FolnerSchedule custom(std::vector<Window> windows) {
    return FolnerSchedule(ScheduleKind::Custom, std::move(windows), 0);
  }

  ScheduleKind kind() const noexcept { return kind_; }
  std::int64_t base() const noexcept { return base_; }
  std::size_t size() const noexcept { return windows_.size(); }
  const std::vector<Window>& windows() const noexcept { return windows_; }

  const Window& window(std::size_t n) const {
    if (n == 0 || n > windows_.size())
      throw InvalidArgument("n", "window index " + std::to_string(n) + " outside [1, " +
                                     std::to_string(windows_.size()) + "]");
    return windows_[n - 1];
  }

  /// Smallest interval containing B_1..B_{n_max}.
  Window hull(std::size_t n_max) const {
    window(n_max);
    std::int64_t lo = windows_[0].start, hi = windows_[0].last();
    for (std::size_t i = 1; i < n_max; ++i) {
      lo = std::min(lo, windows_[i].start);
      hi = std::max(hi, windows_[i].last());
    }
    return {lo, hi - lo + 1};
  }
  Window hull() const { return hull(size()); }

  /// Short text identifying the schedule, embedded in reports.
  std::string fingerprint() const {
    std::string s = to_string(kind_);
    if (kind_ == ScheduleKind::Intervals) s += ":base=" + std::to_string(base_);
    s += ":n=" + std::to_string(size());
    if (!windows_.empty())
      s += ":last=[" + std::to_string(windows_.back().start) + "," +
           std::to_string(windows_.back().end()) + ")";
    return s;
  }

 private:
  FolnerSchedule(ScheduleKind kind, std::vector<Window> windows, std::int64_t base)
      : kind_(kind), windows_(std::move(windows)), base_(base) {
    if (windows_.empty()) throw InvalidArgument("schedule.count", "needs at least one window");
    for (std::size_t i = 0; i < windows_.size(); ++i) {
      if (windows_[i].length <= 0) throw InvalidArgument("schedule.windows", "window lengths must be positive");
      if (i == 0) continue;
      const bool ok = kind_ == ScheduleKind::Alternating ? windows_[i].length >= windows_[i - 1].length
                                                         : windows_[i].length > windows_[i - 1].length;
      if (!ok) throw InvalidArgument("schedule.windows", "window lengths must increase");
    }
  }

  ScheduleKind kind_;
  std::vector<Window> windows_;
  std::int64_t base_;
};

}  // namespace apspectra
