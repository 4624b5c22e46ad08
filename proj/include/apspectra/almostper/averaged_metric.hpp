#pragma once

#include <algorithm>
#include <cstdint>

#include "apspectra/core/mean.hpp"
#include "apspectra/systems/metric.hpp"
#include "apspectra/systems/point.hpp"

namespace apspectra {

/**
 * s -> d(s.x, (t+s).x) for s in [lo, hi], from letters of x covering
 * [lo - K, hi + K] and the same range moved by t.
 */
inline RealTrack orbit_mismatch(const LetterWindow& letters, std::int64_t t, const CylinderMetric& metric,
                                std::int64_t lo, std::int64_t hi) {
  const std::int64_t a = lo - metric.K, b = hi + metric.K;
  if (a < letters.first() || b > letters.last() || a + t < letters.first() || b + t > letters.last())
    throw MissingSamples(a + t < letters.first() || a < letters.first() ? std::min(a, a + t) : std::max(b, b + t));
  Track<std::uint8_t> e{a, std::vector<std::uint8_t>(static_cast<std::size_t>(b - a + 1))};
  for (std::int64_t j = a; j <= b; ++j) e(j) = letters(j) != letters(j + t) ? 1 : 0;
  return weighted_mismatch(e, metric, lo, hi);
}

/// Letters of x on [lo - K - |t|, hi + K + |t|].
inline LetterWindow orbit_letters(const PointGen& x, std::int64_t t_abs, const CylinderMetric& metric,
                                  std::int64_t lo, std::int64_t hi) {
  return x.window(lo - metric.K - t_abs, hi + metric.K + t_abs);
}

inline RealTrack orbit_mismatch(const PointGen& x, std::int64_t t, const CylinderMetric& metric, std::int64_t lo,
                                std::int64_t hi) {
  const std::int64_t reach = t < 0 ? -t : t;
  return orbit_mismatch(orbit_letters(x, reach, metric, lo, hi), t, metric, lo, hi);
}

/// Partial means of s -> d(s.x, (t+s).x) along the schedule; the tail max estimates D(x, t.x).
inline MeanEstimate averaged_D(const PointGen& x, std::int64_t t, const FolnerSchedule& schedule,
                               const CylinderMetric& metric = CylinderMetric{}, const MeanOptions& opts = {}) {
  const Window h = schedule.hull();
  return partial_means(orbit_mismatch(x, t, metric, h.start, h.last()), schedule, opts);
}

/// D_n(x, t.x): uniform mean of the same mismatch track over B + s, s in `shifts`.
inline UniformMean averaged_Dn(const PointGen& x, std::int64_t t, const Window& base, const ShiftRange& shifts,
                               const CylinderMetric& metric = CylinderMetric{}) {
  if (shifts.empty()) throw EmptyShiftRange();
  const RealTrack m = orbit_mismatch(x, t, metric, base.start + shifts.lo, base.last() + shifts.hi);
  return uniform_mean(m, base, shifts);
}

inline UniformMean averaged_Dn(const PointGen& x, std::int64_t t, const FolnerSchedule& schedule, std::size_t n,
                               const ShiftRange& shifts, const CylinderMetric& metric = CylinderMetric{}) {
  return averaged_Dn(x, t, schedule.window(n), shifts, metric);
}

/// Density of {s : d(s.x, (t+s).x) >= delta} along the schedule.
inline MeanEstimate superlevel_density(const PointGen& x, std::int64_t t, double delta, const FolnerSchedule& schedule,
                                       const CylinderMetric& metric = CylinderMetric{},
                                       const MeanOptions& opts = {}) {
  if (!(delta > 0.0)) throw InvalidArgument("delta", "must be positive");
  const Window h = schedule.hull();
  RealTrack level = orbit_mismatch(x, t, metric, h.start, h.last());
  for (auto& v : level.values) v = v >= delta ? 1.0 : 0.0;
  return partial_means(level, schedule, opts);
}

}  // namespace apspectra
