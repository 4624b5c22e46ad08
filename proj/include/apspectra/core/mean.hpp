#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <type_traits>
#include <utility>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/schedule.hpp"
#include "apspectra/core/track.hpp"

namespace apspectra {

/// Tail length and tolerances used to read a verdict off a trajectory of partial means.
struct MeanOptions {
  std::size_t tail = 5;
  double convergence_rel = 1e-3;  // relative to sup|h|
  double oscillation_rel = 0.1;   // relative to sup|h|
};

struct Converged {
  Complex limit;
  double residual = 0.0;
};
struct Oscillating {
  double liminf = 0.0;
  double limsup = 0.0;
};
struct Undecided {};

using Verdict = std::variant<Converged, Oscillating, Undecided>;

enum class VerdictKind { Converged, Oscillating, Undecided };

inline VerdictKind kind_of(const Verdict& v) { return static_cast<VerdictKind>(v.index()); }

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Converged: return "converged";
    case VerdictKind::Oscillating: return "oscillating";
    case VerdictKind::Undecided: return "undecided";
  }
  return "?";
}

struct Partial {
  std::size_t n = 0;
  Complex value;
};

/**
 * Trajectory of window averages a_1, ..., a_n plus the verdict read off its
 * last `tail` entries. Estimators always hand back the whole trajectory so a
 * caller can tell a finite-scale artifact from convergence.
 */
struct MeanEstimate {
  std::vector<Partial> partials;
  Verdict verdict = Undecided{};
  double tail_spread = 0.0;
  double scale = 1.0;  // sup|h| used to scale the tolerances
  std::size_t tail = 5;

  VerdictKind verdict_kind() const { return kind_of(verdict); }
  bool converged() const { return verdict_kind() == VerdictKind::Converged; }

  Complex last() const { return partials.empty() ? Complex{} : partials.back().value; }

  /// Largest real part among the last `tail` partials: the finite stand-in for limsup.
  double tail_max() const {
    double m = -std::numeric_limits<double>::infinity();
    const std::size_t k = std::min(tail, partials.size());
    for (std::size_t i = partials.size() - k; i < partials.size(); ++i) m = std::max(m, partials[i].value.real());
    return partials.empty() ? 0.0 : m;
  }

  std::vector<double> real_parts() const {
    std::vector<double> out;
    out.reserve(partials.size());
    for (const auto& p : partials) out.push_back(p.value.real());
    return out;
  }
};

/**
 * Classifies the tail of a trajectory.
 *
 * Converged when every pair in the tail is within convergence_rel*scale.
 * Oscillating when no tail entry is within oscillation_rel*scale of all the
 * others. Anything in between is Undecided.
 */
inline void assign_verdict(MeanEstimate& est, double sup_norm, const MeanOptions& opts) {
  est.scale = sup_norm > 0.0 ? sup_norm : 1.0;
  est.tail = std::max<std::size_t>(opts.tail, 1);
  const auto& p = est.partials;
  const std::size_t k = std::min(est.tail, p.size());
  const std::size_t begin = p.size() - k;

  double spread = 0.0;
  bool every_entry_far = k >= 2;
  const double osc_tol = opts.oscillation_rel * est.scale;
  for (std::size_t i = begin; i < p.size(); ++i) {
    double farthest = 0.0;
    for (std::size_t j = begin; j < p.size(); ++j) farthest = std::max(farthest, std::abs(p[i].value - p[j].value));
    spread = std::max(spread, farthest);
    if (farthest < osc_tol) every_entry_far = false;
  }
  est.tail_spread = spread;

  if (p.size() < 2) {
    est.verdict = Undecided{};
  } else if (spread < opts.convergence_rel * est.scale) {
    est.verdict = Converged{p.back().value, spread};
  } else if (every_entry_far) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = begin; i < p.size(); ++i) {
      lo = std::min(lo, p[i].value.real());
      hi = std::max(hi, p[i].value.real());
    }
    est.verdict = Oscillating{lo, hi};
  } else {
    est.verdict = Undecided{};
  }
}

namespace detail {

/// Extended-precision prefix sums over a track: sums[i] = sum of the first i values.
template <typename T>
class PrefixSums {
  static constexpr bool kComplex = !std::is_arithmetic_v<T>;

 public:
  explicit PrefixSums(const Track<T>& h) : origin_(h.origin), re_(h.size() + 1, 0.0L) {
    if constexpr (kComplex) im_.assign(h.size() + 1, 0.0L);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Complex v = h.values[i];
      re_[i + 1] = re_[i] + v.real();
      if constexpr (kComplex) im_[i + 1] = im_[i] + v.imag();
    }
  }

  /// Sum over the window, which must lie inside the track.
  Complex sum(const Window& w) const {
    const auto [a, b] = bounds(w);
    return {static_cast<double>(re_[b] - re_[a]), static_cast<double>(imag_diff(a, b))};
  }

  /// Real part of the window sum in extended precision.
  long double real_sum(const Window& w) const {
    const auto [a, b] = bounds(w);
    return re_[b] - re_[a];
  }

  /// Window average, divided before rounding to double.
  Complex mean(const Window& w) const {
    const auto [a, b] = bounds(w);
    const auto len = static_cast<long double>(w.length);
    return {static_cast<double>((re_[b] - re_[a]) / len), static_cast<double>(imag_diff(a, b) / len)};
  }

 private:
  std::pair<std::size_t, std::size_t> bounds(const Window& w) const {
    return {static_cast<std::size_t>(w.start - origin_), static_cast<std::size_t>(w.end() - origin_)};
  }
  long double imag_diff(std::size_t a, std::size_t b) const {
    if constexpr (kComplex) return im_[b] - im_[a];
    return 0.0L;
  }

  std::int64_t origin_;
  std::vector<long double> re_;
  std::vector<long double> im_;
};

template <typename T>
double sup_over(const Track<T>& h, const Window& w) {
  double s = 0.0;
  for (std::int64_t t = w.start; t < w.end(); ++t) s = std::max(s, static_cast<double>(std::abs(h(t))));
  return s;
}

}  // namespace detail

/**
 * Window averages (1/|B_n|) sum_{t in B_n} h(t) for n = 1..n_max.
 *
 * Throws MissingSamples naming the first uncovered coordinate.
 */
template <typename T>
MeanEstimate partial_means(const Track<T>& h, const FolnerSchedule& schedule, std::size_t n_max,
                           const MeanOptions& opts = {}) {
  if (n_max == 0 || n_max > schedule.size())
    throw InvalidArgument("n_max", "must lie in [1, " + std::to_string(schedule.size()) + "]");
  for (std::size_t n = 1; n <= n_max; ++n) h.require(schedule.window(n));

  const detail::PrefixSums<T> prefix(h);
  MeanEstimate est;
  est.partials.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Window& w = schedule.window(n);
    est.partials.push_back({n, prefix.mean(w)});
  }
  assign_verdict(est, detail::sup_over(h, schedule.hull(n_max)), opts);
  return est;
}

template <typename T>
MeanEstimate partial_means(const Track<T>& h, const FolnerSchedule& schedule, const MeanOptions& opts = {}) {
  return partial_means(h, schedule, schedule.size(), opts);
}

/// Partial means of |h|; their tail maximum is the finite proxy of the upper mean.
template <typename T>
MeanEstimate upper_mean_estimate(const Track<T>& h, const FolnerSchedule& schedule, std::size_t n_max,
                                 const MeanOptions& opts = {}) {
  return partial_means(modulus(h), schedule, n_max, opts);
}

/// Upper mean proxy: max of the last `tail` partial means of |h|.
template <typename T>
double upper_mean(const Track<T>& h, const FolnerSchedule& schedule, std::size_t n_max,
                  const MeanOptions& opts = {}) {
  return std::max(0.0, upper_mean_estimate(h, schedule, n_max, opts).tail_max());
}

template <typename T>
double upper_mean(const Track<T>& h, const FolnerSchedule& schedule, const MeanOptions& opts = {}) {
  return upper_mean(h, schedule, schedule.size(), opts);
}

struct UniformMean {
  double value = 0.0;
  std::int64_t argmax_shift = 0;
  ShiftRange shifts;
};

/**
 * sup over s in `shifts` of (1/|B|) sum_{t in B+s} h(t), the uniform mean on
 * one window. Reports the smallest shift attaining the maximum.
 */
inline UniformMean uniform_mean(const RealTrack& h, const Window& base, const ShiftRange& shifts) {
  if (shifts.empty()) throw EmptyShiftRange();
  h.require(base.start + shifts.lo, base.last() + shifts.hi);
  const detail::PrefixSums<double> prefix(h);
  // Division by |B| is monotone, so maximize sums and divide once.
  long double top = -std::numeric_limits<long double>::infinity();
  for (std::int64_t s = shifts.lo; s <= shifts.hi; ++s) top = std::max(top, prefix.real_sum(base.shifted(s)));
  UniformMean best{prefix.mean(base.shifted(shifts.lo)).real(), shifts.lo, shifts};
  const double value = static_cast<double>(top / static_cast<long double>(base.length));
  for (std::int64_t s = shifts.lo; s <= shifts.hi; ++s) {
    if (prefix.real_sum(base.shifted(s)) < top - std::abs(top) * 1e-12L) continue;
    if (prefix.mean(base.shifted(s)).real() == value) {
      best.value = value;
      best.argmax_shift = s;
      break;
    }
  }
  return best;
}

inline UniformMean uniform_mean(const RealTrack& h, const FolnerSchedule& schedule, std::size_t n,
                                const ShiftRange& shifts) {
  return uniform_mean(h, schedule.window(n), shifts);
}

/// Largest shift range for which every B_n + s (n <= n_max) lies inside the track.
template <typename T>
ShiftRange covered_shifts(const Track<T>& h, const FolnerSchedule& schedule, std::size_t n_max) {
  if (h.empty()) throw MissingSamples(schedule.window(1).start);
  ShiftRange r{std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Window& w = schedule.window(n);
    r.lo = std::max(r.lo, h.first() - w.start);
    r.hi = std::min(r.hi, h.last() - w.last());
  }
  if (r.empty()) throw EmptyShiftRange();
  return r;
}

struct StabilizationOptions {
  std::optional<ShiftRange> shifts;  // default: covered_shifts over the whole schedule
  double slack_factor = 2.0;         // slack = factor * sup|h| * |B_N| / |B_N'|
};

struct StabilizationReport {
  std::size_t first_n_below = 0;
  bool all_later_below = false;
  double margin = 0.0;
  std::vector<double> uniform_means;  // M_n(|h|) for n = 1..size
  ShiftRange shifts;
};

/**
 * Finds the first N with M_N(|h|) < epsilon and checks that every later
 * scanned N' stays below epsilon plus the boundary slack. Throws NeverBelow
 * when no scanned N qualifies.
 */
template <typename T>
StabilizationReport stabilization_check(const Track<T>& h, const FolnerSchedule& schedule, double epsilon,
                                        const StabilizationOptions& opts = {}) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon", "must be positive");
  const RealTrack a = modulus(h);
  StabilizationReport rep;
  rep.shifts = opts.shifts ? *opts.shifts : covered_shifts(a, schedule, schedule.size());
  const double sup = sup_abs(a);
  for (std::size_t n = 1; n <= schedule.size(); ++n)
    rep.uniform_means.push_back(uniform_mean(a, schedule.window(n), rep.shifts).value);

  const auto it = std::find_if(rep.uniform_means.begin(), rep.uniform_means.end(),
                               [&](double m) { return m < epsilon; });
  if (it == rep.uniform_means.end())
    throw NeverBelow(epsilon, *std::min_element(rep.uniform_means.begin(), rep.uniform_means.end()));

  rep.first_n_below = static_cast<std::size_t>(it - rep.uniform_means.begin()) + 1;
  const double first_len = static_cast<double>(schedule.window(rep.first_n_below).length);
  rep.all_later_below = true;
  rep.margin = epsilon - *it;
  for (std::size_t n = rep.first_n_below + 1; n <= schedule.size(); ++n) {
    const double slack = opts.slack_factor * sup * first_len / static_cast<double>(schedule.window(n).length);
    const double room = epsilon + slack - rep.uniform_means[n - 1];
    rep.margin = std::min(rep.margin, room);
    if (room <= 0.0) rep.all_later_below = false;
  }
  return rep;
}

}  // namespace apspectra
