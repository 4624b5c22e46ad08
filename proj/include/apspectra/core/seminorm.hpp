#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "apspectra/core/mean.hpp"

namespace apspectra {

enum class SeminormKind { Sup, MeanBar, WeylBar };

/**
 * A shift-invariant, monotone, unit-normalized seminorm on sampled tracks.
 *
 *   Sup      max |h| over the samples
 *   MeanBar  upper mean of |h| along the schedule
 *   WeylBar  max over the last `tail` windows of the uniform mean of |h|,
 *            with shifts |s| <= shift_budget
 */
struct AdmissibleSeminorm {
  SeminormKind kind = SeminormKind::Sup;
  std::optional<FolnerSchedule> schedule;
  std::int64_t shift_budget = 0;
  MeanOptions mean;

  static AdmissibleSeminorm sup() { return {}; }

  static AdmissibleSeminorm mean_bar(FolnerSchedule s, MeanOptions opts = {}) {
    return {SeminormKind::MeanBar, std::move(s), 0, opts};
  }

  /// Default budget: shifts with |s| <= 4 |B_{n_max}|.
  static AdmissibleSeminorm weyl_bar(FolnerSchedule s, std::optional<std::int64_t> budget = std::nullopt,
                                     MeanOptions opts = {}) {
    const std::int64_t b = budget.value_or(4 * s.windows().back().length);
    return {SeminormKind::WeylBar, std::move(s), b, opts};
  }

  /// Coordinates a track must cover for `seminorm_eval` to succeed.
  Window required_domain() const {
    if (kind == SeminormKind::Sup || !schedule) return {0, 1};
    const Window h = schedule->hull();
    if (kind == SeminormKind::MeanBar) return h;
    return {h.start - shift_budget, h.length + 2 * shift_budget};
  }
};

template <typename T>
double seminorm_eval(const AdmissibleSeminorm& N, const Track<T>& h) {
  switch (N.kind) {
    case SeminormKind::Sup:
      return sup_abs(h);
    case SeminormKind::MeanBar:
      if (!N.schedule) throw InvalidArgument("seminorm.schedule", "MeanBar needs a schedule");
      return upper_mean(h, *N.schedule, N.mean);
    case SeminormKind::WeylBar: {
      if (!N.schedule) throw InvalidArgument("seminorm.schedule", "WeylBar needs a schedule");
      const RealTrack a = modulus(h);
      const std::size_t size = N.schedule->size();
      const std::size_t k = std::min(std::max<std::size_t>(N.mean.tail, 1), size);
      const ShiftRange shifts = ShiftRange::symmetric(N.shift_budget);
      double best = 0.0;
      for (std::size_t n = size - k + 1; n <= size; ++n)
        best = std::max(best, uniform_mean(a, N.schedule->window(n), shifts).value);
      return best;
    }
  }
  return 0.0;
}

}  // namespace apspectra
