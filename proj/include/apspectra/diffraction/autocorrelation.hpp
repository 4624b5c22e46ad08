#pragma once

#include <vector>

#include "apspectra/core/mean.hpp"
#include "apspectra/core/parallel.hpp"
#include "apspectra/diffraction/comb.hpp"

namespace apspectra {

/**
 * Empirical orbit autocorrelation eta(k) = A(w(.) conj(w(. - k))) for
 * |k| <= K_max. Only k >= 0 is computed; eta(-k) is the conjugate, so
 * Hermitian symmetry holds exactly at every stage.
 */
struct AutocorrEstimate {
  std::size_t K_max = 0;
  std::vector<MeanEstimate> per_lag;  // k = 0..K_max along the schedule
  std::int64_t window_length = 0;      // |B| of the last stage
  std::string schedule;

  /// Final-stage value at lag k, negative lags by conjugation.
  Complex eta(std::int64_t k) const {
    const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
    const Complex v = per_lag.at(idx).last();
    return k < 0 ? std::conj(v) : v;
  }

  /// Stage n (1-based) value at lag k.
  Complex eta(std::int64_t k, std::size_t n) const {
    const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
    const Complex v = per_lag.at(idx).partials.at(n - 1).value;
    return k < 0 ? std::conj(v) : v;
  }

  /// Final-stage values for k = -K_max..K_max.
  std::vector<Complex> values() const {
    std::vector<Complex> out;
    const auto K = static_cast<std::int64_t>(K_max);
    for (std::int64_t k = -K; k <= K; ++k) out.push_back(eta(k));
    return out;
  }
};

inline AutocorrEstimate autocorrelation(const WeightedComb& comb, std::size_t K_max, const FolnerSchedule& schedule,
                                        const MeanOptions& opts = {}) {
  const Window hull = schedule.hull();
  const auto K = static_cast<std::int64_t>(K_max);
  const ComplexTrack w = comb.track(hull.start - K, hull.last());
  AutocorrEstimate est;
  est.K_max = K_max;
  est.per_lag.resize(K_max + 1);
  est.window_length = schedule.windows().back().length;
  est.schedule = schedule.fingerprint();
  parallel_for(K_max + 1, [&](std::size_t k) {
    const auto lag = static_cast<std::int64_t>(k);
    ComplexTrack prod{hull.start, std::vector<Complex>(static_cast<std::size_t>(hull.length))};
    for (std::int64_t t = hull.start; t <= hull.last(); ++t) prod(t) = w(t) * std::conj(w(t - lag));
    est.per_lag[k] = partial_means(prod, schedule, opts);
  });
  return est;
}

}  // namespace apspectra
