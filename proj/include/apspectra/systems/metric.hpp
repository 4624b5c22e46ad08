#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/track.hpp"
#include "apspectra/systems/point.hpp"

namespace apspectra {

/**
 * Weighted-mismatch cylinder metric
 *
 *   d(x, y) = (1/C) sum_{|k| <= K} 2^{-|k|} [x(k) != y(k)],  C = sum 2^{-|k|}.
 *
 * Every partial sum is a dyadic rational with at most K+1 fractional bits,
 * so sums are exact in double and only the final division rounds.
 */
struct CylinderMetric {
  int K = 16;

  CylinderMetric() = default;
  explicit CylinderMetric(int k) : K(k) {
    if (K < 1 || K > 40) throw InvalidArgument("K", "metric truncation must lie in [1, 40]");
  }

  double weight(int k) const { return std::ldexp(1.0, -std::abs(k)); }
  double normalizer() const { return 3.0 - std::ldexp(1.0, 1 - K); }
};

/// Mismatch indicator of two points on [a, b], compared by symbol.
inline Track<std::uint8_t> mismatch_indicator(const PointGen& x, const PointGen& y, std::int64_t a, std::int64_t b) {
  Track<std::uint8_t> e{a, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max<std::int64_t>(b - a + 1, 0)))};
  const LetterWindow lx = x.window(a, b), ly = y.window(a, b);
  const bool same_alphabet = x.alphabet() == y.alphabet();
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    const bool differ = same_alphabet ? lx.letters[i] != ly.letters[i]
                                      : x.alphabet().symbol(lx.letters[i]) != y.alphabet().symbol(ly.letters[i]);
    e.values[i] = differ ? 1 : 0;
  }
  return e;
}

/**
 * m(s) = d(s.x, s.y) for s in [lo, hi] from the mismatch indicator e of x, y,
 * which must cover [lo - K, hi + K].
 *
 * Two geometric recursions replace the (2K+1)-term convolution, carried in
 * integers scaled by 2^K:
 *   R(s) = sum_{k=0..K} 2^(K-k) e(s+k)   = 2^K e(s) + (R(s+1) - e(s+K+1)) / 2
 *   L(s) = sum_{k=1..K} 2^(K-k) e(s-k)   = 2^(K-1) e(s-1) + (L(s-1) - e(s-K-1)) / 2
 * Both halvings are exact, and (R + L) 2^-K is the same dyadic rational as
 * the direct sum, so m agrees bit for bit with metric_d.
 */
inline RealTrack weighted_mismatch(const Track<std::uint8_t>& e, const CylinderMetric& metric, std::int64_t lo,
                                   std::int64_t hi) {
  const int K = metric.K;
  RealTrack m{lo, std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)))};
  if (hi < lo) return m;
  e.require(lo - K, hi + K);
  const std::size_t n = m.values.size();
  const std::uint8_t* ep = e.values.data() + (lo - e.origin);  // ep[i] = e(lo + i)

  std::vector<std::int64_t> right(n);
  std::int64_t r = 0;
  for (int k = 0; k <= K; ++k) r += static_cast<std::int64_t>(ep[n - 1 + static_cast<std::size_t>(k)]) << (K - k);
  right[n - 1] = r;
  for (std::size_t i = n - 1; i-- > 0;)
    right[i] = r = (static_cast<std::int64_t>(ep[i]) << K) + ((r - ep[i + static_cast<std::size_t>(K) + 1]) >> 1);

  std::int64_t l = 0;
  for (int k = 1; k <= K; ++k) l += static_cast<std::int64_t>(*(ep - k)) << (K - k);
  const double c = metric.normalizer(), scale = std::ldexp(1.0, -K);
  m.values[0] = static_cast<double>(right[0] + l) * scale / c;
  for (std::size_t i = 1; i < n; ++i) {
    const std::int64_t j = static_cast<std::int64_t>(i);
    l = (static_cast<std::int64_t>(ep[j - 1]) << (K - 1)) + ((l - ep[j - 1 - K]) >> 1);
    m.values[i] = static_cast<double>(right[i] + l) * scale / c;
  }
  return m;
}

/// d(x, y) on the window [-K, K].
inline double metric_d(const PointGen& x, const PointGen& y, const CylinderMetric& metric = CylinderMetric{}) {
  const Track<std::uint8_t> e = mismatch_indicator(x, y, -metric.K, metric.K);
  double sum = 0.0;
  for (int k = -metric.K; k <= metric.K; ++k) sum += e(k) ? metric.weight(k) : 0.0;
  return sum / metric.normalizer();
}

inline double metric_d(const PointGen& x, const PointGen& y, int K) { return metric_d(x, y, CylinderMetric{K}); }

/**
 * max over |s| <= S of d(s.x, s.y): a lower bound for the sup metric
 * d_bar(x, y), nondecreasing in the horizon S.
 */
inline double sup_metric_lb(const PointGen& x, const PointGen& y, std::int64_t horizon,
                            const CylinderMetric& metric = CylinderMetric{}) {
  if (horizon < 0) throw InvalidArgument("horizon", "must be nonnegative");
  const Track<std::uint8_t> e = mismatch_indicator(x, y, -horizon - metric.K, horizon + metric.K);
  const RealTrack m = weighted_mismatch(e, metric, -horizon, horizon);
  return *std::max_element(m.values.begin(), m.values.end());
}

inline double sup_metric_lb(const PointGen& x, const PointGen& y, std::int64_t horizon, int K) {
  return sup_metric_lb(x, y, horizon, CylinderMetric{K});
}

}  // namespace apspectra
