#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "apspectra/core/parallel.hpp"
#include "apspectra/spectral/fourier_bohr.hpp"

namespace apspectra {

struct DetectOptions {
  double threshold_rel = 0.02;    // peaks need |c| >= threshold_rel * sup|f|
  std::size_t refine_steps = 30;  // golden-section iterations on a bracket of width 2/N
  double persistence = 0.5;       // every stage must show |A| >= persistence * threshold
  double stability = 0.2;         // and | |A_stage| - |A_final| | <= stability * |A_final|
};

struct DetectedFrequency {
  double grid_theta = 0.0;
  double theta = 0.0;              // refined
  Complex amplitude;               // Fourier-Bohr average at the refined theta over the largest stage
  std::vector<double> stage_moduli;  // |A_N(theta)| for each stage N
};

namespace detail {

inline double golden_maximize(const std::function<double(double)>& g, double lo, double hi, std::size_t steps,
                              double& best_value) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double gc = g(c), gd = g(d);
  for (std::size_t i = 0; i < steps; ++i) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(d);
    }
  }
  if (gc >= gd) {
    best_value = gc;
    return c;
  }
  best_value = gd;
  return d;
}

}  // namespace detail

/**
 * Frequencies of f_x from grids of increasing size N_1 < ... < N_m.
 *
 * 1. Candidates are local maxima of |c_j| at the largest stage with
 *    |c_j| >= threshold.
 * 2. Each is refined by golden-section maximization of |A_N(theta)| over
 *    [theta_j - 1/N, theta_j + 1/N], and the amplitude re-estimated there.
 * 3. A candidate survives only if its average is present and stable at every
 *    stage: an atom has a limiting average, while continuous spectral mass
 *    yields averages that keep shrinking as the window grows.
 * 4. Survivors closer than 1/N to a stronger one are dropped.
 *
 * The result is sorted by decreasing |amplitude|.
 */
inline std::vector<DetectedFrequency> detect_frequencies(std::span<const FourierBohrGrid> stages,
                                                         const DetectOptions& opts = {}) {
  if (stages.size() < 2) throw InvalidArgument("stages", "need at least two grid stages");
  for (std::size_t s = 1; s < stages.size(); ++s)
    if (stages[s].N <= stages[s - 1].N) throw InvalidArgument("stages", "grid sizes must increase");
  const FourierBohrGrid& top = stages.back();
  const std::size_t N = top.N;
  const double threshold = opts.threshold_rel * top.sup_norm;
  if (threshold <= 0.0) return {};

  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < N; ++j) {
    const double v = std::abs(top.amplitudes[j]);
    if (v < threshold) continue;
    const double left = std::abs(top.amplitudes[(j + N - 1) % N]);
    const double right = std::abs(top.amplitudes[(j + 1) % N]);
    if (v >= left && v > right) peaks.push_back(j);
  }

  const auto n_top = static_cast<std::int64_t>(N);
  std::vector<std::optional<DetectedFrequency>> refined(peaks.size());
  parallel_for(peaks.size(), [&](std::size_t i) {
    const double center = top.theta(peaks[i]);
    const auto modulus_at = [&](double th) { return std::abs(window_average(top.samples, th, 0, n_top)); };
    double best = std::abs(top.amplitudes[peaks[i]]);
    double theta = center, g = 0.0;
    const double cand = detail::golden_maximize(modulus_at, center - 1.0 / static_cast<double>(N),
                                                center + 1.0 / static_cast<double>(N), opts.refine_steps, g);
    if (g > best) theta = cand;
    theta = reduce_theta(theta);

    DetectedFrequency d{center, theta, window_average(top.samples, theta, 0, n_top), {}};
    const double final_mod = std::abs(d.amplitude);
    for (const auto& st : stages) {
      const double m = std::abs(window_average(top.samples, theta, 0, static_cast<std::int64_t>(st.N)));
      d.stage_moduli.push_back(m);
      if (m < opts.persistence * threshold) return;
      if (std::abs(m - final_mod) > opts.stability * final_mod) return;
    }
    refined[i] = std::move(d);
  });

  std::vector<DetectedFrequency> found;
  for (auto& r : refined)
    if (r) found.push_back(std::move(*r));
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return std::abs(a.amplitude) > std::abs(b.amplitude);
  });
  std::vector<DetectedFrequency> kept;
  const double resolution = 1.0 / static_cast<double>(N);
  for (auto& f : found) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return circle_distance(k.theta, f.theta) < resolution;
    });
    if (!clash) kept.push_back(std::move(f));
  }
  return kept;
}

}  // namespace apspectra
