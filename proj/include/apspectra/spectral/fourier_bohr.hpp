#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "apspectra/core/character.hpp"
#include "apspectra/core/mean.hpp"
#include "apspectra/spectral/fft.hpp"
#include "apspectra/systems/observable.hpp"

namespace apspectra {

/// Partial averages of h(t) conj(xi_theta(t)) along the schedule.
inline MeanEstimate fourier_bohr(const ComplexTrack& h, double theta, const FolnerSchedule& schedule,
                                 const MeanOptions& opts = {}) {
  const Window hull = schedule.hull();
  h.require(hull);
  MeanEstimate est = partial_means(demodulate(h, Character(theta)), schedule, opts);
  // Tolerances scale with sup|f_x|, not with the demodulated track (same modulus).
  assign_verdict(est, detail::sup_over(h, hull), opts);
  return est;
}

inline MeanEstimate fourier_bohr(const Observable& f, const PointGen& x, double theta, const FolnerSchedule& schedule,
                                 const MeanOptions& opts = {}) {
  return fourier_bohr(observable_track(f, x, schedule.hull()), theta, schedule, opts);
}

/**
 * (1/N) sum_{t=start}^{start+N-1} h(t) exp(-2 pi i theta t).
 *
 * The phase advances by a fixed rotation and is re-seeded from the exact
 * character every 256 steps, keeping the error near machine precision
 * without a trig call per sample.
 */
inline Complex window_average(const ComplexTrack& h, double theta, std::int64_t start, std::int64_t n) {
  if (n <= 0) throw InvalidArgument("N", "window length must be positive");
  h.require(start, start + n - 1);
  const Character xi(theta);
  const Complex rot = xi.conj_at(1);
  const double rr = rot.real(), ri = rot.imag();
  const Complex* v = h.values.data() + (start - h.origin);
  double acc_r = 0.0, acc_i = 0.0;
  for (std::int64_t base = 0; base < n; base += 256) {
    const Complex z0 = xi.conj_at(start + base);
    double zr = z0.real(), zi = z0.imag();
    const std::int64_t stop = std::min<std::int64_t>(n, base + 256);
    for (std::int64_t t = base; t < stop; ++t) {
      const double hr = v[t].real(), hi = v[t].imag();
      acc_r += hr * zr - hi * zi;
      acc_i += hr * zi + hi * zr;
      const double nr = zr * rr - zi * ri;
      zi = zr * ri + zi * rr;
      zr = nr;
    }
  }
  return Complex(acc_r, acc_i) / static_cast<double>(n);
}

enum class TransformMethod { Direct, FastTransform };

inline const char* to_string(TransformMethod m) { return m == TransformMethod::Direct ? "direct" : "fft"; }

/**
 * c_j = (1/N) sum_{t<N} f_x(t) exp(-2 pi i j t / N) on the grid theta_j = j/N.
 *
 * `samples` keeps f_x on [0, N) for refinement. When both methods were run
 * `cross_check_residual` holds max_j |fast_j - direct_j| / sup|f_x|; it is
 * negative when no cross-check was made.
 */
struct FourierBohrGrid {
  std::size_t N = 0;
  std::vector<Complex> amplitudes;
  TransformMethod method = TransformMethod::FastTransform;
  double cross_check_residual = -1.0;
  double sup_norm = 0.0;
  ComplexTrack samples;

  double theta(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(N); }

  std::size_t argmax() const {
    std::size_t best = 0;
    for (std::size_t j = 1; j < amplitudes.size(); ++j)
      if (std::abs(amplitudes[j]) > std::abs(amplitudes[best])) best = j;
    return best;
  }
  double max_amplitude() const { return amplitudes.empty() ? 0.0 : std::abs(amplitudes[argmax()]); }
};

namespace detail {

inline std::vector<Complex> direct_dft(std::span<const Complex> x) {
  const std::size_t n = x.size();
  std::vector<Complex> twiddle(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    twiddle[m] = {std::cos(a), std::sin(a)};
  }
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const Complex w = twiddle[idx];
      re += x[t].real() * w.real() - x[t].imag() * w.imag();
      im += x[t].real() * w.imag() + x[t].imag() * w.real();
      idx += j;
      if (idx >= n) idx -= n;
    }
    out[j] = {re, im};
  }
  return out;
}

}  // namespace detail

inline FourierBohrGrid fourier_bohr_grid(ComplexTrack samples, std::size_t N, TransformMethod method,
                                         bool cross_check = false) {
  if (N < 2) throw InvalidArgument("N", "grid size must be at least 2");
  samples.require(0, static_cast<std::int64_t>(N) - 1);
  FourierBohrGrid g;
  g.N = N;
  g.method = method;
  const auto x = samples.view(0, static_cast<std::int64_t>(N) - 1);
  for (const auto& v : x) g.sup_norm = std::max(g.sup_norm, std::abs(v));

  std::vector<Complex> fast, direct;
  if (method == TransformMethod::FastTransform || cross_check) fast = fft::forward(x);
  if (method == TransformMethod::Direct || cross_check) direct = detail::direct_dft(x);
  const double inv = 1.0 / static_cast<double>(N);
  for (auto& v : fast) v *= inv;
  for (auto& v : direct) v *= inv;
  if (cross_check) {
    double r = 0.0;
    for (std::size_t j = 0; j < N; ++j) r = std::max(r, std::abs(fast[j] - direct[j]));
    g.cross_check_residual = g.sup_norm > 0.0 ? r / g.sup_norm : r;
  }
  g.amplitudes = method == TransformMethod::FastTransform ? std::move(fast) : std::move(direct);
  if (samples.first() != 0 || samples.size() != N)
    samples = ComplexTrack{0, std::vector<Complex>(x.begin(), x.end())};
  g.samples = std::move(samples);
  return g;
}

inline FourierBohrGrid fourier_bohr_grid(const Observable& f, const PointGen& x, std::size_t N,
                                         TransformMethod method = TransformMethod::FastTransform,
                                         bool cross_check = false) {
  if (N < 2) throw InvalidArgument("N", "grid size must be at least 2");
  return fourier_bohr_grid(observable_track(f, x, 0, static_cast<std::int64_t>(N) - 1), N, method, cross_check);
}

}  // namespace apspectra
