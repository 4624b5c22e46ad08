#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "apspectra/core/error.hpp"

namespace apspectra {

using Complex = std::complex<double>;

/// Half-open integer interval [start, start + length).
struct Window {
  std::int64_t start = 0;
  std::int64_t length = 1;

  std::int64_t end() const noexcept { return start + length; }
  std::int64_t last() const noexcept { return start + length - 1; }
  Window shifted(std::int64_t s) const noexcept { return {start + s, length}; }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Closed range of shifts [lo, hi].
struct ShiftRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  static ShiftRange symmetric(std::int64_t budget) { return {-budget, budget}; }
};

/**
 * Samples of a function on a contiguous block of integers [origin, origin + size).
 *
 * This is the finite map t -> value every estimator consumes. Tracks are
 * immutable once built by convention; nothing in the library mutates a track
 * it did not create.
 */
template <typename T>
struct Track {
  std::int64_t origin = 0;
  std::vector<T> values;

  Track() = default;
  Track(std::int64_t first, std::vector<T> v) : origin(first), values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  std::int64_t first() const noexcept { return origin; }
  std::int64_t last() const noexcept { return origin + static_cast<std::int64_t>(values.size()) - 1; }

  bool covers(std::int64_t a, std::int64_t b) const noexcept {
    return a > b || (!values.empty() && a >= first() && b <= last());
  }
  bool covers(const Window& w) const noexcept { return covers(w.start, w.last()); }

  /// Throws MissingSamples naming the first uncovered coordinate of [a, b].
  void require(std::int64_t a, std::int64_t b) const {
    if (covers(a, b)) return;
    if (values.empty() || a < first() || a > last()) throw MissingSamples(a);
    throw MissingSamples(last() + 1);
  }
  void require(const Window& w) const { require(w.start, w.last()); }

  const T& operator()(std::int64_t t) const { return values[static_cast<std::size_t>(t - origin)]; }
  T& operator()(std::int64_t t) { return values[static_cast<std::size_t>(t - origin)]; }

  std::span<const T> view(std::int64_t a, std::int64_t b) const {
    require(a, b);
    return std::span<const T>(values).subspan(static_cast<std::size_t>(a - origin),
                                              static_cast<std::size_t>(b - a + 1));
  }
};

using ComplexTrack = Track<Complex>;
using RealTrack = Track<double>;

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

/// Pointwise modulus |h|.
template <typename T>
RealTrack modulus(const Track<T>& h) {
  RealTrack out{h.origin, std::vector<double>(h.size())};
  for (std::size_t i = 0; i < h.size(); ++i) out.values[i] = std::abs(h.values[i]);
  return out;
}

template <typename T>
double sup_abs(const Track<T>& h) {
  double s = 0.0;
  for (const auto& v : h.values) s = std::max(s, static_cast<double>(std::abs(v)));
  return s;
}

inline ComplexTrack to_complex(const RealTrack& h) {
  ComplexTrack out{h.origin, std::vector<Complex>(h.size())};
  for (std::size_t i = 0; i < h.size(); ++i) out.values[i] = h.values[i];
  return out;
}

/// Builds a track by evaluating `fn(t)` on [a, b].
template <typename Fn>
auto tabulate(std::int64_t a, std::int64_t b, Fn&& fn) {
  using T = std::decay_t<decltype(fn(a))>;
  Track<T> out;
  out.origin = a;
  if (b >= a) out.values.reserve(static_cast<std::size_t>(b - a + 1));
  for (std::int64_t t = a; t <= b; ++t) out.values.push_back(fn(t));
  return out;
}

}  // namespace apspectra
