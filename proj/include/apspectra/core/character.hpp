#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "apspectra/core/track.hpp"

namespace apspectra {

/// Reduces a frequency to [0, 1).
inline double reduce_theta(double theta) {
  double r = theta - std::floor(theta);
  return r >= 1.0 ? 0.0 : r;
}

/// Circular distance between two frequencies.
inline double circle_distance(double a, double b) {
  const double d = reduce_theta(a - b);
  return std::min(d, 1.0 - d);
}

/// The character t -> exp(2 pi i theta t) of the integers.
struct Character {
  double theta = 0.0;

  Character() = default;
  explicit Character(double th) : theta(reduce_theta(th)) {}

  /// Phase is reduced mod 1 in extended precision before the trig call,
  /// so large |t| does not lose the fractional part.
  Complex operator()(std::int64_t t) const {
    const long double x = static_cast<long double>(theta) * static_cast<long double>(t);
    const long double frac = x - std::floor(x);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(frac);
    return {std::cos(angle), std::sin(angle)};
  }

  Complex conj_at(std::int64_t t) const { return std::conj((*this)(t)); }
};

/// h(t) * conj(xi(t)) pointwise.
inline ComplexTrack demodulate(const ComplexTrack& h, const Character& xi) {
  ComplexTrack out{h.origin, std::vector<Complex>(h.size())};
  for (std::size_t i = 0; i < h.size(); ++i)
    out.values[i] = h.values[i] * xi.conj_at(h.origin + static_cast<std::int64_t>(i));
  return out;
}

}  // namespace apspectra
