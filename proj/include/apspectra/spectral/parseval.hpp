#pragma once

#include <span>
#include <vector>

#include "apspectra/spectral/fourier_bohr.hpp"

namespace apspectra {

/// A_n(|h|^2) for every window of the schedule.
inline MeanEstimate energy(const ComplexTrack& h, const FolnerSchedule& schedule, const MeanOptions& opts = {}) {
  RealTrack sq{h.origin, std::vector<double>(h.size())};
  for (std::size_t i = 0; i < h.size(); ++i) sq.values[i] = std::norm(h.values[i]);
  return partial_means(sq, schedule, opts);
}

/**
 * Per window: A_n(|h|^2) - sum_theta |A_n(h conj(xi_theta))|^2.
 *
 * Enlarging the frequency set can only lower each entry. Bessel's inequality
 * keeps entries nonnegative when the thetas are orthogonal on the window
 * (e.g. multiples of 1/|B_n|); well-separated off-grid thetas stay close.
 */
inline std::vector<double> parseval_defect(const ComplexTrack& h, std::span<const double> thetas,
                                           const FolnerSchedule& schedule) {
  const MeanEstimate e = energy(h, schedule);
  std::vector<double> defect = e.real_parts();
  for (double th : thetas) {
    const MeanEstimate c = fourier_bohr(h, th, schedule);
    for (std::size_t n = 0; n < defect.size(); ++n) defect[n] -= std::norm(c.partials[n].value);
  }
  return defect;
}

inline std::vector<double> parseval_defect(const Observable& f, const PointGen& x, std::span<const double> thetas,
                                           const FolnerSchedule& schedule) {
  return parseval_defect(observable_track(f, x, schedule.hull()), thetas, schedule);
}

}  // namespace apspectra
