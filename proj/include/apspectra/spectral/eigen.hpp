#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "apspectra/core/parallel.hpp"
#include "apspectra/spectral/fourier_bohr.hpp"

namespace apspectra {

struct EigenOptions {
  std::vector<std::int64_t> shifts{1, 2, 3, 5, 8};  // t for the residual |e(t.x) - xi(t) e(x)|
  MeanOptions mean;
};

struct EigenSample {
  Complex value;
  VerdictKind verdict = VerdictKind::Undecided;
  bool flagged = false;  // Oscillating (value zeroed) or Undecided (kept, excluded from spread)
};

struct EigenReport {
  double theta = 0.0;
  std::vector<EigenSample> samples;
  double eigen_residual = 0.0;   // max over points and shifts of |e(t.x) - xi(t) e(x)|
  double modulus_spread = 0.0;   // max - min of |e| over unflagged points
  std::size_t excluded = 0;      // Undecided points left out of the spread
};

namespace detail {

/// Limit if converged, 0 if oscillating, last partial (flagged) otherwise.
inline EigenSample eigen_value(const MeanEstimate& est) {
  switch (est.verdict_kind()) {
    case VerdictKind::Converged:
      return {std::get<Converged>(est.verdict).limit, VerdictKind::Converged, false};
    case VerdictKind::Oscillating:
      return {Complex{}, VerdictKind::Oscillating, true};
    default:
      return {est.last(), VerdictKind::Undecided, true};
  }
}

}  // namespace detail

/**
 * Samples e_{f,theta}(x) = A(f_x conj(xi_theta)) at each point, with the
 * eigen-equation residual and the spread of |e| across points.
 */
inline EigenReport eigenfunction_sample(const Observable& f, double theta, const std::vector<PointGen>& points,
                                        const FolnerSchedule& schedule, const EigenOptions& opts = {}) {
  if (points.empty()) throw InvalidArgument("points", "must not be empty");
  EigenReport rep;
  rep.theta = reduce_theta(theta);
  rep.samples.resize(points.size());
  std::vector<double> residual(points.size(), 0.0);
  const Character xi(theta);
  parallel_for(points.size(), [&](std::size_t i) {
    rep.samples[i] = detail::eigen_value(fourier_bohr(f, points[i], theta, schedule, opts.mean));
    for (std::int64_t t : opts.shifts) {
      const EigenSample moved = detail::eigen_value(fourier_bohr(f, points[i].shifted(t), theta, schedule, opts.mean));
      residual[i] = std::max(residual[i], std::abs(moved.value - xi(t) * rep.samples[i].value));
    }
  });
  rep.eigen_residual = *std::max_element(residual.begin(), residual.end());

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : rep.samples) {
    if (s.verdict == VerdictKind::Undecided) {
      ++rep.excluded;
      continue;
    }
    lo = std::min(lo, std::abs(s.value));
    hi = std::max(hi, std::abs(s.value));
  }
  rep.modulus_spread = hi >= lo ? hi - lo : 0.0;
  return rep;
}

struct WeylUniformity {
  double max = 0.0;
  double min = 0.0;
  double spread = 0.0;
};

/// Moduli of (1/|B|) sum_{t in B+s} f_x(t) conj(xi(t)) over the shifts; small spread is Weyl-uniformity evidence.
inline WeylUniformity weyl_uniform_fb(const Observable& f, const PointGen& x, double theta, const Window& base,
                                      const ShiftRange& shifts) {
  if (shifts.empty()) throw EmptyShiftRange();
  const ComplexTrack h = demodulate(observable_track(f, x, base.start + shifts.lo, base.last() + shifts.hi),
                                    Character(theta));
  const detail::PrefixSums<Complex> prefix(h);
  WeylUniformity u{0.0, std::numeric_limits<double>::infinity(), 0.0};
  for (std::int64_t s = shifts.lo; s <= shifts.hi; ++s) {
    const double m = std::abs(prefix.mean(base.shifted(s)));
    u.max = std::max(u.max, m);
    u.min = std::min(u.min, m);
  }
  u.spread = u.max - u.min;
  return u;
}

}  // namespace apspectra
