#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "apspectra/core/character.hpp"
#include "apspectra/diffraction/autocorrelation.hpp"

namespace apspectra {

enum class Taper { None, Triangular };

inline double taper_weight(Taper taper, std::int64_t k, std::size_t K_max) {
  if (taper == Taper::None) return 1.0;
  return 1.0 - static_cast<double>(k < 0 ? -k : k) / static_cast<double>(K_max + 1);
}

struct DensityEstimate {
  std::vector<double> thetas;
  std::vector<double> values;
  Taper taper = Taper::Triangular;
  double min_value = 0.0;
  bool negative_density = false;  // untapered output dipped below -0.05 eta(0)
};

/**
 * density(theta_j) = Re sum_{|k| <= K_max} taper(k) eta(k) exp(-2 pi i theta_j k)
 * on theta_j = j/M. The triangular (Fejer) taper keeps the output
 * nonnegative whenever eta is positive definite.
 */
inline DensityEstimate diffraction_density(const AutocorrEstimate& eta, Taper taper, std::size_t M) {
  if (M < 2 * eta.K_max || M < 2) throw InvalidArgument("grid", "needs M >= 2 K_max");
  const auto K = static_cast<std::int64_t>(eta.K_max);
  std::vector<Complex> tapered;
  for (std::int64_t k = -K; k <= K; ++k) tapered.push_back(taper_weight(taper, k, eta.K_max) * eta.eta(k));

  DensityEstimate out;
  out.taper = taper;
  out.thetas.resize(M);
  out.values.resize(M);
  parallel_for(M, [&](std::size_t j) {
    out.thetas[j] = static_cast<double>(j) / static_cast<double>(M);
    double sum = 0.0;
    for (std::int64_t k = -K; k <= K; ++k) {
      // exp(-2 pi i j k / M) with the index reduced exactly.
      const auto idx = static_cast<std::int64_t>((static_cast<std::int64_t>(j) * k) % static_cast<std::int64_t>(M));
      const double a = -2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(M);
      const Complex v = tapered[static_cast<std::size_t>(k + K)];
      sum += v.real() * std::cos(a) - v.imag() * std::sin(a);
    }
    out.values[j] = sum;
  });
  out.min_value = *std::min_element(out.values.begin(), out.values.end());
  if (taper == Taper::None) out.negative_density = out.min_value < -0.05 * eta.eta(0).real();
  return out;
}

/**
 * I_n(theta) = |(1/|B_n|) sum_{t in B_n} w(t) exp(-2 pi i theta t)|^2,
 * summed directly per window (independent of the prefix-sum path used by
 * fourier_bohr).
 */
inline MeanEstimate bombieri_taylor_atom(const WeightedComb& comb, double theta, const FolnerSchedule& schedule,
                                         const MeanOptions& opts = {}) {
  const Window hull = schedule.hull();
  const ComplexTrack w = comb.track(hull.start, hull.last());
  const Character xi(theta);
  MeanEstimate est;
  for (std::size_t n = 1; n <= schedule.size(); ++n) {
    const Window& b = schedule.window(n);
    Complex s{};
    for (std::int64_t t = b.start; t < b.end(); ++t) s += w(t) * xi.conj_at(t);
    est.partials.push_back({n, std::norm(s / static_cast<double>(b.length))});
  }
  const double m = comb.max_weight();
  assign_verdict(est, m * m, opts);
  return est;
}

/// Sum of atom masses over eta(0). Throws FractionExceedsOne above 1 + tolerance.
inline double pure_point_fraction(std::span<const std::pair<double, double>> atoms, double eta0,
                                  double tolerance = 0.05) {
  if (!(eta0 > 0.0)) throw InvalidArgument("eta0", "must be positive");
  double mass = 0.0;
  for (const auto& [theta, m] : atoms) mass += m;
  const double f = mass / eta0;
  if (f > 1.0 + tolerance) throw FractionExceedsOne(f);
  return f;
}

}  // namespace apspectra
