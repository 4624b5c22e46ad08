#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "apspectra/diffraction/comb.hpp"

namespace apspectra {

/// Finitely supported kernel phi as (offset, value) pairs.
using Kernel = std::vector<std::pair<int, Complex>>;

/**
 * The cylinder function N_phi(x) = sum_k conj(phi(k)) w(x(k)), the pairing of
 * the comb with phi (conjugate-linear in phi).
 */
inline Observable nphi_observable(const WeightedComb& comb, const Kernel& phi) {
  if (phi.empty()) throw InvalidArgument("kernel", "must not be empty");
  std::vector<int> window;
  std::vector<Complex> coef;
  for (const auto& [k, v] : phi) {
    window.push_back(k);
    coef.push_back(std::conj(v));
  }
  return Observable::from_function(
      comb.base().alphabet(), window,
      [&](std::span<const Letter> p) {
        Complex s{};
        for (std::size_t i = 0; i < p.size(); ++i) s += coef[i] * comb.weight(p[i]);
        return s;
      },
      "N_phi");
}

struct BridgeResult {
  ComplexTrack track;       // (omega * phi~)(t) summed directly
  double residual = 0.0;    // max_t |direct - N_phi track|
};

/**
 * (omega * phi~)(t) = sum_s w(s) conj(phi(s - t)) for t in [t0, t1], checked
 * against the orbit track of the cylinder function N_phi.
 */
inline BridgeResult nphi_bridge(const WeightedComb& comb, const Kernel& phi, std::int64_t t0, std::int64_t t1) {
  if (phi.empty()) throw InvalidArgument("kernel", "must not be empty");
  int lo = phi.front().first, hi = lo;
  for (const auto& [k, v] : phi) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  const ComplexTrack w = comb.track(t0 + lo, t1 + hi);
  BridgeResult r;
  r.track = tabulate(t0, t1, [&](std::int64_t t) {
    Complex s{};
    for (const auto& [k, v] : phi) s += w(t + k) * std::conj(v);  // s = t + k
    return s;
  });
  const ComplexTrack via_observable = observable_track(nphi_observable(comb, phi), comb.base(), t0, t1);
  for (std::size_t i = 0; i < r.track.size(); ++i)
    r.residual = std::max(r.residual, std::abs(r.track.values[i] - via_observable.values[i]));
  return r;
}

}  // namespace apspectra
