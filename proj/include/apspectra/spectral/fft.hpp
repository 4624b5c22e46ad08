#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <span>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/track.hpp"

namespace apspectra::fft {

namespace detail {
// FFTW planning is not thread-safe; execution of distinct plans is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// X_j = sum_t x_t exp(-2 pi i j t / N), any N >= 1.
inline std::vector<Complex> forward(std::span<const Complex> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  std::vector<Complex> in(x.begin(), x.end()), out(x.size());
  fftw_plan plan;
  {
    std::lock_guard lock(detail::planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("fftw could not plan a transform of size " + std::to_string(n));
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace apspectra::fft
