#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/track.hpp"
#include "apspectra/systems/point.hpp"

namespace apspectra {

/**
 * A cylinder function f in C(X): a finite window of offsets and a value for
 * every letter pattern on that window. Along a point it induces the track
 * f_x(t) = f(t.x), which reads x at t + offset for each offset.
 *
 * The table is indexed by sum_i letter_i * |A|^i over window positions, so it
 * is total by construction.
 */
class Observable {
 public:
  template <typename Fn>
  static Observable from_function(const Alphabet& alphabet, std::vector<int> window, Fn&& fn, std::string name) {
    if (window.empty()) throw InvalidArgument("observable.window", "must not be empty");
    double entries = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(window.size()));
    if (entries > double(1 << 22)) throw InvalidArgument("observable.window", "pattern table too large");
    Observable f(alphabet, std::move(window), std::move(name));
    const std::size_t count = static_cast<std::size_t>(entries);
    f.table_.resize(count);
    std::vector<Letter> pattern(f.window_.size());
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t c = code;
      for (auto& l : pattern) {
        l = static_cast<Letter>(c % alphabet.size());
        c /= alphabet.size();
      }
      f.table_[code] = Complex(fn(std::span<const Letter>(pattern)));
    }
    f.sup_ = 0.0;
    for (const auto& v : f.table_) f.sup_ = std::max(f.sup_, std::abs(v));
    return f;
  }

  /// 1 where the letter at `offset` is `symbol`, else 0.
  static Observable indicator(const Alphabet& alphabet, char symbol, int offset = 0) {
    const Letter target = alphabet.index(symbol);
    return from_function(
        alphabet, {offset}, [target](std::span<const Letter> p) { return p[0] == target ? 1.0 : 0.0; },
        std::string("indicator:") + symbol);
  }

  /// Value per letter at `offset`; letters without an entry map to 0.
  static Observable letter_values(const Alphabet& alphabet, const std::map<char, Complex>& values, int offset = 0,
                                  std::string name = "values") {
    std::vector<Complex> by_letter(alphabet.size(), 0.0);
    for (const auto& [c, v] : values) by_letter[alphabet.index(c)] = v;
    return from_function(
        alphabet, {offset}, [by_letter](std::span<const Letter> p) { return by_letter[p[0]]; }, std::move(name));
  }

  static Observable constant(const Alphabet& alphabet, Complex c) {
    return from_function(alphabet, {0}, [c](std::span<const Letter>) { return c; }, "constant");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<int>& window() const noexcept { return window_; }
  const std::vector<Complex>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }
  double sup_norm() const noexcept { return sup_; }

  int min_offset() const { return *std::min_element(window_.begin(), window_.end()); }
  int max_offset() const { return *std::max_element(window_.begin(), window_.end()); }

  /// f(t.x) read from letters that cover t + every offset.
  Complex evaluate(const LetterWindow& letters, std::int64_t t) const {
    std::size_t code = 0, radix = 1;
    for (int off : window_) {
      code += letters(t + off) * radix;
      radix *= alphabet_.size();
    }
    return table_[code];
  }

 private:
  Observable(const Alphabet& a, std::vector<int> w, std::string name)
      : alphabet_(a), window_(std::move(w)), name_(std::move(name)) {}

  Alphabet alphabet_;
  std::vector<int> window_;
  std::vector<Complex> table_;
  std::string name_;
  double sup_ = 0.0;
};

/// track[t] = f(t.x) for t in [t0, t1].
inline ComplexTrack observable_track(const Observable& f, const PointGen& x, std::int64_t t0, std::int64_t t1) {
  if (!(f.alphabet() == x.alphabet()))
    throw InvalidArgument("observable", "alphabet '" + f.alphabet().symbols() + "' does not match point alphabet '" +
                                            x.alphabet().symbols() + "'");
  ComplexTrack out{t0, {}};
  if (t1 < t0) return out;
  const LetterWindow letters = x.window(t0 + f.min_offset(), t1 + f.max_offset());
  out.values.resize(static_cast<std::size_t>(t1 - t0 + 1));
  for (std::int64_t t = t0; t <= t1; ++t) out.values[static_cast<std::size_t>(t - t0)] = f.evaluate(letters, t);
  return out;
}

inline ComplexTrack observable_track(const Observable& f, const PointGen& x, const Window& w) {
  return observable_track(f, x, w.start, w.last());
}

}  // namespace apspectra
