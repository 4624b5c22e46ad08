#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "apspectra/systems/observable.hpp"

namespace apspectra {

/// Dirac comb sum_t weight(x(t)) delta_t carried by a symbolic point.
class WeightedComb {
 public:
  WeightedComb(PointGen base, const std::map<char, Complex>& weights, std::string name = "comb")
      : base_(std::move(base)), name_(std::move(name)), by_letter_(base_.alphabet().size(), 0.0) {
    for (const auto& [c, w] : weights) {
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InvalidArgument("weights", "must be finite");
      by_letter_[base_.alphabet().index(c)] = w;
    }
  }

  const PointGen& base() const noexcept { return base_; }
  const std::string& name() const noexcept { return name_; }

  Complex weight(Letter l) const { return by_letter_[l]; }
  Complex operator()(std::int64_t t) const { return by_letter_[base_.at(t)]; }

  std::map<char, Complex> weights() const {
    std::map<char, Complex> w;
    for (std::size_t i = 0; i < by_letter_.size(); ++i) w[base_.alphabet().symbol(static_cast<Letter>(i))] = by_letter_[i];
    return w;
  }

  double max_weight() const {
    double m = 0.0;
    for (const auto& w : by_letter_) m = std::max(m, std::abs(w));
    return m;
  }

  /// The weight as an observable at offset 0.
  Observable observable() const { return Observable::letter_values(base_.alphabet(), weights(), 0, name_); }

  ComplexTrack track(std::int64_t a, std::int64_t b) const {
    ComplexTrack out{a, {}};
    if (b < a) return out;
    const LetterWindow letters = base_.window(a, b);
    out.values.reserve(letters.letters.size());
    for (Letter l : letters.letters) out.values.push_back(by_letter_[l]);
    return out;
  }

  WeightedComb shifted(std::int64_t t) const {
    WeightedComb c = *this;
    c.base_ = base_.shifted(t);
    return c;
  }

 private:
  PointGen base_;
  std::string name_;
  std::vector<Complex> by_letter_;
};

}  // namespace apspectra
