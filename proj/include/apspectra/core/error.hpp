#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace apspectra {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter failed validation. `field()` names the offending input.
class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A window or shifted window reaches a coordinate the sample track does not cover.
class MissingSamples : public Error {
 public:
  explicit MissingSamples(std::int64_t t)
      : Error("missing sample at t=" + std::to_string(t)), t_(t) {}

  std::int64_t first_missing() const noexcept { return t_; }

 private:
  std::int64_t t_;
};

class EmptyShiftRange : public Error {
 public:
  EmptyShiftRange() : Error("shift range is empty") {}
};

/// No scanned window index brings the uniform mean below epsilon.
class NeverBelow : public Error {
 public:
  NeverBelow(double epsilon, double smallest)
      : Error("uniform mean never below " + std::to_string(epsilon) +
              " (smallest " + std::to_string(smallest) + ")"),
        epsilon_(epsilon),
        smallest_(smallest) {}

  double epsilon() const noexcept { return epsilon_; }
  double smallest() const noexcept { return smallest_; }

 private:
  double epsilon_;
  double smallest_;
};

/// The evaluation extent a scan needs exceeds its configured limit.
class BudgetTooSmall : public Error {
 public:
  BudgetTooSmall(std::int64_t needed, std::int64_t limit)
      : Error("scan needs coordinates up to |t|=" + std::to_string(needed) +
              " but the evaluation limit is " + std::to_string(limit)),
        needed_(needed),
        limit_(limit) {}

  std::int64_t needed() const noexcept { return needed_; }
  std::int64_t limit() const noexcept { return limit_; }

 private:
  std::int64_t needed_;
  std::int64_t limit_;
};

/// Atom masses add up to more than the total intensity (spurious or double-counted atoms).
class FractionExceedsOne : public Error {
 public:
  explicit FractionExceedsOne(double fraction)
      : Error("pure point fraction " + std::to_string(fraction) + " exceeds one"),
        fraction_(fraction) {}

  double fraction() const noexcept { return fraction_; }

 private:
  double fraction_;
};

}  // namespace apspectra
