#pragma once

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/systems/alphabet.hpp"
#include "apspectra/systems/substitution.hpp"

namespace apspectra {

namespace rules {

struct Periodic {
  std::vector<Letter> pattern;
};

struct Substitution {
  std::shared_ptr<const SubstitutionTables> tables;
  std::map<char, std::string> images;
  char left = 0;
  char right = 0;
};

/// x(k) = 1 iff frac(k alpha + rho) lies in [1 - alpha, 1).
struct Sturmian {
  long double alpha = 0.0L;
  long double rho = 0.0L;
};

/// x(k) = 1 with probability p, drawn from a counter-mode hash of (seed, k).
struct Bernoulli {
  double p = 0.5;
  std::uint64_t seed = 0;
};

/// 1 on k >= 0, 0 below.
struct Step {};

/// 1 on [2^n, 2^n + 2^(n-1)) for n >= 1, 0 elsewhere on k > 0, `fill` on k <= 0.
struct Block {
  Letter fill = 0;
};

}  // namespace rules

namespace detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double counter_uniform(std::uint64_t seed, std::int64_t k) {
  const std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(k)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/**
 * A point of a subshift: a deterministic two-sided sequence over a finite
 * alphabet, evaluated lazily at any integer coordinate.
 *
 * Shifts follow (t.x)(k) = x(k + t). A PointGen is an immutable value; copies
 * share the substitution tables.
 */
class PointGen {
 public:
  using Rule = std::variant<rules::Periodic, rules::Substitution, rules::Sturmian, rules::Bernoulli, rules::Step,
                            rules::Block>;

  static PointGen periodic(const std::string& pattern) {
    if (pattern.empty()) throw InvalidArgument("pattern", "periodic pattern must not be empty");
    Alphabet a = Alphabet::of(pattern);
    rules::Periodic r;
    for (char c : pattern) r.pattern.push_back(a.index(c));
    return PointGen(std::move(a), std::move(r), "periodic:" + pattern);
  }

  static PointGen substitution(const std::string& name, const std::string& alphabet,
                               const std::map<char, std::string>& images, char left, char right) {
    Alphabet a(alphabet);
    rules::Substitution r{std::make_shared<const SubstitutionTables>(a, images, left, right), images, left, right};
    return PointGen(std::move(a), std::move(r), name);
  }

  /// a -> ab, b -> a with seed a.a
  static PointGen fibonacci() { return substitution("fibonacci", "ab", {{'a', "ab"}, {'b', "a"}}, 'a', 'a'); }

  /// 0 -> 01, 1 -> 10 with seed 0.0
  static PointGen thue_morse() { return substitution("thue-morse", "01", {{'0', "01"}, {'1', "10"}}, '0', '0'); }

  /// a -> ab, b -> aa with seed a.a
  static PointGen period_doubling() {
    return substitution("period-doubling", "ab", {{'a', "ab"}, {'b', "aa"}}, 'a', 'a');
  }

  static long double golden_alpha() { return (std::sqrt(5.0L) - 1.0L) / 2.0L; }

  static PointGen sturmian(long double alpha, long double rho = 0.0L) {
    if (!(alpha > 0.0L && alpha < 1.0L)) throw InvalidArgument("alpha", "must lie in (0, 1)");
    if (!std::isfinite(static_cast<double>(rho))) throw InvalidArgument("rho", "must be finite");
    return PointGen(Alphabet("01"), rules::Sturmian{alpha, rho}, "sturmian");
  }

  static PointGen bernoulli(double p, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p", "must lie in (0, 1)");
    return PointGen(Alphabet("01"), rules::Bernoulli{p, seed}, "bernoulli");
  }

  static PointGen step() { return PointGen(Alphabet("01"), rules::Step{}, "step"); }

  static PointGen block(int fill = 0) {
    if (fill != 0 && fill != 1) throw InvalidArgument("fill", "must be 0 or 1");
    return PointGen(Alphabet("01"), rules::Block{static_cast<Letter>(fill)}, "block");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::string& name() const noexcept { return name_; }
  std::int64_t offset() const noexcept { return offset_; }
  const Rule& rule() const noexcept { return rule_; }

  /// Letter of this point at coordinate k.
  Letter at(std::int64_t k) const { return raw(k + offset_); }
  char symbol_at(std::int64_t k) const { return alphabet_.symbol(at(k)); }

  LetterWindow window(std::int64_t a, std::int64_t b) const {
    LetterWindow w{a, {}};
    if (b < a) return w;
    w.letters.resize(static_cast<std::size_t>(b - a + 1));
    for (std::int64_t k = a; k <= b; ++k) w.letters[static_cast<std::size_t>(k - a)] = at(k);
    return w;
  }

  PointGen shifted(std::int64_t t) const {
    PointGen y = *this;
    y.offset_ += t;
    return y;
  }

  /// Explicit parameter listing, used to make output artifacts self-describing.
  std::map<std::string, std::string> parameters() const {
    std::map<std::string, std::string> p{{"name", name_}, {"alphabet", alphabet_.symbols()},
                                         {"offset", std::to_string(offset_)}};
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, rules::Periodic>) {
            p["kind"] = "periodic";
            std::string s;
            for (Letter l : r.pattern) s.push_back(alphabet_.symbol(l));
            p["pattern"] = s;
          } else if constexpr (std::is_same_v<R, rules::Substitution>) {
            p["kind"] = "substitution";
            std::string s;
            for (const auto& [c, img] : r.images) s += std::string(1, c) + "->" + img + ";";
            p["rules"] = s;
            p["seed"] = std::string{r.left, '.', r.right};
          } else if constexpr (std::is_same_v<R, rules::Sturmian>) {
            p["kind"] = "sturmian";
            p["alpha"] = format_ld(r.alpha);
            p["rho"] = format_ld(r.rho);
          } else if constexpr (std::is_same_v<R, rules::Bernoulli>) {
            p["kind"] = "bernoulli";
            p["p"] = format_ld(r.p);
            p["seed"] = std::to_string(r.seed);
          } else if constexpr (std::is_same_v<R, rules::Step>) {
            p["kind"] = "step";
          } else {
            p["kind"] = "block";
            p["fill"] = std::to_string(static_cast<int>(r.fill));
          }
        },
        rule_);
    return p;
  }

 private:
  PointGen(Alphabet a, Rule r, std::string name) : alphabet_(std::move(a)), rule_(std::move(r)), name_(std::move(name)) {}

  static std::string format_ld(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
  }

  Letter raw(std::int64_t k) const {
    return std::visit(
        [k](const auto& r) -> Letter {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, rules::Periodic>) {
            return r.pattern[static_cast<std::size_t>(
                detail::floor_mod(k, static_cast<std::int64_t>(r.pattern.size())))];
          } else if constexpr (std::is_same_v<R, rules::Substitution>) {
            return r.tables->at(k);
          } else if constexpr (std::is_same_v<R, rules::Sturmian>) {
            const long double x = static_cast<long double>(k) * r.alpha + r.rho;
            const long double frac = x - std::floor(x);
            return frac >= 1.0L - r.alpha ? 1 : 0;
          } else if constexpr (std::is_same_v<R, rules::Bernoulli>) {
            return detail::counter_uniform(r.seed, k) < r.p ? 1 : 0;
          } else if constexpr (std::is_same_v<R, rules::Step>) {
            return k >= 0 ? 1 : 0;
          } else {
            if (k <= 0) return r.fill;
            const int n = std::bit_width(static_cast<std::uint64_t>(k)) - 1;  // 2^n <= k < 2^(n+1)
            if (n < 1) return 0;
            const std::int64_t start = std::int64_t{1} << n;
            return k < start + (start >> 1) ? 1 : 0;
          }
        },
        rule_);
  }

  Alphabet alphabet_;
  Rule rule_;
  std::string name_;
  std::int64_t offset_ = 0;
};

inline LetterWindow eval_window(const PointGen& x, std::int64_t a, std::int64_t b) {
  if (b < a) throw InvalidArgument("window", "needs a <= b");
  return x.window(a, b);
}

inline PointGen shift(const PointGen& x, std::int64_t t) { return x.shifted(t); }

}  // namespace apspectra
