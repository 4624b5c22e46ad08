#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/core/track.hpp"

namespace apspectra {

using Letter = std::uint8_t;

/// Finite ordered set of printable symbols; letters are indices into it.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InvalidArgument("alphabet", "must not be empty");
    if (symbols_.size() > 64) throw InvalidArgument("alphabet", "at most 64 letters");
    std::string sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("alphabet", "repeated symbol in '" + symbols_ + "'");
  }

  /// Sorted distinct symbols of `text`.
  static Alphabet of(const std::string& text) {
    std::string s = text;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return Alphabet(s);
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbols() const noexcept { return symbols_; }
  char symbol(Letter l) const { return symbols_.at(l); }

  bool contains(char c) const { return symbols_.find(c) != std::string::npos; }

  Letter index(char c) const {
    const auto pos = symbols_.find(c);
    if (pos == std::string::npos)
      throw InvalidArgument("letter", std::string("symbol '") + c + "' not in alphabet '" + symbols_ + "'");
    return static_cast<Letter>(pos);
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

/// Letters of a point on [origin, origin + size).
struct LetterWindow {
  std::int64_t origin = 0;
  std::vector<Letter> letters;

  std::int64_t first() const noexcept { return origin; }
  std::int64_t last() const noexcept { return origin + static_cast<std::int64_t>(letters.size()) - 1; }
  Letter operator()(std::int64_t t) const { return letters[static_cast<std::size_t>(t - origin)]; }

  std::string text(const Alphabet& a) const {
    std::string s;
    s.reserve(letters.size());
    for (Letter l : letters) s.push_back(a.symbol(l));
    return s;
  }
};

}  // namespace apspectra
