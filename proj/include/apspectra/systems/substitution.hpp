#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "apspectra/core/error.hpp"
#include "apspectra/systems/alphabet.hpp"

namespace apspectra {

/**
 * Two-sided fixed point of a substitution, evaluated lazily.
 *
 * The seed pair (left, right) sits at coordinates (-1, 0). With sigma^p the
 * smallest power for which sigma^p(right) starts with `right` and
 * sigma^p(left) ends with `left`, the right half is the limit of
 * sigma^{pL}(right) and the left half the limit of sigma^{pL}(left) read
 * backwards from -1. A coordinate is resolved by descending the level-length
 * table, so there is no mutable cache and evaluation is safe from any thread.
 */
class SubstitutionTables {
 public:
  using Word = std::vector<Letter>;

  SubstitutionTables(const Alphabet& alphabet, const std::map<char, std::string>& rules, char left, char right)
      : left_(alphabet.index(left)), right_(alphabet.index(right)) {
    const std::size_t a = alphabet.size();
    base_.resize(a);
    for (std::size_t c = 0; c < a; ++c) {
      const auto it = rules.find(alphabet.symbol(static_cast<Letter>(c)));
      if (it == rules.end() || it->second.empty())
        throw InvalidArgument("rules", std::string("no image for letter '") + alphabet.symbol(static_cast<Letter>(c)) + "'");
      for (char s : it->second) base_[c].push_back(alphabet.index(s));
    }
    check_legal(alphabet);

    std::vector<Word> power = base_;
    for (power_ = 1; power_ <= 12; ++power_) {
      if (power[right_].front() == right_ && power[left_].back() == left_) break;
      power = compose(power, base_);
    }
    if (power_ > 12)
      throw InvalidArgument("seed", "seed pair is not fixed by any power of the substitution up to 12");
    images_ = std::move(power);

    lengths_.push_back(std::vector<std::uint64_t>(a, 1));
    constexpr std::uint64_t cap = std::uint64_t{1} << 62;
    while (lengths_.back()[right_] < cap || lengths_.back()[left_] < cap) {
      std::vector<std::uint64_t> next(a, 0);
      for (std::size_t c = 0; c < a; ++c)
        for (Letter d : images_[c]) next[c] = std::min(cap, next[c] + lengths_.back()[d]);
      if (next == lengths_.back()) throw InvalidArgument("rules", "substitution does not grow from the seed");
      lengths_.push_back(std::move(next));
    }
  }

  std::size_t power() const noexcept { return power_; }

  Letter at(std::int64_t k) const {
    if (k >= kReach || k < -kReach) throw InvalidArgument("t", "coordinate beyond 2^62");
    if (k >= 0) return descend_right(static_cast<std::uint64_t>(k));
    return descend_left(static_cast<std::uint64_t>(-(k + 1)));
  }

 private:
  static constexpr std::int64_t kReach = std::int64_t{1} << 62;

  static std::vector<Word> compose(const std::vector<Word>& outer, const std::vector<Word>& inner) {
    std::vector<Word> out(outer.size());
    for (std::size_t c = 0; c < outer.size(); ++c)
      for (Letter d : outer[c]) out[c].insert(out[c].end(), inner[d].begin(), inner[d].end());
    return out;
  }

  // The seed pair must occur in some iterate sigma^m(c).
  void check_legal(const Alphabet& alphabet) const {
    for (std::size_t c = 0; c < base_.size(); ++c) {
      Word w{static_cast<Letter>(c)};
      for (int m = 0; m < 24 && w.size() < (1u << 16); ++m) {
        Word next;
        for (Letter d : w) next.insert(next.end(), base_[d].begin(), base_[d].end());
        w = std::move(next);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          if (w[i] == left_ && w[i + 1] == right_) return;
      }
    }
    throw InvalidArgument("seed", std::string("pair '") + alphabet.symbol(left_) + alphabet.symbol(right_) +
                                      "' does not occur in any iterate");
  }

  Letter descend_right(std::uint64_t k) const {
    std::size_t level = 0;
    while (lengths_[level][right_] <= k) ++level;
    Letter cur = right_;
    while (level > 0) {
      --level;
      for (Letter d : images_[cur]) {
        if (k < lengths_[level][d]) {
          cur = d;
          break;
        }
        k -= lengths_[level][d];
      }
    }
    return cur;
  }

  // j counts backwards from coordinate -1.
  Letter descend_left(std::uint64_t j) const {
    std::size_t level = 0;
    while (lengths_[level][left_] <= j) ++level;
    Letter cur = left_;
    while (level > 0) {
      --level;
      const Word& img = images_[cur];
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        if (j < lengths_[level][*it]) {
          cur = *it;
          break;
        }
        j -= lengths_[level][*it];
      }
    }
    return cur;
  }

  Letter left_;
  Letter right_;
  std::size_t power_ = 1;
  std::vector<Word> base_;
  std::vector<Word> images_;
  std::vector<std::vector<std::uint64_t>> lengths_;
};

}  // namespace apspectra
