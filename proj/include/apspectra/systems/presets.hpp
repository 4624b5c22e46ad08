#pragma once

#include <cerrno>
#include <cstdlib>
#include <string>
#include <vector>

#include "apspectra/systems/point.hpp"

namespace apspectra {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline long double parse_real(const std::string& text, const std::string& field) {
  if (text == "golden") return PointGen::golden_alpha();
  errno = 0;
  char* end = nullptr;
  const long double v = std::strtold(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno != 0)
    throw InvalidArgument(field, "not a number: '" + text + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || errno != 0)
    throw InvalidArgument(field, "not an unsigned integer: '" + text + "'");
  return v;
}

}  // namespace detail

/**
 * Parses a named point preset:
 *
 *   fibonacci | thue-morse | period-doubling | step | block[:fill]
 *   periodic:<pattern>
 *   sturmian:<alpha>[:<rho>]     alpha may be the word "golden"
 *   bernoulli:<p>:<seed>
 */
inline PointGen parse_point(const std::string& spec) {
  const auto parts = detail::split(spec, ':');
  const std::string& head = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi)
      throw InvalidArgument("point", "wrong number of parameters in '" + spec + "'");
  };
  if (head == "fibonacci") return arity(0, 0), PointGen::fibonacci();
  if (head == "thue-morse") return arity(0, 0), PointGen::thue_morse();
  if (head == "period-doubling") return arity(0, 0), PointGen::period_doubling();
  if (head == "step") return arity(0, 0), PointGen::step();
  if (head == "block") {
    arity(0, 1);
    return PointGen::block(parts.size() == 2 ? static_cast<int>(detail::parse_u64(parts[1], "fill")) : 0);
  }
  if (head == "periodic") {
    arity(1, 1);
    return PointGen::periodic(parts[1]);
  }
  if (head == "sturmian") {
    arity(1, 2);
    const long double alpha = detail::parse_real(parts[1], "alpha");
    const long double rho = parts.size() == 3 ? detail::parse_real(parts[2], "rho") : 0.0L;
    return PointGen::sturmian(alpha, rho);
  }
  if (head == "bernoulli") {
    arity(2, 2);
    return PointGen::bernoulli(static_cast<double>(detail::parse_real(parts[1], "p")),
                               detail::parse_u64(parts[2], "seed"));
  }
  throw InvalidArgument("point", "unknown preset '" + spec + "'");
}

}  // namespace apspectra
