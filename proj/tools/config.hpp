#pragma once

// Experiment config: JSON in, validated library objects out. Every
// validation failure is a ConfigError naming the offending field.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "apspectra/apspectra.hpp"

namespace cli {

using nlohmann::json;
using namespace apspectra;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The message of a field error without its "field: " prefix.
template <class E>
std::string reason(const E& e) {
  const std::string w = e.what(), prefix = e.field() + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

inline std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/// FNV-1a 64-bit, as 16 hex digits.
inline std::string fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i, h >>= 4) buf[i] = "0123456789abcdef"[h & 0xf];
  buf[16] = '\0';
  return buf;
}

/// Typed access to an optional member of a JSON object.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_null() && !j_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }

  void allow(std::initializer_list<const char*> keys) const {
    if (!j_.is_object()) return;
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (const char* a : keys) known = known || k == a;
      if (!known) throw ConfigError(field(k), "unknown key");
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "must be a number");
    return v.get<double>();
  }
  double number(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "is required");
    return number(key, 0.0);
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "must be an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(field(key), "must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key), "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field(key), "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::int64_t> integers(const std::string& key, std::vector<std::int64_t> fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key), "must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError(field(key), "must be an array of integers");
      out.push_back(e.get<std::int64_t>());
    }
    return out;
  }

  Section sub(const std::string& key) const {
    static const json null_json;
    return Section(has(key) ? j_.at(key) : null_json, field(key));
  }

 private:
  const json& j_;
  std::string path_;
};

inline std::int64_t positive(const Section& s, const std::string& key, std::int64_t fallback) {
  const std::int64_t v = s.integer(key, fallback);
  if (v < 1) throw ConfigError(s.field(key), "must be positive");
  return v;
}

inline std::int64_t nonnegative(const Section& s, const std::string& key, std::int64_t fallback) {
  const std::int64_t v = s.integer(key, fallback);
  if (v < 0) throw ConfigError(s.field(key), "must be nonnegative");
  return v;
}

/// A point preset with its parameters spelled out.
struct PointSpec {
  PointGen point;
  json expanded;
};

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t from = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == ':') {
      parts.push_back(s.substr(from, i - from));
      from = i + 1;
    }
  return parts;
}

/// "sturmian:golden" style strings become the equivalent object form.
inline json point_object(const json& j) {
  if (j.is_object()) return j;
  if (!j.is_string()) throw ConfigError("point", "must be a preset string or an object");
  const auto p = split(j.get<std::string>());
  json o{{"preset", p[0]}};
  auto num = [&](std::size_t i, const char* name) -> json {
    if (p[i] == "golden") return p[i];
    double v = 0.0;
    const auto r = std::from_chars(p[i].data(), p[i].data() + p[i].size(), v);
    if (r.ec != std::errc{} || r.ptr != p[i].data() + p[i].size()) throw ConfigError(name, "not a number: '" + p[i] + "'");
    return v;
  };
  auto u64 = [&](std::size_t i, const char* name) -> json {
    std::uint64_t v = 0;
    const auto r = std::from_chars(p[i].data(), p[i].data() + p[i].size(), v);
    if (r.ec != std::errc{} || r.ptr != p[i].data() + p[i].size())
      throw ConfigError(name, "not a nonnegative integer: '" + p[i] + "'");
    return v;
  };
  const std::string& head = p[0];
  if (head == "periodic" && p.size() == 2) o["pattern"] = p[1];
  if (head == "block" && p.size() == 2) o["fill"] = u64(1, "fill");
  if (head == "sturmian" && (p.size() == 2 || p.size() == 3)) {
    o["alpha"] = num(1, "alpha");
    if (p.size() == 3) o["rho"] = num(2, "rho");
  }
  if (head == "bernoulli" && p.size() == 3) {
    o["p"] = num(1, "p");
    o["seed"] = u64(2, "seed");
  }
  const std::size_t expected = o.size();
  if (p.size() != expected) throw ConfigError("point", "wrong number of parameters in '" + j.get<std::string>() + "'");
  return o;
}

inline PointSpec parse_point_spec(const json& j, std::optional<std::uint64_t> seed_override) {
  json o = point_object(j);
  const Section s(o, "point");
  const std::string preset = s.text("preset", "");
  try {
    if (preset == "fibonacci" || preset == "thue-morse" || preset == "period-doubling" || preset == "step") {
      s.allow({"preset"});
      return {parse_point(preset), o};
    }
    if (preset == "block") {
      s.allow({"preset", "fill"});
      o["fill"] = s.unsigned_integer("fill", 0);
      return {PointGen::block(static_cast<int>(o["fill"].get<std::uint64_t>())), o};
    }
    if (preset == "periodic") {
      s.allow({"preset", "pattern"});
      const std::string pattern = s.text("pattern", "");
      if (pattern.empty()) throw ConfigError("point.pattern", "must be a nonempty string");
      return {PointGen::periodic(pattern), o};
    }
    if (preset == "sturmian") {
      s.allow({"preset", "alpha", "rho"});
      long double alpha = PointGen::golden_alpha();
      if (!(s.has("alpha") && s.raw("alpha") == "golden")) alpha = s.number("alpha");
      o["alpha"] = static_cast<double>(alpha);
      o["rho"] = s.number("rho", 0.0);
      return {PointGen::sturmian(alpha, o["rho"].get<double>()), o};
    }
    if (preset == "bernoulli") {
      s.allow({"preset", "p", "seed"});
      o["p"] = s.number("p");
      o["seed"] = seed_override ? *seed_override : s.unsigned_integer("seed", 0);
      return {PointGen::bernoulli(o["p"].get<double>(), o["seed"].get<std::uint64_t>()), o};
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(s.field(e.field()), reason(e));
  }
  throw ConfigError("point.preset", "unknown preset '" + preset + "'");
}

inline Complex complex_value(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(field, "must be a number or a [re, im] pair");
}

inline json complex_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

/// Letter -> complex value map keyed by one-character strings.
inline std::map<char, Complex> letter_map(const Section& s, const std::string& key, const Alphabet& alphabet) {
  if (!s.has(key) || !s.raw(key).is_object()) throw ConfigError(s.field(key), "must be an object of letter values");
  std::map<char, Complex> out;
  for (const auto& [k, v] : s.raw(key).items()) {
    if (k.size() != 1 || !alphabet.contains(k[0]))
      throw ConfigError(s.field(key), "'" + k + "' is not a letter of the point's alphabet");
    out[k[0]] = complex_value(v, s.field(key) + "." + k);
  }
  return out;
}

struct ObservableSpec {
  Observable observable;
  json expanded;
};

inline ObservableSpec parse_observable(const Section& s, const Alphabet& alphabet) {
  s.allow({"type", "symbol", "values", "offset"});
  const std::string type = s.text("type", "indicator");
  const auto offset = static_cast<int>(s.integer("offset", 0));
  if (type == "indicator") {
    const std::string sym = s.text("symbol", std::string(1, alphabet.symbol(0)));
    if (sym.size() != 1 || !alphabet.contains(sym[0]))
      throw ConfigError(s.field("symbol"), "'" + sym + "' is not a letter of the point's alphabet");
    return {Observable::indicator(alphabet, sym[0], offset),
            json{{"type", type}, {"symbol", sym}, {"offset", offset}}};
  }
  if (type == "values") {
    const auto values = letter_map(s, "values", alphabet);
    json v = json::object();
    for (const auto& [c, z] : values) v[std::string(1, c)] = complex_json(z);
    return {Observable::letter_values(alphabet, values, offset, "values"),
            json{{"type", type}, {"values", v}, {"offset", offset}}};
  }
  throw ConfigError(s.field("type"), "must be 'indicator' or 'values'");
}

inline FolnerSchedule parse_schedule(const Section& s, const FolnerSchedule& fallback) {
  if (!s.has("kind")) {
    s.allow({});
    return fallback;
  }
  const std::string kind = s.text("kind", "");
  try {
    if (kind == "intervals") {
      s.allow({"kind", "base", "count"});
      return FolnerSchedule::intervals(positive(s, "base", 1000), static_cast<std::size_t>(positive(s, "count", 10)));
    }
    if (kind == "dyadic") {
      s.allow({"kind", "count"});
      return FolnerSchedule::dyadic(static_cast<std::size_t>(positive(s, "count", 16)));
    }
    if (kind == "alternating") {
      s.allow({"kind", "count"});
      return FolnerSchedule::alternating(static_cast<std::size_t>(positive(s, "count", 1000)));
    }
    if (kind == "custom") {
      s.allow({"kind", "windows"});
      if (!s.has("windows") || !s.raw("windows").is_array())
        throw ConfigError(s.field("windows"), "must be an array of [start, length] pairs");
      std::vector<Window> w;
      for (const auto& e : s.raw("windows")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
          throw ConfigError(s.field("windows"), "must be an array of [start, length] pairs");
        w.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
      }
      return FolnerSchedule::custom(std::move(w));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(s.field(e.field()), reason(e));
  }
  throw ConfigError(s.field("kind"), "must be intervals, dyadic, alternating or custom");
}

}  // namespace cli
