#pragma once

// Tokenizer for the canonical textual forms "name:key=value,key=value" and
// "name:v1,v2,...". Commas nested inside parentheses belong to the value.

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "entire/errors.hpp"

namespace entire::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

/// Splits on `sep` at parenthesis depth zero.
inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw ParseError(std::string(s), "unbalanced ')' in '" + std::string(s) + "'");
    if (s[i] == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError(std::string(s), "unbalanced '(' in '" + std::string(s) + "'");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

/// Parses a real; accepts "inf"/"infinity".
inline double parse_real(std::string_view s, const std::string& parameter) {
  s = trim(s);
  if (s == "inf" || s == "infinity" || s == "+inf") return INFINITY;
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw ParseError(parameter, "parameter '" + parameter + "': not a number: '" + std::string(s) + "'");
  }
  return value;
}

inline long long parse_integer(std::string_view s, const std::string& parameter) {
  s = trim(s);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(parameter, "parameter '" + parameter + "': not an integer: '" + std::string(s) + "'");
  }
  return value;
}

/// Shortest round-trip decimal form; "inf" for infinity.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct SpecText {
  std::string name;
  std::vector<std::string_view> args;  // raw comma-separated arguments after ':'
};

inline SpecText split_spec(std::string_view s) {
  s = trim(s);
  SpecText out;
  const auto colon = s.find(':');
  out.name = std::string(trim(s.substr(0, colon)));
  if (out.name.empty()) throw ParseError("name", "empty spec name");
  if (colon != std::string_view::npos) {
    auto rest = trim(s.substr(colon + 1));
    if (!rest.empty()) out.args = split_top_level(rest, ',');
  }
  return out;
}

/// key=value arguments; rejects keys not in `allowed` and duplicates.
inline std::map<std::string, std::string_view> key_values(const SpecText& spec,
                                                           std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string_view> out;
  for (auto arg : spec.args) {
    const auto eq = arg.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(arg), spec.name + ": expected key=value, got '" + std::string(arg) + "'");
    }
    std::string key(trim(arg.substr(0, eq)));
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ParseError(key, spec.name + ": unknown parameter '" + key + "'");
    if (out.contains(key)) throw ParseError(key, spec.name + ": duplicate parameter '" + key + "'");
    out.emplace(std::move(key), trim(arg.substr(eq + 1)));
  }
  return out;
}

/// "fn(a,b)" -> {"fn", ["a","b"]}; nullopt if not of call form.
inline std::optional<SpecText> parse_call(std::string_view s) {
  s = trim(s);
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') return std::nullopt;
  SpecText out;
  out.name = std::string(trim(s.substr(0, open)));
  auto inner = trim(s.substr(open + 1, s.size() - open - 2));
  if (!inner.empty()) out.args = split_top_level(inner, ',');
  return out;
}

}  // namespace entire::text
