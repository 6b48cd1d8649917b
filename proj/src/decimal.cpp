#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "konvex/geometry.hpp"

namespace konvex {

namespace {

[[noreturn]] void bad_literal(std::string_view text, const char* why) {
  throw GeometryError("invalid coordinate '" + std::string(text) + "': " + why);
}

}  // namespace

std::int64_t parse_coordinate(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  // Collect significant digits and the decimal exponent they are scaled by.
  std::string digits;
  int exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      seen_digit = true;
      digits.push_back(ch);
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad_literal(text, "no digits");

  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) bad_literal(text, "empty exponent");
    int value = 0;
    for (; pos < text.size(); ++pos) {
      const char ch = text[pos];
      if (!std::isdigit(static_cast<unsigned char>(ch))) bad_literal(text, "bad exponent");
      value = value * 10 + (ch - '0');
      if (value > 1000) bad_literal(text, "exponent out of range");
    }
    exponent += exp_negative ? -value : value;
  }
  if (pos != text.size()) bad_literal(text, "trailing characters");

  // Value = digits * 10^exponent; grid value = digits * 10^(exponent + 9).
  exponent += kScaleDigits;
  while (!digits.empty() && exponent < 0 && digits.back() == '0') {
    digits.pop_back();
    ++exponent;
  }
  if (exponent < 0) {
    // Only zeros could remain below the grid resolution.
    if (digits.find_first_not_of('0') != std::string::npos) {
      bad_literal(text, "finer than the 1e-9 grid");
    }
    return 0;
  }

  int128 value = 0;
  const int128 limit = kMaxScaled;
  for (char ch : digits) {
    value = value * 10 + (ch - '0');
    if (value > limit) bad_literal(text, "magnitude exceeds 1e6");
  }
  for (int i = 0; i < exponent; ++i) {
    value *= 10;
    if (value > limit) bad_literal(text, "magnitude exceeds 1e6");
  }
  const auto result = static_cast<std::int64_t>(value);
  return negative ? -result : result;
}

std::string format_coordinate(std::int64_t scaled) {
  const bool negative = scaled < 0;
  const auto magnitude = static_cast<std::uint64_t>(negative ? -scaled : scaled);
  const std::uint64_t whole = magnitude / static_cast<std::uint64_t>(kScale);
  std::uint64_t frac = magnitude % static_cast<std::uint64_t>(kScale);

  std::string out = negative ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0) {
    std::string tail = std::to_string(frac);
    tail.insert(0, static_cast<std::size_t>(kScaleDigits) - tail.size(), '0');
    while (tail.back() == '0') tail.pop_back();
    out += '.';
    out += tail;
  }
  return out;
}

Point Point::from_scaled(std::int64_t x, std::int64_t y) {
  if (x > kMaxScaled || x < -kMaxScaled || y > kMaxScaled || y < -kMaxScaled) {
    throw GeometryError("point outside the admissible coordinate range");
  }
  return Point{x, y};
}

Point Point::from_decimal(std::string_view x, std::string_view y) {
  return Point{parse_coordinate(x), parse_coordinate(y)};
}

Point Point::from_double(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw GeometryError("non-finite coordinate");
  }
  const double sx = std::nearbyint(x * static_cast<double>(kScale));
  const double sy = std::nearbyint(y * static_cast<double>(kScale));
  const auto limit = static_cast<double>(kMaxScaled);
  if (std::abs(sx) > limit || std::abs(sy) > limit) {
    throw GeometryError("point outside the admissible coordinate range");
  }
  return Point{static_cast<std::int64_t>(sx), static_cast<std::int64_t>(sy)};
}

}  // namespace konvex
