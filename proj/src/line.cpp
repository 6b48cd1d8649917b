#include "konvex/line.hpp"

#include <algorithm>
#include <cmath>

namespace konvex {

namespace {

constexpr std::int64_t kMaxCoefficient = std::int64_t{1} << 53;
constexpr double kDirectionQuantum = 1099511627776.0;  // 2^40
constexpr double kMaxOffset = 4.0e6;

int128 round_to_int128(long double v) {
  return static_cast<int128>(std::nearbyint(v));
}

}  // namespace

std::string int128_to_string(int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work on the negative side to cover the most negative value.
  std::string digits;
  while (value != 0) {
    const int digit = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

int128 parse_int128(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw GeometryError("empty integer literal");
  int128 value = 0;
  const int128 limit = int128{1} << 120;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch < '0' || ch > '9') {
      throw GeometryError("invalid integer literal '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
    if (value > limit) throw GeometryError("integer literal out of range");
  }
  return negative ? -value : value;
}

Line Line::exact(std::int64_t a, std::int64_t b, int128 c) {
  if (a == 0 && b == 0) throw GeometryError("line normal must be nonzero");
  if (a > kMaxCoefficient || a < -kMaxCoefficient || b > kMaxCoefficient ||
      b < -kMaxCoefficient) {
    throw GeometryError("line coefficient out of range");
  }
  const int128 c_limit = int128{1} << 106;
  if (c > c_limit || c < -c_limit) throw GeometryError("line offset out of range");
  return Line(a, b, c);
}

Line Line::through(const Point& p, const Point& q) {
  if (p == q) throw GeometryError("line through coincident points");
  const std::int64_t a = p.y - q.y;
  const std::int64_t b = q.x - p.x;
  const int128 c = static_cast<int128>(a) * p.x + static_cast<int128>(b) * p.y;
  return Line(a, b, c);
}

namespace {

void quantize(double nx, double ny, std::int64_t& a, std::int64_t& b) {
  const double norm = std::hypot(nx, ny);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw GeometryError("line normal must be finite and nonzero");
  }
  a = std::llround(nx / norm * kDirectionQuantum);
  b = std::llround(ny / norm * kDirectionQuantum);
}

}  // namespace

Line Line::from_normal(double nx, double ny, double offset) {
  if (!std::isfinite(offset) || std::abs(offset) > kMaxOffset) {
    throw GeometryError("line offset out of range");
  }
  std::int64_t a = 0;
  std::int64_t b = 0;
  quantize(nx, ny, a, b);
  const long double norm = std::hypot(static_cast<long double>(a), static_cast<long double>(b));
  const int128 c = round_to_int128(static_cast<long double>(offset) * kScale * norm);
  return Line(a, b, c);
}

Line Line::through_with_normal(const Point& p, Direction normal) {
  std::int64_t a = 0;
  std::int64_t b = 0;
  quantize(normal.x, normal.y, a, b);
  const int128 c = static_cast<int128>(a) * p.x + static_cast<int128>(b) * p.y;
  return Line(a, b, c);
}

Direction Line::normal() const {
  const double norm = std::hypot(static_cast<double>(a_), static_cast<double>(b_));
  return Direction{static_cast<double>(a_) / norm, static_cast<double>(b_) / norm};
}

double Line::offset() const {
  const long double norm = std::hypot(static_cast<long double>(a_), static_cast<long double>(b_));
  return static_cast<double>(static_cast<long double>(c_) / (norm * kScale));
}

Line Line::translated(double distance) const {
  const long double norm = std::hypot(static_cast<long double>(a_), static_cast<long double>(b_));
  const int128 shift = round_to_int128(static_cast<long double>(distance) * kScale * norm);
  return exact(a_, b_, c_ + shift);
}

Line Line::rotated_about_midpoint(double radians, const Point& p, const Point& q) const {
  const long double cs = std::cos(static_cast<long double>(radians));
  const long double sn = std::sin(static_cast<long double>(radians));
  const auto a = static_cast<std::int64_t>(std::llround(a_ * cs - b_ * sn));
  const auto b = static_cast<std::int64_t>(std::llround(a_ * sn + b_ * cs));
  // Twice the pivot keeps the sum exact; halve with rounding at the end.
  const int128 sx = static_cast<int128>(p.x) + q.x;
  const int128 sy = static_cast<int128>(p.y) + q.y;
  const int128 twice_c = static_cast<int128>(a) * sx + static_cast<int128>(b) * sy;
  const int128 c = twice_c >= 0 ? (twice_c + 1) / 2 : -((-twice_c + 1) / 2);
  return exact(a, b, c);
}

}  // namespace konvex
