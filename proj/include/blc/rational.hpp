#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace blc {

/// Exact rational number over 64-bit integers.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Every arithmetic
/// operation is carried out in 128-bit intermediates and throws
/// std::overflow_error if the reduced result no longer fits in 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "7", "-3/4" or "1.5" (finite decimal). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational reciprocal() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "a" for integers, "a/b" otherwise.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Largest integer <= q.
std::int64_t floor(const Rational& q);

/// Nearest integer to q, ties rounded up.
std::int64_t round_nearest(const Rational& q);

}  // namespace blc

template <>
struct std::hash<blc::Rational> {
  std::size_t operator()(const blc::Rational& q) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(q.num());
    return h ^ (std::hash<std::int64_t>{}(q.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
