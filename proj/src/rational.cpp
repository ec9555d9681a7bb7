#include "blc/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace blc {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");

  auto parse_int = [&](std::string_view s) -> __int128 {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    __int128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
      if (v > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("rational literal too large");
    }
    return neg ? -v : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return from_wide(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view whole = text.substr(0, dot);
    bool neg = !whole.empty() && whole.front() == '-';
    __int128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      scale *= 10;
      if (scale > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("rational literal too precise");
    }
    __int128 w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    __int128 f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    __int128 num = (w < 0 ? -w : w) * scale + f;
    return from_wide(neg ? -num : num, scale);
  }
  return from_wide(parse_int(text), 1);
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("reciprocal of zero");
  return from_wide(den_, num_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
                    static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_,
                    static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::int64_t floor(const Rational& q) {
  std::int64_t d = q.num() / q.den();
  if (q.num() % q.den() != 0 && q.num() < 0) --d;
  return d;
}

std::int64_t round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

}  // namespace blc
