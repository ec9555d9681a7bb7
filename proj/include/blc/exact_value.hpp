#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "blc/rational.hpp"

namespace blc {

/// A positive real of the form prod p^e (p prime, e rational, e != 0).
/// The empty product is 1.
class ExactValue {
 public:
  using Exponents = std::map<std::uint64_t, Rational>;

  ExactValue() = default;

  static ExactValue one() { return {}; }
  /// Factorizes a positive integer by trial division.
  static ExactValue from_integer(std::uint64_t n);
  /// Positive rationals only.
  static ExactValue from_rational(const Rational& q);
  /// Builds from a prime -> exponent map. Zero exponents are dropped; keys
  /// must be primes (checked).
  static ExactValue from_exponents(const Exponents& exps);

  const Exponents& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  /// Set when every exponent is an integer and the value fits.
  bool is_rational() const;
  Rational as_rational() const;

  ExactValue pow(const Rational& e) const;
  ExactValue reciprocal() const { return pow(Rational(-1)); }

  ExactValue& operator*=(const ExactValue& rhs);
  ExactValue& operator/=(const ExactValue& rhs);
  friend ExactValue operator*(ExactValue a, const ExactValue& b) { return a *= b; }
  friend ExactValue operator/(ExactValue a, const ExactValue& b) { return a /= b; }

  /// Identical exponent maps. Distinct maps never denote the same real.
  friend bool operator==(const ExactValue&, const ExactValue&) = default;

  /// Natural log and its exponential, in double precision.
  double log() const;
  double to_double() const;

  /// "1", "2^(1/2)*3^(-1)" style rendering.
  std::string str() const;

 private:
  Exponents exps_;
};

/// Exact ordering. Identical maps compare equal; otherwise sum e_p ln p of
/// a/b is bracketed with a double-interval pass and then MPFR intervals
/// from 128 bits, doubling up to 4096 bits. Throws UndecidedError past the cap.
std::strong_ordering compare(const ExactValue& a, const ExactValue& b);

inline bool operator<(const ExactValue& a, const ExactValue& b) { return compare(a, b) < 0; }
inline bool operator>(const ExactValue& a, const ExactValue& b) { return compare(a, b) > 0; }
inline bool operator<=(const ExactValue& a, const ExactValue& b) { return compare(a, b) <= 0; }
inline bool operator>=(const ExactValue& a, const ExactValue& b) { return compare(a, b) >= 0; }

/// Precision (bits) used by the last MPFR escalation in this thread, 0 if the
/// double pass decided. Diagnostic only.
unsigned last_compare_precision();

}  // namespace blc
