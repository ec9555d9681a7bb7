#include "blc/exact_value.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "blc/errors.hpp"

namespace blc {
namespace {

thread_local unsigned g_last_precision = 0;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void add_factors(ExactValue::Exponents& exps, std::uint64_t n, int sign) {
  auto bump = [&](std::uint64_t p) {
    auto& e = exps[p];
    e += Rational(sign);
    if (e.is_zero()) exps.erase(p);
  };
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      bump(d);
      n /= d;
    }
  }
  if (n > 1) bump(n);
}

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// Sign of sum e_p ln p, or 0 when the interval still contains 0.
int interval_sign(const ExactValue::Exponents& d, mpfr_prec_t prec) {
  Mpfr lo(prec), hi(prec), ln_lo(prec), ln_hi(prec), t_lo(prec), t_hi(prec);
  mpfr_set_zero(lo.v, 1);
  mpfr_set_zero(hi.v, 1);
  for (const auto& [p, e] : d) {
    mpfr_set_ui(ln_lo.v, static_cast<unsigned long>(p), MPFR_RNDN);  // exact: p < 2^53
    mpfr_set_ui(ln_hi.v, static_cast<unsigned long>(p), MPFR_RNDN);
    mpfr_log(ln_lo.v, ln_lo.v, MPFR_RNDD);
    mpfr_log(ln_hi.v, ln_hi.v, MPFR_RNDU);
    const long a = e.num();
    const long b = e.den();
    if (a > 0) {
      mpfr_mul_si(t_lo.v, ln_lo.v, a, MPFR_RNDD);
      mpfr_mul_si(t_hi.v, ln_hi.v, a, MPFR_RNDU);
    } else {
      mpfr_mul_si(t_lo.v, ln_hi.v, a, MPFR_RNDD);
      mpfr_mul_si(t_hi.v, ln_lo.v, a, MPFR_RNDU);
    }
    mpfr_div_si(t_lo.v, t_lo.v, b, MPFR_RNDD);
    mpfr_div_si(t_hi.v, t_hi.v, b, MPFR_RNDU);
    mpfr_add(lo.v, lo.v, t_lo.v, MPFR_RNDD);
    mpfr_add(hi.v, hi.v, t_hi.v, MPFR_RNDU);
  }
  if (mpfr_sgn(lo.v) > 0) return 1;
  if (mpfr_sgn(hi.v) < 0) return -1;
  return 0;
}

// Fast pass in doubles with a rigorous error bound. Each term e*ln(p) is
// off by at most a few ulps; the running sum adds one rounding per step.
int double_sign(const ExactValue::Exponents& d) {
  constexpr double u = std::numeric_limits<double>::epsilon();
  double sum = 0.0;
  double mag = 0.0;
  for (const auto& [p, e] : d) {
    double term = e.to_double() * std::log(static_cast<double>(p));
    sum += term;
    mag += std::fabs(term) + std::fabs(sum);
  }
  double err = 8.0 * u * mag + 1e-300;
  if (sum > err) return 1;
  if (sum < -err) return -1;
  return 0;
}

}  // namespace

ExactValue ExactValue::from_integer(std::uint64_t n) {
  if (n == 0) throw PreconditionError("ExactValue requires a positive value");
  ExactValue v;
  add_factors(v.exps_, n, 1);
  return v;
}

ExactValue ExactValue::from_rational(const Rational& q) {
  if (q.sign() <= 0) throw PreconditionError("ExactValue requires a positive value, got " + q.str());
  ExactValue v;
  add_factors(v.exps_, static_cast<std::uint64_t>(q.num()), 1);
  add_factors(v.exps_, static_cast<std::uint64_t>(q.den()), -1);
  return v;
}

ExactValue ExactValue::from_exponents(const Exponents& exps) {
  ExactValue v;
  for (const auto& [p, e] : exps) {
    if (!is_prime(p)) throw PreconditionError("ExactValue key " + std::to_string(p) + " is not prime");
    if (!e.is_zero()) v.exps_.emplace(p, e);
  }
  return v;
}

bool ExactValue::is_rational() const {
  for (const auto& [p, e] : exps_)
    if (!e.is_integer()) return false;
  return true;
}

Rational ExactValue::as_rational() const {
  if (!is_rational()) throw PreconditionError("value " + str() + " is irrational");
  Rational r(1);
  for (const auto& [p, e] : exps_) {
    Rational base(static_cast<std::int64_t>(p));
    if (e.sign() < 0) base = base.reciprocal();
    for (std::int64_t k = 0; k < e.abs().num(); ++k) r *= base;
  }
  return r;
}

ExactValue ExactValue::pow(const Rational& e) const {
  ExactValue v;
  if (e.is_zero()) return v;
  for (const auto& [p, x] : exps_) v.exps_.emplace(p, x * e);
  return v;
}

ExactValue& ExactValue::operator*=(const ExactValue& rhs) {
  for (const auto& [p, e] : rhs.exps_) {
    auto& x = exps_[p];
    x += e;
    if (x.is_zero()) exps_.erase(p);
  }
  return *this;
}

ExactValue& ExactValue::operator/=(const ExactValue& rhs) { return *this *= rhs.reciprocal(); }

double ExactValue::log() const {
  double s = 0.0;
  for (const auto& [p, e] : exps_) s += e.to_double() * std::log(static_cast<double>(p));
  return s;
}

double ExactValue::to_double() const { return std::exp(log()); }

std::string ExactValue::str() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exps_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e == Rational(1)) continue;
    if (e.is_integer() && e.sign() > 0)
      os << '^' << e.str();
    else
      os << "^(" << e.str() << ')';
  }
  return os.str();
}

std::strong_ordering compare(const ExactValue& a, const ExactValue& b) {
  g_last_precision = 0;
  if (a == b) return std::strong_ordering::equal;
  const ExactValue d = a / b;
  // d is not 1, so sum e_p ln p != 0 by unique factorization; some
  // precision separates it from zero.
  int s = double_sign(d.exponents());
  for (mpfr_prec_t prec = 128; s == 0; prec *= 2) {
    if (prec > 4096)
      throw UndecidedError("comparison of " + a.str() + " and " + b.str() + " undecided at 4096 bits");
    g_last_precision = static_cast<unsigned>(prec);
    s = interval_sign(d.exponents(), prec);
  }
  return s > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

unsigned last_compare_precision() { return g_last_precision; }

}  // namespace blc
