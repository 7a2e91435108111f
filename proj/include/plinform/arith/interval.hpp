#pragma once

// Real intervals with dyadic (MPFR) endpoints and outward rounding.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "plinform/arith/rational.hpp"

namespace plinform {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Owning handle for one mpfr_t.
class Dyadic {
 public:
  explicit Dyadic(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
  }
  Dyadic(const Dyadic& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Dyadic(Dyadic&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }
  Dyadic& operator=(const Dyadic& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Dyadic& operator=(Dyadic&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~Dyadic() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  [[nodiscard]] mpfr_srcptr get() const { return value_; }
  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  [[nodiscard]] double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }

  /// Decimal with `digits` significant digits, rounded in the given direction.
  [[nodiscard]] std::string to_string(mpfr_rnd_t rnd, int digits = 20) const {
    if (mpfr_zero_p(value_)) return "0";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (mpfr_nan_p(value_)) return "nan";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, rnd);
    std::string mantissa(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mantissa.empty() && mantissa[0] == '-') {
      sign = "-";
      mantissa.erase(0, 1);
    }
    std::string out = sign + mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
    return out;
  }

 private:
  mpfr_t value_;
};

/// A closed real interval [lo, hi]. Every operation returns an enclosure
/// of the exact image of its arguments.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}

  static Interval point(const BigRational& q, mpfr_prec_t prec = kDefaultPrecision) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval point(const BigInt& z, mpfr_prec_t prec = kDefaultPrecision) {
    Interval r(prec);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static Interval point(long v, mpfr_prec_t prec = kDefaultPrecision) { return point(BigInt(v), prec); }

  /// Hull of two rationals (order irrelevant).
  static Interval hull(const BigRational& a, const BigRational& b, mpfr_prec_t prec = kDefaultPrecision) {
    return point(a, prec).join(point(b, prec));
  }

  static Interval e(mpfr_prec_t prec = kDefaultPrecision) { return exp(point(1L, prec)); }

  /// [lo, hi] rounded outward to `prec` bits.
  static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
    if (mpfr_greater_p(r.lo_.get(), r.hi_.get())) throw std::invalid_argument("interval endpoints out of order");
    return r;
  }

  [[nodiscard]] Interval lower_point() const { return from_endpoints(lo(), lo(), precision()); }
  [[nodiscard]] Interval upper_point() const { return from_endpoints(hi(), hi(), precision()); }

  [[nodiscard]] mpfr_srcptr lo() const { return lo_.get(); }
  [[nodiscard]] mpfr_srcptr hi() const { return hi_.get(); }
  [[nodiscard]] const Dyadic& lower() const { return lo_; }
  [[nodiscard]] const Dyadic& upper() const { return hi_; }
  [[nodiscard]] mpfr_prec_t precision() const { return lo_.precision(); }
  [[nodiscard]] double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  [[nodiscard]] double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  [[nodiscard]] double mid_double() const { return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN)); }

  /// Upper bound on hi - lo.
  [[nodiscard]] Dyadic width() const {
    Dyadic w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  [[nodiscard]] bool contains(const BigRational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
  }
  [[nodiscard]] bool contains(const Interval& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo()) && mpfr_greaterequal_p(hi_.get(), inner.hi());
  }
  [[nodiscard]] bool overlaps(const Interval& other) const {
    return mpfr_lessequal_p(lo_.get(), other.hi()) && mpfr_lessequal_p(other.lo(), hi_.get());
  }
  [[nodiscard]] bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  [[nodiscard]] bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  [[nodiscard]] bool certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
  [[nodiscard]] bool certainly_nonpositive() const { return mpfr_sgn(hi_.get()) <= 0; }
  [[nodiscard]] bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

  [[nodiscard]] Interval join(const Interval& other) const {
    Interval r(std::max(precision(), other.precision()));
    mpfr_min(r.lo_.get(), lo_.get(), other.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), hi_.get(), other.hi(), MPFR_RNDU);
    return r;
  }

  /// Same bounds rounded outward to a new precision.
  [[nodiscard]] Interval with_precision(mpfr_prec_t prec) const {
    Interval r(prec);
    mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(common(a, b));
    mpfr_add(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(common(a, b));
    mpfr_sub(r.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = common(a, b);
    Interval r(prec);
    Dyadic t(prec);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto* x : as) {
      for (auto* y : bs) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
      throw std::domain_error("interval division by an interval containing 0 (divisor lower endpoint " +
                              b.lo_.to_string(MPFR_RNDD) + ")");
    const mpfr_prec_t prec = common(a, b);
    Interval r(prec);
    Dyadic t(prec);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto* x : as) {
      for (auto* y : bs) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  friend Interval exp(const Interval& x) {
    Interval r(x.precision());
    mpfr_exp(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
  }
  friend Interval log(const Interval& x) {
    if (!x.certainly_positive())
      throw std::domain_error("interval log needs a positive argument (lower endpoint " +
                              x.lo_.to_string(MPFR_RNDD) + ")");
    Interval r(x.precision());
    mpfr_log(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
  }
  friend Interval sqrt(const Interval& x) {
    if (!x.certainly_nonnegative())
      throw std::domain_error("interval sqrt needs a nonnegative argument (lower endpoint " +
                              x.lo_.to_string(MPFR_RNDD) + ")");
    Interval r(x.precision());
    mpfr_sqrt(r.lo_.get(), x.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), x.hi(), MPFR_RNDU);
    return r;
  }
  /// x^n for an integer exponent n >= 0.
  friend Interval pow(const Interval& x, unsigned long n) {
    Interval r(x.precision());
    if (n == 0) return point(1L, x.precision());
    if (x.certainly_nonnegative()) {
      mpfr_pow_ui(r.lo_.get(), x.lo(), n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_.get(), x.hi(), n, MPFR_RNDU);
    } else if (x.certainly_nonpositive()) {
      Interval m = pow(-x, n);
      return n % 2 == 0 ? m : -m;
    } else if (n % 2 == 1) {
      mpfr_pow_ui(r.lo_.get(), x.lo(), n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_.get(), x.hi(), n, MPFR_RNDU);
    } else {
      Dyadic a(x.precision());
      Dyadic b(x.precision());
      mpfr_pow_ui(a.get(), x.lo(), n, MPFR_RNDU);
      mpfr_pow_ui(b.get(), x.hi(), n, MPFR_RNDU);
      mpfr_set_zero(r.lo_.get(), 1);
      mpfr_max(r.hi_.get(), a.get(), b.get(), MPFR_RNDU);
    }
    return r;
  }
  friend Interval max(const Interval& a, const Interval& b) {
    Interval r(common(a, b));
    mpfr_max(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }
  friend Interval min(const Interval& a, const Interval& b) {
    Interval r(common(a, b));
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  /// x^y = exp(y log x) for x > 0.
  friend Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << "[" << x.lo_.to_string(MPFR_RNDD, 12) << ", " << x.hi_.to_string(MPFR_RNDU, 12) << "]";
  }

 private:
  static mpfr_prec_t common(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

  Dyadic lo_;
  Dyadic hi_;
};

inline Interval log10(const Interval& x) { return log(x) / log(Interval::point(10L, x.precision())); }

/// Operator tag for the generic elementary-function entry point.
enum class ElementaryOp { Add, Mul, Div, Exp, Ln, Pow, Neg };

/// Dispatches one elementary operation on interval arguments (Pow is x^y).
inline Interval interval_elementary(ElementaryOp op, const Interval& x, const Interval* y = nullptr) {
  auto second = [&]() -> const Interval& {
    if (y == nullptr) throw std::invalid_argument("binary interval operation needs two arguments");
    return *y;
  };
  switch (op) {
    case ElementaryOp::Add:
      return x + second();
    case ElementaryOp::Mul:
      return x * second();
    case ElementaryOp::Div:
      return x / second();
    case ElementaryOp::Exp:
      return exp(x);
    case ElementaryOp::Ln:
      return log(x);
    case ElementaryOp::Pow:
      return pow(x, second());
    case ElementaryOp::Neg:
      return -x;
  }
  throw std::invalid_argument("unknown interval operation");
}

/// log of a positive exact integer, possibly far beyond double range.
inline Interval log_of(const BigInt& z, mpfr_prec_t prec = kDefaultPrecision) { return log(Interval::point(z, prec)); }

inline Interval log_of(const BigRational& q, mpfr_prec_t prec = kDefaultPrecision) {
  return log_of(q.get_num(), prec) - log_of(q.get_den(), prec);
}

}  // namespace plinform
