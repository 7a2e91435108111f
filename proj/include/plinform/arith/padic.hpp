#pragma once

// p-adic numbers known to finite precision, and the p-adic logarithm.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

#include "plinform/arith/rational.hpp"

namespace plinform {

namespace detail {

inline BigInt mod_nonneg(const BigInt& x, const BigInt& modulus) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

inline BigInt mod_inverse(const BigInt& x, const BigInt& modulus) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw std::domain_error("no inverse of " + x.get_str() + " modulo " + modulus.get_str());
  return r;
}

// A p-adic unit rational a/b reduced modulo `modulus` (a power of p).
inline BigInt unit_rational_mod(const BigRational& q, const BigInt& modulus) {
  if (modulus == 1) return 0;
  return mod_nonneg(q.get_num() * mod_inverse(q.get_den(), modulus), modulus);
}

}  // namespace detail

/// A p-adic number p^valuation * unit, with the unit known modulo
/// p^precision. The zero marker stands for a value known only to be
/// divisible by p^A (A = absolute precision, +infinity for exact zero).
class PadicValue {
 public:
  static PadicValue exact_zero(const BigInt& p) { return zero_marker(p, Valuation::infinity()); }

  static PadicValue zero_marker(const BigInt& p, Valuation absolute_precision) {
    PadicValue z(p);
    z.zero_ = true;
    z.absolute_ = absolute_precision;
    return z;
  }

  /// The rational x as a p-adic number known modulo p^absolute_precision.
  static PadicValue from_rational(const BigRational& x, const BigInt& p, long absolute_precision) {
    if (x == 0) return exact_zero(p);
    const long v = padic_valuation(x, p).value();
    if (absolute_precision <= v) return zero_marker(p, absolute_precision);
    BigRational unit = x;
    if (v > 0) unit /= BigRational(pow_int(p, static_cast<unsigned long>(v)));
    if (v < 0) unit *= BigRational(pow_int(p, static_cast<unsigned long>(-v)));
    PadicValue r(p);
    r.valuation_ = v;
    r.precision_ = absolute_precision - v;
    r.unit_ = detail::unit_rational_mod(unit, r.unit_modulus());
    return r;
  }

  /// p^shift * digits, known modulo p^absolute_precision.
  static PadicValue from_scaled_residue(const BigInt& p, long shift, const BigInt& digits,
                                        long absolute_precision) {
    if (absolute_precision <= shift) return zero_marker(p, absolute_precision);
    const BigInt modulus = pow_int(p, static_cast<unsigned long>(absolute_precision - shift));
    BigInt s = detail::mod_nonneg(digits, modulus);
    if (s == 0) return zero_marker(p, absolute_precision);
    const long e = integer_valuation(s, p);
    if (e > 0) mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), pow_int(p, static_cast<unsigned long>(e)).get_mpz_t());
    PadicValue r(p);
    r.valuation_ = shift + e;
    r.precision_ = absolute_precision - r.valuation_;
    r.unit_ = detail::mod_nonneg(s, r.unit_modulus());
    return r;
  }

  [[nodiscard]] const BigInt& prime() const { return prime_; }
  [[nodiscard]] bool is_zero_marker() const { return zero_; }
  [[nodiscard]] bool is_exact_zero() const { return zero_ && absolute_.is_infinite(); }

  /// Exact valuation; +infinity for the zero marker (only a lower bound is known then).
  [[nodiscard]] Valuation valuation() const { return zero_ ? Valuation::infinity() : Valuation(valuation_); }
  /// Certified lower bound on the valuation of the represented number.
  [[nodiscard]] Valuation valuation_lower_bound() const { return zero_ ? absolute_ : Valuation(valuation_); }
  /// Relative precision N: the unit is known modulo p^N. Zero for the marker.
  [[nodiscard]] long precision() const { return zero_ ? 0 : precision_; }
  [[nodiscard]] Valuation absolute_precision() const {
    return zero_ ? absolute_ : Valuation(valuation_ + precision_);
  }
  [[nodiscard]] const BigInt& unit() const { return unit_; }

  /// Representative of the value modulo p^a; requires 0 <= a <= absolute precision
  /// and a nonnegative valuation.
  [[nodiscard]] BigInt residue(long a) const {
    if (absolute_precision() < Valuation(a)) throw std::domain_error("residue beyond known precision");
    if (zero_) return 0;
    if (valuation_ < 0) throw std::domain_error("residue of a non-integral p-adic value");
    if (valuation_ >= a) return 0;
    const BigInt modulus = pow_int(prime_, static_cast<unsigned long>(a));
    return detail::mod_nonneg(pow_int(prime_, static_cast<unsigned long>(valuation_)) * unit_, modulus);
  }

  PadicValue operator-() const {
    if (zero_) return *this;
    PadicValue r = *this;
    r.unit_ = detail::mod_nonneg(-unit_, unit_modulus());
    return r;
  }

  friend PadicValue operator+(const PadicValue& a, const PadicValue& b) {
    check_same_prime(a, b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const long abs_prec = std::min(a.absolute_precision(), b.absolute_precision()).value();
    if (a.zero_ && b.zero_) return zero_marker(a.prime_, abs_prec);
    if (a.zero_) return b.truncated(abs_prec);
    if (b.zero_) return a.truncated(abs_prec);
    const long w = std::min(a.valuation_, b.valuation_);
    const BigInt digits = pow_int(a.prime_, static_cast<unsigned long>(a.valuation_ - w)) * a.unit_ +
                          pow_int(a.prime_, static_cast<unsigned long>(b.valuation_ - w)) * b.unit_;
    return from_scaled_residue(a.prime_, w, digits, abs_prec);
  }

  friend PadicValue operator-(const PadicValue& a, const PadicValue& b) { return a + (-b); }

  friend PadicValue operator*(const PadicValue& a, const PadicValue& b) {
    check_same_prime(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return exact_zero(a.prime_);
    if (a.zero_ || b.zero_) return zero_marker(a.prime_, a.valuation_lower_bound() + b.valuation_lower_bound());
    PadicValue r(a.prime_);
    r.valuation_ = a.valuation_ + b.valuation_;
    r.precision_ = std::min(a.precision_, b.precision_);
    r.unit_ = detail::mod_nonneg(a.unit_ * b.unit_, r.unit_modulus());
    return r;
  }

  /// Multiplication by an exact rational; relative precision is preserved.
  [[nodiscard]] PadicValue scaled(const BigRational& q) const {
    if (q == 0 || is_exact_zero()) return exact_zero(prime_);
    const long e = padic_valuation(q, prime_).value();
    if (zero_) return zero_marker(prime_, absolute_ + Valuation(e));
    BigRational unit = q;
    if (e > 0) unit /= BigRational(pow_int(prime_, static_cast<unsigned long>(e)));
    if (e < 0) unit *= BigRational(pow_int(prime_, static_cast<unsigned long>(-e)));
    PadicValue r = *this;
    r.valuation_ += e;
    r.unit_ = detail::mod_nonneg(unit_ * detail::unit_rational_mod(unit, unit_modulus()), unit_modulus());
    return r;
  }

  /// Same coset at the coarser of the two precisions.
  [[nodiscard]] bool agrees_with(const PadicValue& other) const { return (*this - other).is_zero_marker(); }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    if (zero_) {
      os << "O(" << prime_ << "^" << absolute_ << ")";
    } else {
      os << prime_ << "^" << valuation_ << " * " << unit_ << " + O(" << prime_ << "^" << valuation_ + precision_
         << ")";
    }
    return os.str();
  }

 private:
  explicit PadicValue(BigInt p) : prime_(std::move(p)) {}

  [[nodiscard]] BigInt unit_modulus() const { return pow_int(prime_, static_cast<unsigned long>(precision_)); }

  [[nodiscard]] PadicValue truncated(long abs_prec) const {
    if (Valuation(abs_prec) >= absolute_precision()) return *this;
    return from_scaled_residue(prime_, valuation_, unit_, abs_prec);
  }

  static void check_same_prime(const PadicValue& a, const PadicValue& b) {
    if (a.prime_ != b.prime_) throw std::invalid_argument("p-adic values over different primes");
  }

  BigInt prime_;
  long valuation_ = 0;
  BigInt unit_ = 0;
  long precision_ = 0;
  bool zero_ = false;
  Valuation absolute_ = Valuation::infinity();
};

/// Truncation index for the series of log(1+t) with v_p(t) = v >= 1: the
/// smallest n0 >= 1 such that every term n >= n0 has valuation at least
/// (n+1)v - floor(log_p(n+1)) >= absolute_precision. Uses that x*v - log_p(x)
/// is increasing for x >= 2.
inline unsigned long log_truncation_index(long v, const BigInt& p, long absolute_precision) {
  if (v < 1) throw std::domain_error("log truncation requires v_p(t) >= 1");
  auto dropped_ok = [&](unsigned long x) {  // x = n0 + 1
    const long excess = static_cast<long>(x) * v - absolute_precision;
    if (excess < 0) return false;
    // p^excess >= x  <=>  x*v - log_p(x) >= absolute_precision
    if (excess >= 64) return true;
    return pow_int(p, static_cast<unsigned long>(excess)) >= BigInt(x);
  };
  unsigned long x = 2;
  if (absolute_precision > 0) x = std::max<unsigned long>(2, static_cast<unsigned long>(absolute_precision / v));
  while (!dropped_ok(x)) ++x;
  return x - 1;
}

/// Certified lower bound on v_p of the n-th log term t^(n+1)/(n+1).
inline long log_term_valuation_bound(long v, const BigInt& p, unsigned long n) {
  long floor_log = 0;
  BigInt power = p;
  while (power <= BigInt(n + 1)) {
    ++floor_log;
    power *= p;
  }
  return static_cast<long>(n + 1) * v - floor_log;
}

/// log(1+t) modulo p^absolute_precision as an integer residue.
inline BigInt padic_log_residue(const BigRational& t, const BigInt& p, long absolute_precision) {
  const long v = padic_valuation(t, p).value();
  if (v < 1) throw std::domain_error("p-adic log(1+t) needs |t|_p < 1");
  if (absolute_precision <= 0) return 0;
  const unsigned long n0 = log_truncation_index(v, p, absolute_precision);
  if (log_term_valuation_bound(v, p, n0) < absolute_precision)
    throw InternalInconsistency("log truncation left a term above the target precision");

  const BigInt modulus = pow_int(p, static_cast<unsigned long>(absolute_precision));
  BigRational tau = t / BigRational(pow_int(p, static_cast<unsigned long>(v)));
  const BigInt tau_mod = detail::unit_rational_mod(tau, modulus);

  BigInt sum = 0;
  BigInt tau_power = 1;
  for (unsigned long n = 0; n < n0; ++n) {
    tau_power = detail::mod_nonneg(tau_power * tau_mod, modulus);
    const unsigned long x = n + 1;
    const long e = integer_valuation(BigInt(x), p);
    const long shift = static_cast<long>(x) * v - e;
    if (shift >= absolute_precision) continue;
    BigInt cofactor(x);
    if (e > 0) mpz_divexact(cofactor.get_mpz_t(), cofactor.get_mpz_t(),
                            pow_int(p, static_cast<unsigned long>(e)).get_mpz_t());
    const BigInt sub_modulus = pow_int(p, static_cast<unsigned long>(absolute_precision - shift));
    BigInt term = detail::mod_nonneg(tau_power * detail::mod_inverse(cofactor, sub_modulus), sub_modulus);
    term *= pow_int(p, static_cast<unsigned long>(shift));
    if (n % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return detail::mod_nonneg(sum, modulus);
}

/// p-adic log(1+t) for v_p(t) >= 1 with relative precision >= target_precision.
/// The absolute precision is escalated until the valuation is pinned; if the
/// sum is still zero modulo p^cap the zero marker is returned.
inline PadicValue padic_log(const BigRational& t, const BigInt& p, long target_precision,
                            long absolute_cap = 1L << 20) {
  require_prime(p);
  if (target_precision < 1) throw std::invalid_argument("padic_log target precision must be >= 1");
  if (t == 0) return PadicValue::exact_zero(p);
  const long v = padic_valuation(t, p).value();
  if (v < 1) throw std::domain_error("p-adic log(1+t) diverges: v_p(t) = " + std::to_string(v) + " < 1");
  long absolute = v + target_precision;
  while (true) {
    PadicValue value = PadicValue::from_scaled_residue(p, 0, padic_log_residue(t, p, absolute), absolute);
    if (!value.is_zero_marker() && value.precision() >= target_precision) return value;
    if (absolute >= absolute_cap) return value;
    long next = value.is_zero_marker() ? 2 * absolute : value.valuation().value() + target_precision;
    absolute = std::min(std::max(next, absolute + 1), absolute_cap);
  }
}

}  // namespace plinform
