#pragma once

// Exact integers and rationals, p-adic valuations and the lcm(1..n) table.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plinform {

using BigInt = mpz_class;
/// Canonical big rational: gmpxx keeps gcd(num, den) = 1 and den > 0.
using BigRational = mpq_class;

/// Raised when an exact identity that the construction guarantees is
/// observed to fail. Always indicates a bug, never bad user input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A p-adic valuation: an integer, or +infinity for zero.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr Valuation(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] long value() const {
    if (infinite_) throw std::domain_error("valuation of zero is +infinity");
    return value_;
  }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, Valuation v) {
    return v.infinite_ ? (os << "+inf") : (os << v.value_);
  }

 private:
  long value_ = 0;
  bool infinite_ = false;
};

inline bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 50) != 0;
}

inline void require_prime(const BigInt& p) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + p.get_str() + " is not prime");
}

/// v_p of a nonzero integer, by repeated exact division.
inline long integer_valuation(const BigInt& x, const BigInt& p) {
  if (x == 0) throw std::domain_error("integer_valuation of zero");
  BigInt rest = x;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

/// v_p(x) for a rational x; +infinity for x = 0. Rejects non-prime p.
inline Valuation padic_valuation(const BigRational& x, const BigInt& p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return integer_valuation(x.get_num(), p) - integer_valuation(x.get_den(), p);
}

inline BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigRational pow_rat(const BigRational& base, unsigned long exp) {
  BigRational r(pow_int(base.get_num(), exp), pow_int(base.get_den(), exp));
  r.canonicalize();
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Parses "a", "a/b", or a plain decimal "1.25" / "-0.1" exactly.
inline BigRational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto bad = [&] { return std::invalid_argument("malformed rational literal '" + s + "'"); };
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw bad();
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto scale = s.size() - dot - 1;
    BigInt num;
    if (digits.empty() || digits == "-" || digits == "+" || num.set_str(digits, 10) != 0) throw bad();
    BigRational r(num, pow_int(BigInt(10), scale));
    r.canonicalize();
    return r;
  }
  BigRational r;
  if (r.set_str(s, 10) != 0) throw bad();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const BigRational& q) { return q.get_str(); }

namespace detail {

// d_n for n = 0..size-1 (d_0 = 1). Grows under an exclusive lock; lookups
// take a shared lock and copy out, so concurrent readers never see a resize.
class LcmTable {
 public:
  BigInt get(unsigned long n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    if (values_.empty()) values_.emplace_back(1);
    while (values_.size() <= n) {
      const unsigned long next = values_.size();
      BigInt d = values_.back();
      if (const auto prime = prime_power_base(next); prime != 0) d *= prime;
      values_.push_back(std::move(d));
    }
    return values_[n];
  }

 private:
  // q if n = q^e for a prime q, else 0.
  static unsigned long prime_power_base(unsigned long n) {
    if (n < 2) return 0;
    unsigned long m = n;
    unsigned long q = 0;
    for (unsigned long c = 2; c * c <= m; ++c) {
      if (m % c == 0) {
        q = c;
        break;
      }
    }
    if (q == 0) return n;
    while (m % q == 0) m /= q;
    return m == 1 ? q : 0;
  }

  std::shared_mutex mutex_;
  std::vector<BigInt> values_;
};

inline LcmTable& lcm_table() {
  static LcmTable table;
  return table;
}

}  // namespace detail

/// d_n = lcm(1, ..., n). Cached; safe to call concurrently.
inline BigInt lcm_upto(unsigned long n) {
  if (n < 1) throw std::invalid_argument("lcm_upto requires n >= 1");
  return detail::lcm_table().get(n);
}

}  // namespace plinform
