#pragma once

// Real-valued constants of the lower bounds, all carried as intervals.
// Quantities are kept in logarithmic form: c1 near 10^-2655 or H near
// 10^6482 are only ever touched through their logarithms.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plinform/arith/interval.hpp"
#include "plinform/arith/rational.hpp"
#include "plinform/pade.hpp"

namespace plinform {

/// Rosser's constant: log d_n < 1.03883 n.
inline BigRational rosser_constant() { return BigRational(103883, 100000); }

/// A linear form lambda_0 + sum lambda_j log(1 + alpha_j) together with the
/// height H it is measured against.
struct ProblemInstance {
  AlphaVector alphas;
  BigInt H;
  std::optional<BigRational> epsilon;
  std::optional<std::vector<BigInt>> lambdas;

  ProblemInstance(AlphaVector a, BigInt height, std::optional<BigRational> eps = std::nullopt,
                  std::optional<std::vector<BigInt>> lam = std::nullopt)
      : alphas(std::move(a)), H(std::move(height)), epsilon(std::move(eps)), lambdas(std::move(lam)) {
    if (!alphas.has_prime()) throw std::invalid_argument("problem instance needs a prime");
    if (H < 1) throw std::invalid_argument("H must be a positive integer");
    if (lambdas) {
      if (lambdas->size() != alphas.m() + 1)
        throw std::invalid_argument("lambdas must have m+1 = " + std::to_string(alphas.m() + 1) + " entries");
      bool any = false;
      for (const auto& l : *lambdas) {
        if (abs(l) > H) throw std::invalid_argument("max |lambda_i| exceeds H");
        any = any || l != 0;
      }
      if (!any) throw std::invalid_argument("lambdas must not all be zero");
    }
  }

  [[nodiscard]] unsigned long m() const { return alphas.m(); }
  [[nodiscard]] const BigInt& prime() const { return alphas.prime(); }
};

/// Smallest integer >= 10^log10_value.
inline BigInt height_from_log10(const BigRational& log10_value) {
  if (log10_value < 0) throw std::invalid_argument("log10 H must be nonnegative");
  if (log10_value.get_den() == 1) return pow_int(10, log10_value.get_num().get_ui());
  const double approx_bits = log10_value.get_d() * 3.3219280948873623 + 128;
  const auto prec = static_cast<mpfr_prec_t>(approx_bits);
  const Interval ten_power = exp(Interval::point(log10_value, prec) * log(Interval::point(10L, prec)));
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), ten_power.hi(), MPFR_RNDU);
  return out;
}

/// The logarithms every constant is built from.
struct InstanceLogs {
  unsigned long m = 0;
  mpfr_prec_t prec = kDefaultPrecision;
  Interval l0, log2, log3, log_q, log_m, log_alpha, log_f;

  [[nodiscard]] Interval num(long v) const { return Interval::point(v, prec); }
  [[nodiscard]] Interval num(const BigRational& v) const { return Interval::point(v, prec); }
};

/// log f(m, M, Q, alpha) where f = 2^-1 3^-m e^{-1.03883 m} Q^-m M^-m alpha^{-m-1}.
inline Interval log_f_value(unsigned long m, const Interval& log_m_big, const Interval& log_q,
                            const Interval& log_alpha) {
  const mpfr_prec_t prec = log_q.precision();
  const Interval mi = Interval::point(static_cast<long>(m), prec);
  return -log(Interval::point(2L, prec)) - mi * log(Interval::point(3L, prec)) -
         Interval::point(rosser_constant(), prec) * mi - mi * log_q - mi * log_m_big -
         Interval::point(static_cast<long>(m + 1), prec) * log_alpha;
}

inline Interval f_value(unsigned long m, const BigRational& M, const BigInt& Q, const BigRational& alpha,
                        mpfr_prec_t prec = kDefaultPrecision) {
  if (M <= 0 || Q <= 0 || alpha <= 0) throw std::invalid_argument("f needs positive M, Q, alpha");
  return exp(log_f_value(m, log_of(M, prec), log_of(Q, prec), log_of(alpha, prec)));
}

inline InstanceLogs instance_logs(const AlphaVector& alphas, mpfr_prec_t prec) {
  InstanceLogs out;
  out.m = alphas.m();
  out.prec = prec;
  out.l0 = Interval::point(rosser_constant(), prec);
  out.log2 = log(Interval::point(2L, prec));
  out.log3 = log(Interval::point(3L, prec));
  out.log_q = log_of(alphas.Q(), prec);
  out.log_m = log_of(alphas.M(), prec);
  out.log_alpha = alphas.log_padic_size(prec);
  out.log_f = log_f_value(out.m, out.log_m, out.log_q, out.log_alpha);
  return out;
}

/// Constants of the M > 1 case. Requires log f > 0.
struct ConstantsMgt1 {
  Interval R1;
  Interval log_c1;
  /// X = -(m+1) log alpha / log f; omega_1 tends to X as H grows.
  Interval X;

  /// omega_1(H); needs log H + R1 > 0.
  [[nodiscard]] Interval omega1(const Interval& log_h) const {
    const Interval one = Interval::point(1L, log_h.precision());
    return (X - one) * (one + log(log_h + R1) / log_h) + one;
  }
};

inline ConstantsMgt1 constants_Mgt1(const AlphaVector& alphas, mpfr_prec_t prec = kDefaultPrecision) {
  if (alphas.M() <= 1) throw std::domain_error("M > 1 constants need M > 1");
  const InstanceLogs L = instance_logs(alphas, prec);
  if (!L.log_f.certainly_positive()) throw std::domain_error("M > 1 constants need f > 1 (log log f undefined)");
  const long m = static_cast<long>(L.m);
  const Interval mi = L.num(m);
  const Interval log_m_minus_1 = log_of(alphas.M() - 1, prec);
  ConstantsMgt1 c;
  c.R1 = L.l0 * mi + mi * L.log_q + log(L.num(m + 1)) + L.num(m - 1) * L.log2 + L.num(m + 1) * L.log_m -
         log_m_minus_1 + log(L.num(m + 2)) + L.log_alpha - log(L.log_f);
  c.X = -(L.num(m + 1) * L.log_alpha) / L.log_f;
  const Interval one = L.num(1);
  c.log_c1 = log_m_minus_1 - mi * log(L.num(6)) - log(L.num(m + 1)) - L.num(2) * L.l0 * mi -
             L.num(2 * m) * L.log_q - L.num(2 * m + 1) * L.log_m + (one - c.X) * (c.R1 + one);
  return c;
}

/// Constants of the M < 1 case. Requires log f > 0.
struct ConstantsMlt1 {
  Interval R2;
  Interval log_c2;
  /// K = log(2 3^m Q^m e^{1.03883 m}).
  Interval K;
  Interval log_f;

  /// omega_2(H); needs log H > 1.
  [[nodiscard]] Interval omega2(const Interval& log_h) const {
    const mpfr_prec_t prec = log_h.precision();
    return Interval::point(1L, prec) + log(log_h) / log_h + Interval::point(11L, prec) * K / log_f;
  }
};

inline ConstantsMlt1 constants_Mlt1(const AlphaVector& alphas, mpfr_prec_t prec = kDefaultPrecision) {
  if (alphas.M() >= 1) throw std::domain_error("M < 1 constants need M < 1");
  const InstanceLogs L = instance_logs(alphas, prec);
  if (!L.log_f.certainly_positive()) throw std::domain_error("M < 1 constants need log f > 0");
  const long m = static_cast<long>(L.m);
  const Interval mi = L.num(m);
  const Interval half = L.num(BigRational(1, 2));
  ConstantsMlt1 c;
  c.log_f = L.log_f;
  c.K = L.log2 + mi * L.log3 + mi * L.log_q + L.l0 * mi;
  c.R2 = (mi * half + L.num(1)) * L.log2 + L.num(BigRational(519415, 1000000)) * mi + mi * half * L.log_q +
         half * (log(mi) + log(L.num(m + 1)) + log(L.num(m + 2)) + L.log_alpha);
  // c2 = (26 m (m+1) (6 Q^2 e^{2.07766})^m e^{5K/log f})^{-1}
  c.log_c2 = -(log(L.num(26)) + log(mi) + log(L.num(m + 1)) +
               mi * (log(L.num(6)) + L.num(2) * L.log_q + L.num(2) * L.l0) + L.num(5) * c.K / L.log_f);
  return c;
}

}  // namespace plinform
