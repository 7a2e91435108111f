#pragma once

// Yu's explicit upper bound for v_p(x_1^{b_1} ... x_m^{b_m} - 1), evaluated
// with intervals for side-by-side comparison with the Padé bounds.

#include <optional>
#include <stdexcept>
#include <vector>

#include "plinform/arith/interval.hpp"
#include "plinform/arith/rational.hpp"

namespace plinform {

struct YuParams {
  unsigned long m = 0;
  BigInt p;
  std::vector<BigRational> A;
  std::vector<BigInt> b;
  BigRational B;
  BigRational B_m;
  BigRational delta;
  /// The rationals x_i/y_i, if known; used only to validate A_i.
  std::optional<std::vector<BigRational>> bases;

  void validate(mpfr_prec_t prec = kDefaultPrecision) const {
    require_prime(p);
    if (m < 2) throw std::invalid_argument("Yu's bound needs m >= 2");
    if (A.size() != m || b.size() != m) throw std::invalid_argument("A and b must have m entries");
    if (delta <= 0 || delta > BigRational(1, 2)) throw std::invalid_argument("delta must lie in (0, 1/2]");
    const Interval e = Interval::e(prec);
    for (size_t i = 0; i < m; ++i) {
      if (!(Interval::point(A[i], prec) - e).certainly_nonnegative())
        throw std::invalid_argument("A_i must be >= e");
      if (b[i] == 0) throw std::invalid_argument("b_i must be nonzero");
      if (abs(b[i]) > B) throw std::invalid_argument("B must be >= max |b_i|");
      if (bases) {
        const BigRational& x = (*bases)[i];
        if (A[i] < abs(BigRational(x.get_num())) || A[i] < BigRational(x.get_den()))
          throw std::invalid_argument("A_i must be >= max{|x_i|, |y_i|}");
      }
    }
    if (B < 3) throw std::invalid_argument("B must be >= 3");
    if (B_m > B || B_m < abs(BigRational(b.back()))) throw std::invalid_argument("need B >= B_m >= |b_m|");
    const long vm = integer_valuation(b.back(), p);
    for (const auto& bi : b)
      if (integer_valuation(bi, p) < vm) throw std::invalid_argument("need v_p(b_m) <= v_p(b_i) for all i");
  }
};

struct YuBound {
  /// Upper bound on the valuation.
  Interval valuation;
  /// log10 of the implied lower bound p^{-valuation} on the p-adic absolute value.
  Interval log10_lower_bound;
  Interval log_T;
};

inline YuBound yu_bound(const YuParams& params, mpfr_prec_t prec = kDefaultPrecision) {
  params.validate(prec);
  const auto num = [&](const BigRational& x) { return Interval::point(x, prec); };
  const long m = static_cast<long>(params.m);
  const Interval log_p = log_of(params.p, prec);
  Interval prod_all = num(1);
  Interval prod_head = num(1);
  for (size_t i = 0; i < params.m; ++i) {
    const Interval la = log_of(params.A[i], prec);
    prod_all = prod_all * la;
    if (i + 1 < params.m) prod_head = prod_head * la;
  }
  YuBound out;
  // T = 2 B_m / delta * e^{(m+1)(6m+5)} p^{m+1} prod_{i<m} log A_i
  out.log_T = log(num(2) * num(params.B_m) / num(params.delta)) + num((m + 1) * (6 * m + 5)) +
              num(m + 1) * log_p + log(prod_head);
  const Interval factor = pow(num(16) * Interval::e(prec), static_cast<unsigned long>(2 * (m + 1))) *
                          pow(num(m), num(BigRational(3, 2))) * pow(log(num(2 * m)), 2UL) *
                          Interval::point(params.p, prec) / pow(log_p, 2UL);
  out.valuation = factor * max(prod_all * out.log_T,
                               num(params.delta) * num(params.B) / num(params.B_m));
  out.log10_lower_bound = -out.valuation * log_p / log(num(10));
  return out;
}

}  // namespace plinform
