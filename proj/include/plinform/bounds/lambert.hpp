#pragma once

#include <stdexcept>
#include <utility>

#include "plinform/arith/interval.hpp"
#include "plinform/arith/rational.hpp"

namespace plinform {

struct LambertOptions {
  double target_width = 1e-12;
  int max_iterations = 400;
};

/// Two-sided bound -log(t+1) - t - 2 + log(e-1) < W_{-1}(-e^{-t-1}) <= -log(t+1) - t - 1, t >= 0.
inline std::pair<Interval, Interval> alzahrani_bracket(const Interval& t) {
  const mpfr_prec_t prec = t.precision();
  const Interval one = Interval::point(1L, prec);
  const Interval upper = -log(t + one) - t - one;
  const Interval lower = upper - one + log(Interval::e(prec) - one);
  return {lower, upper};
}

namespace detail {

// g(w) = w + log(-w) + s vanishes at w = W_{-1}(-e^{-s}) and is increasing on w < -1.
inline Interval lambert_residual(const Dyadic& w, const Interval& s) {
  const Interval x = Interval::from_endpoints(w.get(), w.get(), s.precision());
  return x + log(-x) + s;
}

// Enclosure of W_{-1}(-e^{-s}) for a single exact s >= 1.
inline Interval lambert_point(const Interval& s, const LambertOptions& opt) {
  const mpfr_prec_t prec = s.precision();
  const Interval t = s - Interval::point(1L, prec);
  auto [lower, upper] = alzahrani_bracket(t);
  Dyadic a(prec), b(prec), mid(prec), width(prec);
  mpfr_set(a.get(), lower.lo(), MPFR_RNDD);
  mpfr_set(b.get(), upper.hi(), MPFR_RNDU);
  if (mpfr_cmp_si(b.get(), -1) > 0) mpfr_set_si(b.get(), -1, MPFR_RNDU);
  if (!lambert_residual(a, s).certainly_nonpositive() || !lambert_residual(b, s).certainly_nonnegative())
    throw InternalInconsistency("Lambert W_{-1} bracket does not straddle the root");
  for (int it = 0; it < opt.max_iterations; ++it) {
    mpfr_sub(width.get(), b.get(), a.get(), MPFR_RNDU);
    if (mpfr_cmp_d(width.get(), opt.target_width) <= 0) break;
    mpfr_add(mid.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    if (mpfr_equal_p(mid.get(), a.get()) || mpfr_equal_p(mid.get(), b.get())) break;
    const Interval g = lambert_residual(mid, s);
    if (g.certainly_nonpositive()) {
      mpfr_set(a.get(), mid.get(), MPFR_RNDD);
    } else if (g.certainly_nonnegative()) {
      mpfr_set(b.get(), mid.get(), MPFR_RNDU);
    } else {
      break;  // sign unresolved at this precision; [a, b] is still an enclosure
    }
  }
  return Interval::from_endpoints(a.get(), b.get(), prec);
}

}  // namespace detail

/// Enclosure of W_{-1}(-e^{-s}) for s >= 1. Parts of s below 1 (outside the
/// branch domain) are clamped; an s lying entirely below 1 is rejected.
inline Interval lambert_w_m1_exp(const Interval& s, const LambertOptions& opt = {}) {
  if (mpfr_cmp_si(s.hi(), 1) < 0)
    throw std::domain_error("W_{-1}(-e^{-s}) needs s >= 1; got s <= " + s.upper().to_string(MPFR_RNDU));
  Interval s_lo = s.lower_point();
  if (mpfr_cmp_si(s.lo(), 1) < 0) s_lo = Interval::point(1L, s.precision());
  const Interval s_hi = s.upper_point();
  // W_{-1}(-e^{-s}) decreases in s.
  const Interval at_hi = detail::lambert_point(s_hi, opt);
  const Interval at_lo = detail::lambert_point(s_lo, opt);
  return Interval::from_endpoints(at_hi.lo(), at_lo.hi(), s.precision());
}

/// Enclosure of W_{-1}(y) for y in [-1/e, 0).
inline Interval lambert_w_m1(const Interval& y, const LambertOptions& opt = {}) {
  if (!y.certainly_negative())
    throw std::domain_error("W_{-1}(y) needs y < 0; got y <= " + y.upper().to_string(MPFR_RNDU));
  return lambert_w_m1_exp(-log(-y), opt);
}

}  // namespace plinform
