#pragma once

// Empirical checks of certificates against actual p-adic values of the
// linear form, brute-force minima at toy heights, and the worked examples.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "plinform/arith/interval.hpp"
#include "plinform/arith/padic.hpp"
#include "plinform/arith/rational.hpp"
#include "plinform/bounds.hpp"
#include "plinform/pade.hpp"

namespace plinform {

struct LinearFormValue {
  /// Lambda modulo p^absolute_precision.
  PadicValue value;
  /// True when v_p(Lambda) is known exactly; otherwise only v_p >= absolute precision.
  bool pinned = false;

  [[nodiscard]] Valuation valuation_lower_bound() const { return value.valuation_lower_bound(); }
};

/// Evaluates Lambda = lambda_0 + sum lambda_j log(1 + alpha_j) for many lambda
/// vectors against log residues shared between calls.
class LinearFormEvaluator {
 public:
  /// `start` is the initial absolute precision; precision doubles up to `cap`.
  LinearFormEvaluator(AlphaVector alphas, long start = 64, long cap = 1L << 16)
      : alphas_(std::move(alphas)), cap_(std::max(cap, 1L)), absolute_(std::min(std::max(start, 1L), cap_)) {
    compute_logs();
  }

  [[nodiscard]] const AlphaVector& alphas() const { return alphas_; }
  [[nodiscard]] long cap() const { return cap_; }

  [[nodiscard]] LinearFormValue evaluate(const std::vector<BigInt>& lambdas) const {
    check(lambdas);
    return evaluate_at(lambdas, absolute_, logs_);
  }

  /// Like evaluate, but escalates the shared precision until v_p is pinned or the cap is reached.
  LinearFormValue evaluate_pinned(const std::vector<BigInt>& lambdas) {
    check(lambdas);
    while (true) {
      LinearFormValue out = evaluate_at(lambdas, absolute_, logs_);
      if (out.pinned || absolute_ >= cap_) return out;
      absolute_ = std::min(cap_, 2 * absolute_);
      compute_logs();
    }
  }

  /// Raise the shared precision once, so that later evaluate() calls are
  /// read-only and may run concurrently.
  void ensure_precision(long absolute) {
    absolute = std::min(absolute, cap_);
    if (absolute > absolute_) {
      absolute_ = absolute;
      compute_logs();
    }
  }

  [[nodiscard]] long absolute_precision() const { return absolute_; }
  [[nodiscard]] const std::vector<BigInt>& log_residues() const { return logs_; }

 private:
  void check(const std::vector<BigInt>& lambdas) const {
    if (lambdas.size() != alphas_.m() + 1) throw std::invalid_argument("lambdas must have m+1 entries");
    if (std::all_of(lambdas.begin(), lambdas.end(), [](const BigInt& l) { return l == 0; }))
      throw std::invalid_argument("lambdas must not all be zero");
  }

  void compute_logs() {
    logs_.clear();
    for (const auto& a : alphas_.entries()) logs_.push_back(padic_log_residue(a, alphas_.prime(), absolute_));
  }

  [[nodiscard]] LinearFormValue evaluate_at(const std::vector<BigInt>& lambdas, long absolute,
                                            const std::vector<BigInt>& logs) const {
    BigInt sum = lambdas[0];
    for (size_t j = 0; j < logs.size(); ++j) sum += lambdas[j + 1] * logs[j];
    LinearFormValue out{PadicValue::from_scaled_residue(alphas_.prime(), 0, sum, absolute), false};
    out.pinned = !out.value.is_zero_marker();
    return out;
  }

  AlphaVector alphas_;
  long cap_;
  long absolute_;
  std::vector<BigInt> logs_;
};

inline LinearFormValue eval_linear_form(const AlphaVector& alphas, const std::vector<BigInt>& lambdas,
                                        long start = 64, long cap = 1L << 16) {
  LinearFormEvaluator ev(alphas, start, cap);
  return ev.evaluate_pinned(lambdas);
}

/// The certified bound |Lambda|_p > 10^{bound_log10} is equivalent to
/// v_p(Lambda) < -bound_log10 * log 10 / log p; returns that valuation limit.
inline Interval valuation_limit(const Interval& bound_log10, const BigInt& p) {
  const mpfr_prec_t prec = bound_log10.precision();
  return -bound_log10 * log(Interval::point(10L, prec)) / log_of(p, prec);
}

enum class SampleKind { Box, Boundary, Adversarial };

inline const char* sample_kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::Box: return "box";
    case SampleKind::Boundary: return "boundary";
    case SampleKind::Adversarial: return "adversarial";
  }
  return "?";
}

struct Violation {
  std::vector<BigInt> lambdas;
  SampleKind kind = SampleKind::Box;
  Valuation valuation_lower_bound;
  bool pinned = false;
};

struct VerificationReport {
  std::string instance_summary;
  std::string theorem;
  BigInt H;
  Interval bound_log10;
  unsigned long samples_tested = 0;
  unsigned long on_shell = 0;
  /// Largest valuation seen; -max_valuation * log10 p is the smallest observed |Lambda|_p.
  long max_valuation = 0;
  double min_observed_log10_abs = 0;
  std::vector<Violation> violations;
  unsigned long rng_seed = 0;
  unsigned workers = 1;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::string to_string() const;
};

inline std::string lambdas_to_string(const std::vector<BigInt>& lambdas) {
  std::string out = "(";
  for (size_t i = 0; i < lambdas.size(); ++i) out += (i ? ", " : "") + lambdas[i].get_str();
  return out + ")";
}

inline std::string instance_summary(const AlphaVector& alphas) {
  std::ostringstream os;
  os << "p=" << alphas.prime() << " m=" << alphas.m() << " Q=" << alphas.Q() << " alphas=[";
  for (size_t i = 0; i < alphas.m(); ++i) os << (i ? ", " : "") << alphas[i].get_str();
  os << "]";
  return os.str();
}

inline std::string VerificationReport::to_string() const {
  std::ostringstream os;
  os << "instance: " << instance_summary << "\n"
     << "theorem: " << theorem << "\n"
     << "log10 H: " << std::fixed;
  os.precision(6);
  os << log10(Interval::point(H, 128)).mid_double() << "\n"
     << "bound_log10: [" << bound_log10.lo_double() << ", " << bound_log10.hi_double() << "]\n"
     << "samples: " << samples_tested << " (on-shell " << on_shell << "), seed " << rng_seed << ", workers "
     << workers << "\n"
     << "max valuation: " << max_valuation << "\n"
     << "min observed log10 |Lambda|_p: " << min_observed_log10_abs << "\n"
     << "violations: " << violations.size() << "\n";
  for (const auto& v : violations)
    os << "  " << sample_kind_name(v.kind) << " " << lambdas_to_string(v.lambdas) << " v_p >= " << v.valuation_lower_bound
       << (v.pinned ? "" : " (unpinned)") << "\n";
  return os.str();
}

struct SampleOptions {
  unsigned long count = 100;
  unsigned long seed = 1;
  unsigned workers = 4;
};

namespace detail {

inline BigInt uniform_in_box(gmp_randclass& rng, const BigInt& H) {
  return BigInt(rng.get_z_range(BigInt(2 * H + 1))) - H;
}

// lambda_0 chosen so that Lambda vanishes modulo the largest p^e <= H the box allows.
inline BigInt adversarial_lambda0(const std::vector<BigInt>& lambdas, const std::vector<BigInt>& logs, const BigInt& p,
                                  const BigInt& H) {
  BigInt modulus = 1;
  while (modulus * p <= H) modulus *= p;
  BigInt s = 0;
  for (size_t j = 0; j < logs.size(); ++j) s += lambdas[j + 1] * logs[j];
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), BigInt(-s).get_mpz_t(), modulus.get_mpz_t());
  if (2 * r > modulus) r -= modulus;
  return r;
}

}  // namespace detail

/// Checks |Lambda|_p > 10^{bound_log10} on seeded random lambda with max |lambda_i| <= H.
/// Samples cycle through uniform box draws, boundary vectors (one coordinate
/// set to +-H) and boundary vectors with an adversarial lambda_0. Worker w draws
/// samples i = w, w + workers, ... from its own generator seeded with (seed, w),
/// so the report depends only on seed, count and the worker count.
inline VerificationReport sample_verify(const AlphaVector& alphas, const BigInt& H, const Interval& bound_log10,
                                        const SampleOptions& opt, std::string theorem = {}) {
  if (H < 1) throw std::invalid_argument("H must be >= 1");
  const BigInt& p = alphas.prime();
  const Interval limit = valuation_limit(bound_log10, p);
  // A valuation at or above the lower end of the limit is a violation, so
  // the log residues need at least that many digits.
  mpz_class limit_ceil;
  mpfr_get_z(limit_ceil.get_mpz_t(), limit.hi(), MPFR_RNDU);
  const long needed = std::max<long>(1, limit_ceil.get_si() + 1);
  LinearFormEvaluator ev(alphas, needed, std::max<long>(needed, 8 * needed));
  ev.ensure_precision(needed);

  const unsigned workers = std::max(1u, opt.workers);
  const size_t m = alphas.m();
  struct Partial {
    unsigned long tested = 0, on_shell = 0;
    long max_val = 0;
    std::vector<std::pair<unsigned long, Violation>> violations;
  };
  std::vector<Partial> parts(workers);
  auto run = [&](unsigned w) {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(BigInt(opt.seed) * 1000003 + w);
    Partial& part = parts[w];
    for (unsigned long i = w; i < opt.count; i += workers) {
      const auto kind = static_cast<SampleKind>(i % 3);
      std::vector<BigInt> lambdas(m + 1);
      for (auto& l : lambdas) l = detail::uniform_in_box(rng, H);
      if (kind != SampleKind::Box) {
        const unsigned long pos = kind == SampleKind::Adversarial ? 1 + BigInt(rng.get_z_range(m)).get_ui()
                                                                  : BigInt(rng.get_z_range(m + 1)).get_ui();
        lambdas[pos] = BigInt(rng.get_z_range(2)).get_ui() ? H : BigInt(-H);
      }
      if (kind == SampleKind::Adversarial) lambdas[0] = detail::adversarial_lambda0(lambdas, ev.log_residues(), p, H);
      if (std::all_of(lambdas.begin(), lambdas.end(), [](const BigInt& l) { return l == 0; })) lambdas[0] = 1;
      ++part.tested;
      if (std::any_of(lambdas.begin(), lambdas.end(), [&](const BigInt& l) { return abs(l) == H; })) ++part.on_shell;
      const LinearFormValue val = ev.evaluate(lambdas);
      const Valuation v = val.valuation_lower_bound();
      const long vv = v.is_infinite() ? ev.absolute_precision() : v.value();
      part.max_val = std::max(part.max_val, vv);
      if (!val.pinned || mpfr_cmp_si(limit.lo(), vv) <= 0)
        part.violations.push_back({i, Violation{lambdas, kind, v, val.pinned}});
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();

  VerificationReport report;
  report.instance_summary = instance_summary(alphas);
  report.theorem = std::move(theorem);
  report.H = H;
  report.bound_log10 = bound_log10;
  report.rng_seed = opt.seed;
  report.workers = workers;
  std::vector<std::pair<unsigned long, Violation>> all;
  for (auto& part : parts) {
    report.samples_tested += part.tested;
    report.on_shell += part.on_shell;
    report.max_valuation = std::max(report.max_valuation, part.max_val);
    for (auto& v : part.violations) all.push_back(std::move(v));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& v : all) report.violations.push_back(std::move(v.second));
  report.min_observed_log10_abs = -static_cast<double>(report.max_valuation) * std::log10(p.get_d());
  return report;
}

inline VerificationReport sample_verify(const ProblemInstance& inst, const BoundCertificate& cert, const SampleOptions& opt) {
  if (!cert.valid) throw std::invalid_argument("sample_verify needs a valid certificate");
  return sample_verify(inst.alphas, inst.H, cert.bound_log10, opt, std::string(theorem_name(cert.theorem)));
}

struct MinRow {
  BigInt H;
  /// Largest v_p(Lambda) over nonzero lambda with max |lambda_i| <= H.
  long max_valuation = 0;
  /// False when some Lambda vanished modulo p^cap; max_valuation is then a lower bound.
  bool exact = true;
  std::vector<BigInt> witness;

  [[nodiscard]] double log10_min_abs(const BigInt& p) const { return -static_cast<double>(max_valuation) * std::log10(p.get_d()); }
};

/// Exact minimum of |Lambda|_p over the box, for each H = 1..H_max, by enumeration.
inline std::vector<MinRow> exhaustive_min(const AlphaVector& alphas, unsigned long H_max, unsigned long budget = 5000000,
                                          long cap = 256) {
  if (H_max < 1) throw std::invalid_argument("H_max must be >= 1");
  const size_t n = alphas.m() + 1;
  const double count = std::pow(2.0 * static_cast<double>(H_max) + 1, static_cast<double>(n));
  if (count > static_cast<double>(budget))
    throw std::invalid_argument("search box has " + std::to_string(static_cast<unsigned long long>(count)) +
                                " vectors, over the budget of " + std::to_string(budget));
  LinearFormEvaluator ev(alphas, cap, cap);
  std::vector<MinRow> rows(H_max);
  for (unsigned long h = 1; h <= H_max; ++h) rows[h - 1].H = h;
  std::vector<long> digits(n, -static_cast<long>(H_max));
  const long hm = static_cast<long>(H_max);
  while (true) {
    long height = 0;
    for (long d : digits) height = std::max(height, std::labs(d));
    if (height > 0) {
      std::vector<BigInt> lambdas(digits.begin(), digits.end());
      const LinearFormValue val = ev.evaluate(lambdas);
      const Valuation v = val.valuation_lower_bound();
      MinRow& row = rows[static_cast<size_t>(height - 1)];
      const long vv = v.is_infinite() ? cap : v.value();
      if (vv > row.max_valuation || row.witness.empty()) {
        row.max_valuation = vv;
        row.witness = lambdas;
      }
      if (!val.pinned) row.exact = false;
    }
    size_t i = 0;
    while (i < n && digits[i] == hm) digits[i++] = -hm;
    if (i == n) break;
    ++digits[i];
  }
  // rows so far hold the maximum on the shell max|lambda_i| = H; accumulate to boxes
  for (size_t h = 1; h < rows.size(); ++h) {
    if (rows[h - 1].max_valuation > rows[h].max_valuation) {
      rows[h].max_valuation = rows[h - 1].max_valuation;
      rows[h].witness = rows[h - 1].witness;
    }
    rows[h].exact = rows[h].exact && rows[h - 1].exact;
  }
  return rows;
}

struct ExampleCheck {
  std::string name;
  std::string quantity;
  Interval computed;
  double expected_lo = 0;
  double expected_hi = 0;
  bool pass = false;
  std::string note;
  /// False when the quantity could not be computed (e.g. the certificate is invalid).
  bool has_value = true;
};

namespace detail {

inline ExampleCheck range_check(std::string name, std::string quantity, const Interval& value, double lo, double hi,
                                std::string note = {}) {
  ExampleCheck c{std::move(name), std::move(quantity), value, lo, hi, false, std::move(note), true};
  c.pass = value.lo_double() >= lo && value.hi_double() <= hi;
  return c;
}

inline ExampleCheck certificate_check(std::string name, const ProblemInstance& inst, TheoremId id, const BigRational& omega) {
  const BoundCertificate cert = certify_theorem(id, inst);
  ExampleCheck c{std::move(name), std::string(theorem_name(id)) + " certificate exponent", cert.omega,
                 omega.get_d(), omega.get_d(), false, {}, cert.valid};
  if (!cert.valid) {
    for (const auto& r : cert.failure_reasons) c.note += (c.note.empty() ? "" : "; ") + r;
    return c;
  }
  c.pass = cert.omega.contains(omega) && cert.log10_c.contains(BigRational(0));
  return c;
}

}  // namespace detail

/// Instance of the first worked example: alpha = 11^25, m = 1.
inline AlphaVector example1_alphas() { return AlphaVector({BigRational(pow_int(11, 25))}, BigInt(11)); }

/// Second worked example: alphas (p, -p).
inline AlphaVector example2_alphas(long p = 149) {
  return AlphaVector({BigRational(p), BigRational(-p)}, BigInt(p));
}

/// Third worked example: alpha = 11^25 / (1 + 11^25), Q = 1 + 11^25.
inline AlphaVector example3_alphas() {
  const BigInt pa = pow_int(11, 25);
  return AlphaVector({BigRational(pa, pa + 1)}, BigInt(11));
}

/// Recomputes the thresholds and constants of the three worked examples.
inline std::vector<ExampleCheck> reproduce_examples(mpfr_prec_t prec = kDefaultPrecision) {
  std::vector<ExampleCheck> out;
  const Interval ln10 = log(Interval::point(10L, prec));
  const BigRational eps(1, 10);
  {
    // H >= max{c1^{-31}, e^{-31 W_{-1}(-2^{-1/31}/31)} / 2}
    const AlphaVector a = example1_alphas();
    const auto c = constants_Mgt1(a, prec);
    const Interval n31 = Interval::point(31L, prec);
    const Interval s = log(n31) + log(Interval::point(2L, prec)) / n31;
    const Interval w_term = -n31 * lambert_w_m1_exp(s) - log(Interval::point(2L, prec));
    const Interval displayed = max(-n31 * c.log_c1, w_term) / ln10;
    const Interval own = log_height_threshold(TheoremId::MGT1_BEST_EPS, a, eps, prec) / ln10;
    std::ostringstream note;
    note.precision(6);
    note << std::fixed << "exponent 31 as displayed; the eps = 0.1 height conditions give log10 "
         << own.mid_double();
    out.push_back(detail::range_check("example 1", "log10 H threshold", displayed, 1672.48 - 3, 1672.48 + 3, note.str()));
    mpz_class h;
    mpfr_get_z(h.get_mpz_t(), exp(displayed.upper_point() * ln10).hi(), MPFR_RNDU);
    out.push_back(detail::certificate_check("example 1", ProblemInstance(a, h, eps), TheoremId::MGT1_BEST_EPS,
                                            BigRational(21, 10)));
  }
  {
    const AlphaVector a = example2_alphas(149);
    const auto c = constants_Mgt1(a, prec);
    out.push_back(detail::range_check("example 2", "3 log p / log f - 1", c.X - Interval::point(1L, prec), 417, 419));
    out.push_back(detail::range_check("example 2", "log10 c1", c.log_c1 / ln10, -2053, -2047));
  }
  {
    const AlphaVector a = example3_alphas();
    const Interval threshold = log_height_threshold(TheoremId::MLT1_BEST_EPS, a, eps, prec) / ln10;
    const double target = std::log10(3.6) + 6482;
    out.push_back(detail::range_check("example 3", "log10 H threshold", threshold, target - 3, target + 3));
    mpz_class h;
    mpfr_get_z(h.get_mpz_t(), exp(threshold.upper_point() * ln10).hi(), MPFR_RNDU);
    out.push_back(detail::certificate_check("example 3", ProblemInstance(a, h, eps), TheoremId::MLT1_BEST_EPS,
                                            BigRational(21, 10)));
  }
  return out;
}

struct PipelineReport {
  unsigned long k = 0, mu = 0;
  BigInt T;
  /// |T| <= (sum |lambda_i|) max_j |Q^{mk+m} B_{k,mu,j}(1)|
  bool archimedean_ok = false;
  /// |T| * |T|_p >= 1
  bool product_formula_ok = false;
  /// max_j |B_{k,mu,j}(1)| against the closed-form estimate for M > 1 or M < 1
  bool b_estimate_ok = false;
  /// every |S_{k,mu,j}(1)|_p <= (mk+k+1) alpha^{mk+k+1}
  bool s_estimate_ok = false;
  double log10_abs_T = 0;
  double log10_archimedean_product = 0;
  double log10_b_max = 0;
  double log10_b_estimate = 0;

  [[nodiscard]] bool ok() const { return archimedean_ok && product_formula_ok && b_estimate_ok && s_estimate_ok; }
};

inline double log10_abs(const BigRational& x) {
  if (x == 0) return -HUGE_VAL;
  return log10(Interval::point(BigRational(abs(x)), 128)).mid_double();
}

/// Evaluates the factors of the product-formula argument for one (k, mu).
inline PipelineReport pipeline_check(const AlphaVector& alphas, const std::vector<BigInt>& lambdas, unsigned long k,
                                     unsigned long mu) {
  if (lambdas.size() != alphas.m() + 1) throw std::invalid_argument("lambdas must have m+1 entries");
  const PadeSystem sys = build_system(k, mu, alphas);
  PipelineReport r;
  r.k = k;
  r.mu = mu;
  r.T = sys.T(lambdas);
  if (r.T == 0) throw std::invalid_argument("T(k, mu) vanishes for these lambdas; pick another mu");
  const unsigned long m = alphas.m();
  BigInt lambda_sum = 0;
  for (const auto& l : lambdas) lambda_sum += abs(l);
  BigInt scaled_max = 0;
  BigRational b_max = 0;
  for (size_t j = 0; j < sys.scaled_b.size(); ++j) {
    scaled_max = std::max(scaled_max, BigInt(abs(sys.scaled_b[j])));
    b_max = std::max(b_max, BigRational(abs(sys.b_values[j])));
  }
  r.archimedean_ok = abs(r.T) <= lambda_sum * scaled_max;
  const long v = integer_valuation(r.T, alphas.prime());
  r.product_formula_ok = abs(r.T) >= pow_int(alphas.prime(), static_cast<unsigned long>(v));
  const BigRational& M = alphas.M();
  const BigRational base = archimedean_estimate_base(m, k);
  BigRational estimate;
  if (M > 1) {
    estimate = base * (pow_rat(M, m * k + m + 1) - M) / (M - 1);
    r.b_estimate_ok = b_max <= estimate;
  } else {
    estimate = base * BigRational(m * k + m);
    r.b_estimate_ok = b_max < estimate;
  }
  r.s_estimate_ok = true;
  for (size_t j = 1; j <= m; ++j) r.s_estimate_ok = r.s_estimate_ok && remainder_S(k, mu, j, alphas, 4).meets_estimate;
  r.log10_abs_T = log10_abs(BigRational(r.T));
  r.log10_archimedean_product = log10_abs(BigRational(lambda_sum * scaled_max));
  r.log10_b_max = log10_abs(b_max);
  r.log10_b_estimate = log10_abs(estimate);
  return r;
}

}  // namespace plinform
