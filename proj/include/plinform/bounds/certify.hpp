#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plinform/arith/interval.hpp"
#include "plinform/bounds/constants.hpp"
#include "plinform/bounds/lambert.hpp"

namespace plinform {

enum class TheoremId { MGT1_MAIN, MGT1_LOGLOG, MGT1_BEST_EPS, MGT1_SIMPLE, MLT1_MAIN, MLT1_BEST_EPS };

inline constexpr TheoremId kAllTheorems[] = {TheoremId::MGT1_MAIN,   TheoremId::MGT1_LOGLOG,
                                             TheoremId::MGT1_BEST_EPS, TheoremId::MGT1_SIMPLE,
                                             TheoremId::MLT1_MAIN,   TheoremId::MLT1_BEST_EPS};

inline std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::MGT1_MAIN: return "MGT1_MAIN";
    case TheoremId::MGT1_LOGLOG: return "MGT1_LOGLOG";
    case TheoremId::MGT1_BEST_EPS: return "MGT1_BEST_EPS";
    case TheoremId::MGT1_SIMPLE: return "MGT1_SIMPLE";
    case TheoremId::MLT1_MAIN: return "MLT1_MAIN";
    case TheoremId::MLT1_BEST_EPS: return "MLT1_BEST_EPS";
  }
  return "?";
}

inline std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (const TheoremId id : kAllTheorems)
    if (theorem_name(id) == name) return id;
  return std::nullopt;
}

inline bool is_mgt1(TheoremId id) {
  return id == TheoremId::MGT1_MAIN || id == TheoremId::MGT1_LOGLOG || id == TheoremId::MGT1_BEST_EPS ||
         id == TheoremId::MGT1_SIMPLE;
}

enum class Verdict { Pass, Fail, Indeterminate };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

/// One hypothesis, phrased as `margin > 0` (strict) or `margin >= 0`.
struct Condition {
  std::string name;
  Interval margin;
  bool strict = false;
  Verdict verdict = Verdict::Fail;
  std::string note;
};

inline Condition judge(std::string name, const Interval& margin, bool strict, std::string note = {}) {
  Condition c{std::move(name), margin, strict, Verdict::Indeterminate, std::move(note)};
  if (strict ? margin.certainly_positive() : margin.certainly_nonnegative()) {
    c.verdict = Verdict::Pass;
  } else if (strict ? margin.certainly_nonpositive() : margin.certainly_negative()) {
    c.verdict = Verdict::Fail;
  }
  return c;
}

/// A condition whose left side is undefined (e.g. log log f with f <= 1).
inline Condition undefined_condition(std::string name, std::string why, mpfr_prec_t prec) {
  return Condition{std::move(name), Interval::point(-1L, prec), false, Verdict::Fail, std::move(why)};
}

struct ConditionReport {
  TheoremId theorem;
  std::vector<Condition> conditions;

  [[nodiscard]] bool all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.verdict == Verdict::Pass; });
  }
  [[nodiscard]] bool any_indeterminate() const {
    return std::any_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.verdict == Verdict::Indeterminate; });
  }
  [[nodiscard]] const Condition* find(std::string_view name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline Interval max_of(const std::vector<Interval>& xs) {
  Interval out = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) out = max(out, xs[i]);
  return out;
}

// log of the factor 2^{m-1} e^{1.03883 m} Q^m H (M^{m+1}/(M-1)) (m+1)(m+2) alpha,
// whose reciprocal times -log f is the argument of W_{-1} in the M > 1 k choice.
inline Interval log_w_denominator_mgt1(const InstanceLogs& L, const Interval& log_h, const BigRational& M) {
  const long m = static_cast<long>(L.m);
  return L.num(m - 1) * L.log2 + L.l0 * L.num(m) + L.num(m) * L.log_q + log_h + L.num(m + 1) * L.log_m -
         log_of(M - 1, L.prec) + log(L.num(m + 1)) + log(L.num(m + 2)) + L.log_alpha;
}

// log y2 with y2 = log^2 f / (2^m e^{1.03883 m} Q^m H m (m+1)(m+2) alpha).
inline Interval log_y2_mlt1(const InstanceLogs& L, const Interval& log_h) {
  const long m = static_cast<long>(L.m);
  return L.num(2) * log(L.log_f) - (L.num(m) * L.log2 + L.l0 * L.num(m) + L.num(m) * L.log_q + log_h +
                                     log(L.num(m)) + log(L.num(m + 1)) + log(L.num(m + 2)) + L.log_alpha);
}

}  // namespace detail

/// Both sides of the displayed identity behind the condition log H + R1 >= 1:
/// -1/(e^{R1} H) and -log f / (2^{m-1} e^{1.03883m} Q^m H M^{m+1}/(M-1) (m+1)(m+2) alpha),
/// returned as the logarithms of their absolute values.
inline std::pair<Interval, Interval> condW1_sides(const ProblemInstance& inst, mpfr_prec_t prec = kDefaultPrecision) {
  const InstanceLogs L = instance_logs(inst.alphas, prec);
  const Interval log_h = log_of(inst.H, prec);
  const ConstantsMgt1 c = constants_Mgt1(inst.alphas, prec);
  return {-(c.R1 + log_h), log(L.log_f) - detail::log_w_denominator_mgt1(L, log_h, inst.alphas.M())};
}

inline ConditionReport check_conditions(TheoremId id, const ProblemInstance& inst, mpfr_prec_t prec = kDefaultPrecision) {
  ConditionReport report{id, {}};
  auto& out = report.conditions;
  const InstanceLogs L = instance_logs(inst.alphas, prec);
  const Interval log_h = log_of(inst.H, prec);
  const long m = static_cast<long>(L.m);
  const BigRational& M = inst.alphas.M();
  const auto one = L.num(1);

  auto require_epsilon = [&]() -> std::optional<Interval> {
    if (!inst.epsilon) {
      out.push_back(undefined_condition("epsilon_range", "epsilon not given", prec));
      return std::nullopt;
    }
    const BigRational& eps = *inst.epsilon;
    out.push_back(judge("epsilon_range", L.num(std::min<BigRational>(eps, BigRational(3) - eps)), eps != 3,
                        "0 < epsilon <= 3"));
    if (eps <= 0 || eps > 3) return std::nullopt;
    return L.num(eps);
  };

  if (is_mgt1(id)) {
    out.push_back(judge("M>1", L.num(M - 1), true));
    out.push_back(judge("alpha<1", -L.log_alpha, true));
    if (id != TheoremId::MGT1_SIMPLE) {
      out.push_back(judge("H>1", L.num(BigRational(inst.H - 1)), true));
      out.push_back(judge("f>1", L.log_f, true, "log f > 0"));
    } else {
      out.push_back(judge("log_f>=1", L.log_f - one, false));
    }
    if (M <= 1 || !L.log_f.certainly_positive()) {
      out.push_back(undefined_condition("condW1", "R1 needs M > 1 and f > 1", prec));
      return report;
    }
    const ConstantsMgt1 c = constants_Mgt1(inst.alphas, prec);
    out.push_back(judge("condW1", log_h + c.R1 - one, false, "log H + R1 >= 1"));

    if (id == TheoremId::MGT1_LOGLOG) {
      out.push_back(judge("H>=3", L.num(BigRational(inst.H - 3)), false));
      out.push_back(judge("H>=e^R1", log_h - c.R1, false));
    } else if (id == TheoremId::MGT1_BEST_EPS) {
      const auto eps = require_epsilon();
      if (!eps) return report;
      out.push_back(judge("m1epsilonpart", L.num(m + 1) + *eps / L.num(3) - c.X, false,
                          "(m+1) log alpha / log f >= -m-1-eps/3"));
      out.push_back(judge("condHm1Big_c1", log_h + L.num(3) / *eps * c.log_c1, false, "H >= c1^(-3/eps)"));
      // H >= (1/2) exp(-(3m/eps+1) W_{-1}(-2^{-eps/(3m+eps)} eps/(3m+eps)))
      const Interval r = *eps / (L.num(3 * m) + *eps);
      const Interval s = r * L.log2 - log(r);
      const Interval w = lambert_w_m1_exp(s);
      out.push_back(judge("condHm1Big_W", log_h + L.log2 + (L.num(3 * m) / *eps + one) * w, false,
                          "H >= exp(-(3m/eps+1) W_{-1}(...))/2"));
    } else if (id == TheoremId::MGT1_SIMPLE) {
      const Interval threshold = detail::max_of({L.l0 * L.num(m), L.num(m + 1) * L.log_m, log(L.num(m + 2)),
                                                 L.num(m) * L.log_q});
      out.push_back(judge("condH1", log_h - threshold, false,
                          "log H >= max{1.03883m, (m+1)log M, log(m+2), m log Q}"));
    }
    return report;
  }

  // M < 1
  out.push_back(judge("M<1", L.num(1 - M), true));
  out.push_back(judge("alpha<1", -L.log_alpha, true));
  out.push_back(judge("condlogf", L.log_f - one, false, "log f >= 1"));
  if (!L.log_f.certainly_positive()) {
    out.push_back(undefined_condition("condH5", "log log f undefined for f <= 1", prec));
    return report;
  }
  out.push_back(judge("condH5", log(L.num(4)) - L.num(2) - detail::log_y2_mlt1(L, log_h), false,
                      "log^2 f / (2^m e^{1.03883m} Q^m H m(m+1)(m+2) alpha) <= 4/e^2"));
  const Interval threshold =
      detail::max_of({(L.num(BigRational(m, 2)) + one) * L.log2, L.num(BigRational(519415, 1000000)) * L.num(m),
                      L.num(BigRational(m, 2)) * L.log_q, log(L.num(m + 2)), Interval::e(prec)});
  out.push_back(judge("condH3", log_h - threshold, true,
                      "log H > max{(m/2+1)log 2, 0.519415m, (m/2)log Q, log(m+2), e}"));
  if (id == TheoremId::MLT1_BEST_EPS) {
    const auto eps = require_epsilon();
    if (!eps || M >= 1) return report;
    const ConstantsMlt1 c = constants_Mlt1(inst.alphas, prec);
    out.push_back(judge("flogmeps", (L.num(m) * L.log_m + L.num(m + 1) * L.log_alpha) / L.log_f + L.num(m + 1) +
                                        *eps / L.num(3),
                        false, "log(M^m alpha^(m+1)) / log f >= -m-1-eps/3"));
    const Interval r2 = c.R2;
    const Interval log_base = (L.num(m + 4) + L.num(2) * r2) * L.log2 + (r2 + one) * log(L.num(9)) +
                              (L.num(2) * r2 + L.num(3)) * L.num(m) * (L.l0 + L.log_q) + log(L.num(m)) +
                              log(L.num(m + 1));
    out.push_back(judge("assumpHepsilon", log_h - L.num(3) / *eps * log_base, false,
                        "H >= (2^{m+4+2R2} 9^{R2+1} (e^{1.03883}Q)^{(2R2+3)m} m(m+1))^{3/eps}"));
    const Interval g = L.num(6) * (L.num(m + 1) + *eps / L.num(3)) / *eps;
    const Interval w = lambert_w_m1_exp(log(g));
    out.push_back(judge("assumpHepsilonSecond", log_h + g * w, false,
                        "H >= exp(-(6(m+1+eps/3)/eps) W_{-1}(-eps/(6(m+1+eps/3))))"));
  }
  return report;
}

/// Conditions whose margin has the form log H - threshold.
inline constexpr std::string_view kLogHeightConditions[] = {"condW1",       "H>=e^R1", "condHm1Big_c1",
                                                            "condHm1Big_W", "condH1",  "condH5",
                                                            "condH3",       "assumpHepsilon", "assumpHepsilonSecond"};

/// Smallest log H at which every height condition of a theorem holds (the
/// integer conditions H > 1 and H >= 3 folded in). Conditions that do not
/// involve H are not considered here.
inline Interval log_height_threshold(TheoremId id, const AlphaVector& alphas, std::optional<BigRational> epsilon,
                                     mpfr_prec_t prec = kDefaultPrecision) {
  const ProblemInstance at_one(alphas, BigInt(1), std::move(epsilon));
  const ConditionReport r = check_conditions(id, at_one, prec);
  Interval out = Interval::point(0L, prec);
  if (id == TheoremId::MGT1_LOGLOG) out = log(Interval::point(3L, prec));
  for (const auto& c : r.conditions) {
    for (const auto name : kLogHeightConditions)
      if (c.name == name) out = max(out, -c.margin);
  }
  return out;
}

struct KSelection {
  unsigned long k = 0;
  /// Enclosure of the real number that k is the ceiling of.
  Interval k_real;
  /// log Omega at the selected k.
  Interval log_omega;
  bool verified = false;
};

/// log Omega_1 (M > 1) or log Omega_2 (M < 1) at a given k.
inline Interval log_omega(const ProblemInstance& inst, unsigned long k, mpfr_prec_t prec = kDefaultPrecision) {
  const InstanceLogs L = instance_logs(inst.alphas, prec);
  const Interval log_h = log_of(inst.H, prec);
  const long m = static_cast<long>(L.m);
  const long kl = static_cast<long>(k);
  const Interval mk_m = L.num(m * kl + m);
  Interval out = L.l0 * mk_m + mk_m * L.log_q + log_h + log(L.num(m + 1)) + L.num(kl + m - 1) * L.log2 +
                 L.num(m * kl) * L.log3 + log(L.num(m * kl + kl + 1)) + L.num(m * kl + kl + 1) * L.log_alpha;
  if (inst.alphas.M() > 1) {
    // log((M^{mk+m+1} - M)/(M-1)) = log M + x + log(1 - e^{-x}) - log(M-1), x = (mk+m) log M
    const Interval x = mk_m * L.log_m;
    out = out + L.log_m + x + log(L.num(1) - exp(-x)) - log_of(inst.alphas.M() - 1, prec);
  } else {
    out = out + log(mk_m);
  }
  return out;
}

/// The k of the contradiction argument and a check that Omega < 1 there.
/// Requires f > 1 together with log H + R1 >= 1 (M > 1) or the 4/e^2 condition (M < 1).
inline KSelection select_k(const ProblemInstance& inst, mpfr_prec_t prec = kDefaultPrecision) {
  const InstanceLogs L = instance_logs(inst.alphas, prec);
  const Interval log_h = log_of(inst.H, prec);
  if (!L.log_f.certainly_positive()) throw std::domain_error("select_k needs f > 1");
  Interval k_real(prec);
  if (inst.alphas.M() > 1) {
    const ConstantsMgt1 c = constants_Mgt1(inst.alphas, prec);
    const Interval w = lambert_w_m1_exp(log_h + c.R1);
    k_real = w / (-L.log_f);
  } else {
    const Interval s = L.log2 - detail::log_y2_mlt1(L, log_h) / L.num(2);
    const Interval w = lambert_w_m1_exp(s);
    k_real = L.num(-2) * w / L.log_f;
  }
  KSelection out;
  out.k_real = k_real;
  mpz_class ceil_k;
  mpfr_get_z(ceil_k.get_mpz_t(), k_real.hi(), MPFR_RNDU);
  if (!ceil_k.fits_ulong_p()) throw std::overflow_error("selected k does not fit in an unsigned long");
  out.k = std::max<unsigned long>(1, ceil_k.get_ui());
  out.log_omega = log_omega(inst, out.k, prec);
  out.verified = out.log_omega.certainly_negative();
  return out;
}

struct BoundCertificate {
  TheoremId theorem = TheoremId::MGT1_MAIN;
  ConditionReport report{TheoremId::MGT1_MAIN, {}};
  bool valid = false;
  std::vector<std::string> failure_reasons;
  /// Enclosures of log10 c and omega; the certified bound is c_lower * H^{-omega_upper}.
  Interval log10_c;
  Interval omega;
  /// Enclosure of log10(c H^{-omega}); its lower endpoint is the certified value.
  Interval bound_log10;
  std::optional<KSelection> k;
  mpfr_prec_t precision = kDefaultPrecision;

  [[nodiscard]] double bound_log10_lower() const { return bound_log10.lo_double(); }
};

namespace detail {

inline BoundCertificate certify_at(TheoremId id, const ProblemInstance& inst, mpfr_prec_t prec) {
  BoundCertificate cert;
  cert.theorem = id;
  cert.precision = prec;
  cert.report = check_conditions(id, inst, prec);
  for (const auto& c : cert.report.conditions) {
    if (c.verdict != Verdict::Pass)
      cert.failure_reasons.push_back(c.name + " " + std::string(verdict_name(c.verdict)) +
                                     (c.note.empty() ? "" : " (" + c.note + ")"));
  }
  if (!cert.report.all_pass()) return cert;

  const InstanceLogs L = instance_logs(inst.alphas, prec);
  const Interval log_h = log_of(inst.H, prec);
  const Interval ln10 = log(L.num(10));
  const long m = static_cast<long>(L.m);
  Interval log_c(prec), omega(prec);
  switch (id) {
    case TheoremId::MGT1_MAIN: {
      const ConstantsMgt1 c = constants_Mgt1(inst.alphas, prec);
      log_c = c.log_c1;
      omega = c.omega1(log_h);
      break;
    }
    case TheoremId::MGT1_LOGLOG: {
      const ConstantsMgt1 c = constants_Mgt1(inst.alphas, prec);
      log_c = c.log_c1;
      omega = c.X + L.num(BigRational(11633, 1000)) * (c.X - L.num(1)) * log(log_h) / log_h;
      break;
    }
    case TheoremId::MGT1_BEST_EPS:
    case TheoremId::MLT1_BEST_EPS:
      log_c = L.num(0);
      omega = L.num(m + 1) + L.num(*inst.epsilon);
      break;
    case TheoremId::MGT1_SIMPLE: {
      const BigRational& M = inst.alphas.M();
      log_c = log_of(M - 1, prec) - L.num(m) * log(L.num(6)) - log(L.num(m + 1)) - L.num(2 * m) * L.l0 -
              L.num(2 * m) * L.log_q - L.num(2 * m + 1) * L.log_m;
      omega = L.num(1) + L.num(14) * L.log2 + L.num(14 * m) * (L.log3 + L.l0 + L.log_q + L.log_m);
      break;
    }
    case TheoremId::MLT1_MAIN: {
      const ConstantsMlt1 c = constants_Mlt1(inst.alphas, prec);
      log_c = c.log_c2;
      omega = c.omega2(log_h);
      break;
    }
  }
  cert.log10_c = log_c / ln10;
  cert.omega = omega;
  cert.bound_log10 = (log_c - omega * log_h) / ln10;

  cert.k = select_k(inst, prec);
  if (!cert.k->verified) {
    cert.failure_reasons.push_back("Omega < 1 not certified at k = " + std::to_string(cert.k->k));
    return cert;
  }
  cert.valid = true;
  return cert;
}

}  // namespace detail

struct CertifyOptions {
  std::vector<TheoremId> theorems{std::begin(kAllTheorems), std::end(kAllTheorems)};
  mpfr_prec_t precision = kDefaultPrecision;
  mpfr_prec_t max_precision = 4096;
};

struct CertifyResult {
  std::vector<BoundCertificate> certificates;
  std::optional<size_t> best;

  [[nodiscard]] const BoundCertificate* best_certificate() const { return best ? &certificates[*best] : nullptr; }
};

/// One certificate for a single theorem, doubling the working precision while
/// any condition or the Omega check is undecided.
inline BoundCertificate certify_theorem(TheoremId id, const ProblemInstance& inst, mpfr_prec_t precision = kDefaultPrecision,
                                        mpfr_prec_t max_precision = 4096) {
  mpfr_prec_t prec = precision;
  while (true) {
    BoundCertificate cert = detail::certify_at(id, inst, prec);
    const bool undecided = cert.report.any_indeterminate() ||
                           (cert.k && !cert.k->verified && !cert.k->log_omega.certainly_nonnegative());
    if (!undecided || prec * 2 > max_precision) {
      if (cert.k && !cert.k->verified && is_mgt1(id) && cert.report.all_pass() && !undecided)
        throw InternalInconsistency("Omega_1 >= 1 at the selected k although every hypothesis holds");
      return cert;
    }
    prec *= 2;
  }
}

inline CertifyResult certify(const ProblemInstance& inst, const CertifyOptions& opt = {}) {
  CertifyResult result;
  for (const TheoremId id : opt.theorems) {
    result.certificates.push_back(certify_theorem(id, inst, opt.precision, opt.max_precision));
    const auto& cert = result.certificates.back();
    if (!cert.valid) continue;
    if (!result.best || mpfr_greater_p(cert.bound_log10.lo(), result.certificates[*result.best].bound_log10.lo()))
      result.best = result.certificates.size() - 1;
  }
  return result;
}

}  // namespace plinform
