// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance [--only N]; exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "plinform/harness.hpp"

using namespace plinform;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

BigRational random_rational(std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  long n = 0;
  while (n == 0) n = num(rng);
  BigRational r(n, den(rng));
  r.canonicalize();
  return r;
}

std::vector<BigRational> random_distinct(std::mt19937_64& rng, size_t m, long range) {
  while (true) {
    std::vector<BigRational> v;
    for (size_t i = 0; i < m; ++i) v.push_back(random_rational(rng, range));
    try {
      (void)AlphaVector::without_prime(v);
      return v;
    } catch (const std::invalid_argument&) {
    }
  }
}

Outcome pade_exactness() {
  std::mt19937_64 rng(101);
  unsigned long cases = 0, failures = 0;
  std::string first_failure;
  for (unsigned long m = 1; m <= 3; ++m) {
    for (unsigned long k = 1; k <= 4; ++k) {
      for (unsigned long mu = 0; mu <= m; ++mu) {
        for (int rep = 0; rep < 5; ++rep) {
          const AlphaVector alphas = AlphaVector::without_prime(random_distinct(rng, m, 9));
          const PadePolynomials poly = build_pade(k, mu, alphas);
          bool ok = degree(poly.a0) == static_cast<long>(m * k);
          for (size_t j = 1; j <= m; ++j) {
            ok = ok && degree(poly.a[j - 1]) <= static_cast<long>(m * k + mu) - 1;
            ok = ok && order_check(poly, j, m * k + k + mu).ok;
          }
          try {
            (void)eval_B_at_one(poly, alphas);
          } catch (const InternalInconsistency&) {
            ok = false;
          }
          ++cases;
          if (!ok) {
            ++failures;
            if (first_failure.empty())
              first_failure = " first at m=" + std::to_string(m) + " k=" + std::to_string(k) + " mu=" + std::to_string(mu);
          }
        }
      }
    }
  }
  return {failures == 0, std::to_string(cases) + " (m,k,mu,alpha) cases, " + std::to_string(failures) +
                             " failures" + first_failure};
}

Outcome determinant_identity() {
  std::mt19937_64 rng(202);
  unsigned long cases = 0, failures = 0;
  const BigRational ts[] = {BigRational(1), BigRational(2), BigRational(-1, 3)};
  for (unsigned long m = 1; m <= 2; ++m)
    for (unsigned long k = 1; k <= 3; ++k)
      for (const auto& t : ts)
        for (int rep = 0; rep < 3; ++rep) {
          const AlphaVector alphas = AlphaVector::without_prime(random_distinct(rng, m, 7));
          ++cases;
          if (determinant_delta(k, alphas, t).sign == 0) ++failures;
        }
  // hand value: m = k = 1, t = 1 gives det = +-a^3
  const BigRational a(3, 7);
  const auto hand = determinant_delta(1, AlphaVector::without_prime({a}), BigRational(1));
  const bool hand_ok = abs(hand.direct) == pow_rat(a, 3);
  return {failures == 0 && hand_ok, std::to_string(cases) + " cases, " + std::to_string(failures) +
                                        " failures; m=k=1 hand value a^3 " + (hand_ok ? "reproduced" : "NOT reproduced")};
}

Outcome estimate_lemmas() {
  std::mt19937_64 rng(303);
  const long primes[] = {3, 5, 7, 11};
  std::uniform_int_distribution<int> pick(0, 3), mdist(1, 3), kdist(1, 3), adist(1, 3);
  std::uniform_int_distribution<long> u(1, 12);
  unsigned long gt = 0, lt = 0, failures = 0;
  while (gt + lt < 120 || gt < 40 || lt < 40) {
    const long p = primes[pick(rng)];
    const size_t m = static_cast<size_t>(mdist(rng));
    const bool want_large = (gt + lt) % 2 == 0;
    std::vector<BigRational> entries;
    for (size_t i = 0; i < m; ++i) {
      long num = u(rng);
      while (num % p == 0) ++num;
      BigInt pa = pow_int(p, static_cast<unsigned long>(adist(rng)));
      long den = u(rng);
      while (den % p == 0) ++den;
      BigInt d(den);
      if (!want_large) d += pa * num;  // |alpha| < 1
      BigRational a(pa * num, d);
      a.canonicalize();
      entries.push_back(u(rng) % 2 ? a : BigRational(-a));
    }
    std::optional<AlphaVector> alphas;
    try {
      alphas.emplace(entries, BigInt(p));
    } catch (const std::invalid_argument&) {
      continue;
    }
    if ((alphas->M() > 1) != want_large) continue;
    const unsigned long k = static_cast<unsigned long>(kdist(rng));
    std::uniform_int_distribution<unsigned long> mud(0, m);
    const unsigned long mu = mud(rng);
    const auto b = eval_B(build_pade(k, mu, *alphas), BigRational(1));
    bool ok = abs(b[0]) <= estimate_B0(m, k, alphas->M());
    for (size_t j = 1; j <= m; ++j) {
      ok = ok && abs(b[j]) <= estimate_Bj(m, k, alphas->M());
      ok = ok && remainder_S(k, mu, j, *alphas, 4).meets_estimate;
    }
    if (!ok) ++failures;
    (want_large ? gt : lt)++;
  }
  return {failures == 0, std::to_string(gt + lt) + " instances (" + std::to_string(gt) + " with M>1, " +
                             std::to_string(lt) + " with M<1), " + std::to_string(failures) + " failures"};
}

Outcome example1() {
  const auto checks = reproduce_examples();
  const auto& threshold = checks[0];
  const auto& cert = checks[1];
  std::string detail = "log10 threshold " + fmt(threshold.computed.mid_double()) + " vs 1672.48 +- 3 (" +
                       (threshold.pass ? "ok" : "off") + "; " + threshold.note + "); H^-2.1 certificate: ";
  detail += cert.pass ? "valid" : "not certified (" + cert.note + ")";
  return {threshold.pass && cert.pass, detail};
}

Outcome example2() {
  const auto checks = reproduce_examples();
  const auto& coef = checks[2];
  const auto& c1 = checks[3];
  return {coef.pass && c1.pass, "3 log p / log f - 1 = " + fmt(coef.computed.mid_double()) + " (target [417, 419]); log10 c1 = " +
                                    fmt(c1.computed.mid_double(), 2) + " (target [-2053, -2047])"};
}

Outcome example3() {
  const auto checks = reproduce_examples();
  const auto& threshold = checks[4];
  const auto& cert = checks[5];
  std::string detail = "log10 threshold " + fmt(threshold.computed.mid_double()) + " vs " +
                       fmt(std::log10(3.6) + 6482) + " +- 3 (" + (threshold.pass ? "ok" : "off") + "); H^-2.1 certificate: ";
  detail += cert.pass ? "valid" : "not certified (" + cert.note + ")";
  return {threshold.pass && cert.pass, detail};
}

Outcome end_to_end() {
  const AlphaVector alphas = example1_alphas();
  unsigned long samples = 0, violations = 0, certificates = 0;
  long max_valuation = 0;
  const std::pair<long, unsigned long> plan[] = {{167248, 1000}, {50000, 300}, {10000, 300}, {1000, 300}};
  for (const auto& [log10_h_hundredths, count] : plan) {
    const ProblemInstance inst(alphas, height_from_log10(BigRational(log10_h_hundredths, 100)));
    const CertifyResult result = certify(inst);
    const BoundCertificate* best = result.best_certificate();
    if (!best) return {false, "no valid certificate at log10 H = " + fmt(log10_h_hundredths / 100.0, 2)};
    ++certificates;
    const auto report = sample_verify(inst, *best, SampleOptions{count, 7, 4});
    samples += report.samples_tested;
    violations += report.violations.size();
    max_valuation = std::max(max_valuation, report.max_valuation);
  }
  return {violations == 0 && samples >= 1000,
          std::to_string(samples) + " samples under " + std::to_string(certificates) + " certificates, " +
              std::to_string(violations) + " violations, largest v_11 seen " + std::to_string(max_valuation)};
}

Outcome lambert() {
  const Interval w1 = lambert_w_m1(-(Interval::point(1L) / Interval::e()));
  const Interval w2 = lambert_w_m1(Interval::point(-2L) * exp(Interval::point(-2L)));
  bool ok = w1.contains(BigRational(-1)) && w2.contains(BigRational(-2)) &&
            w1.width().to_double(MPFR_RNDU) <= 1e-12 && w2.width().to_double(MPFR_RNDU) <= 1e-12;
  for (long t : {0L, 1L, 10L, 100L}) {
    const Interval ti = Interval::point(t);
    const auto [lower, upper] = alzahrani_bracket(ti);
    const Interval w = lambert_w_m1_exp(ti + Interval::point(1L));
    ok = ok && mpfr_lessequal_p(lower.lo(), w.lo()) && mpfr_lessequal_p(w.hi(), upper.hi());
  }
  return {ok, "W(-1/e) width " + fmt(w1.width().to_double(MPFR_RNDU) * 1e12, 3) + "e-12, W(-2e^-2) width " +
                  fmt(w2.width().to_double(MPFR_RNDU) * 1e12, 3) + "e-12; bracket at t = 0, 1, 10, 100"};
}

Outcome rosser() {
  const Interval c = Interval::point(rosser_constant());
  unsigned long failures = 0;
  double tightest = 1e9;
  for (unsigned long n = 1; n <= 10000; ++n) {
    const Interval gap = c * Interval::point(static_cast<long>(n)) - log_of(lcm_upto(n));
    if (!gap.certainly_positive()) ++failures;
    tightest = std::min(tightest, gap.lo_double() / static_cast<double>(n));
  }
  return {failures == 0, "n = 1..10000, " + std::to_string(failures) + " failures, min (1.03883 n - log d_n)/n = " +
                             fmt(tightest, 6)};
}

Outcome k_caps() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<long> unit(1, 9), avals(4, 30), hval(5, 3000);
  const long primes[] = {3, 5, 7, 11, 13};
  std::uniform_int_distribution<int> pick(0, 4), mdist(1, 2);
  unsigned long simple = 0, mlt = 0, cap_fail = 0, omega_fail = 0;
  std::string first;
  int tries = 0;
  while ((simple < 30 || mlt < 30) && ++tries < 5000) {
    const long p = primes[pick(rng)];
    const size_t m = static_cast<size_t>(mdist(rng));
    const bool large = simple < 30 && (mlt >= 30 || tries % 2 == 0);
    std::vector<BigRational> entries;
    for (size_t i = 0; i < m; ++i) {
      long u = unit(rng);
      while (u % p == 0) ++u;
      const BigInt pa = pow_int(p, static_cast<unsigned long>(avals(rng)));
      BigRational a = large ? BigRational(pa * u) : BigRational(pa * u, pa * u + unit(rng) * pa * u / 10 + 1);
      a.canonicalize();
      entries.push_back(i % 2 ? BigRational(-a) : a);
    }
    std::optional<AlphaVector> alphas;
    try {
      alphas.emplace(entries, BigInt(p));
    } catch (const std::invalid_argument&) {
      continue;
    }
    if ((alphas->M() > 1) != large) continue;
    const long log10_h = hval(rng);
    const ProblemInstance inst(*alphas, pow_int(10, static_cast<unsigned long>(log10_h)));
    const TheoremId id = large ? TheoremId::MGT1_SIMPLE : TheoremId::MLT1_MAIN;
    if (!check_conditions(id, inst).all_pass()) continue;
    const KSelection ks = select_k(inst);
    const double log_h = static_cast<double>(log10_h) * std::log(10.0);
    const bool cap_ok = large ? static_cast<double>(ks.k) < 14 * log_h + 1 : static_cast<double>(ks.k) < 13 * log_h;
    if (!cap_ok) ++cap_fail;
    if (!ks.verified) {
      ++omega_fail;
      if (first.empty()) {
        first = "; first uncertified: " + instance_summary(*alphas) + " log10 H = " + std::to_string(log10_h) +
                " k = " + std::to_string(ks.k) + " log Omega = " + fmt(ks.log_omega.mid_double(), 2);
      }
    }
    (large ? simple : mlt)++;
  }
  return {cap_fail == 0 && omega_fail == 0 && simple >= 30 && mlt >= 30,
          std::to_string(simple) + " M>1 and " + std::to_string(mlt) + " M<1 instances; k-cap failures " +
              std::to_string(cap_fail) + ", Omega < 1 not certified " + std::to_string(omega_fail) + first};
}

Outcome yu() {
  YuParams y;
  y.m = 3;
  y.p = 7;
  y.A = {BigRational(5), BigRational(11, 2), BigRational(40)};
  y.b = {BigInt(12), BigInt(-30), BigInt(6)};
  y.B = 30;
  y.B_m = 6;
  y.delta = BigRational(1, 4);
  const YuBound r = yu_bound(y, 512);
  // independent evaluation in the log domain with long double
  const long double m = 3, p = 7;
  const long double l1 = std::log(5.0L), l2 = std::log(5.5L), l3 = std::log(40.0L);
  const long double log_t = std::log(2.0L) + std::log(6.0L) - std::log(0.25L) + (m + 1) * (6 * m + 5) +
                            (m + 1) * std::log(p) + std::log(l1) + std::log(l2);
  const long double log_factor = 2 * (m + 1) * (std::log(16.0L) + 1) + 1.5L * std::log(m) +
                                 2 * std::log(std::log(2 * m)) + std::log(p) - 2 * std::log(std::log(p));
  const long double inner = std::max(l1 * l2 * l3 * log_t, 0.25L * 30 / 6);
  const long double v = std::exp(log_factor) * inner;
  const double rel = std::fabs(static_cast<double>(r.valuation.mid_double() / v - 1));
  return {rel < 5e-7, "v_p bound " + r.valuation.upper().to_string(MPFR_RNDU, 10) + ", relative difference " +
                          fmt(rel * 1e9, 3) + "e-9"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"Pade correctness (exact)", pade_exactness},
      {"determinant identity (exact)", determinant_identity},
      {"estimate lemmas on random instances", estimate_lemmas},
      {"worked example 1", example1},
      {"worked example 2", example2},
      {"worked example 3", example3},
      {"end-to-end soundness at desk scale", end_to_end},
      {"Lambert W_-1 enclosure", lambert},
      {"Rosser check n <= 10^4", rosser},
      {"k-cap cross-checks", k_caps},
      {"Yu comparison formula", yu},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const auto& list = criteria();
  if (only < 0 || only > static_cast<int>(list.size())) {
    std::cerr << "criterion " << only << " does not exist\n";
    return 2;
  }
  bool all = true;
  for (size_t i = 0; i < list.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = list[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " " << list[i].first << ": " << o.detail
              << " [" << fmt(secs, 2) << "s]" << std::endl;
  }
  return all ? 0 : 1;
}
