#include <gtest/gtest.h>

#include <random>

#include "plinform/pade.hpp"

using namespace plinform;

namespace {

BigRational q(long n, long d = 1) {
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

// Random alpha-vector of length m with every entry p-adically small.
// `large` selects M > 1 (numerators carry p^a) or M < 1 (small fractions).
AlphaVector random_alphas(std::mt19937_64& rng, size_t m, long prime, bool large) {
  std::uniform_int_distribution<long> unit(1, 9);
  std::uniform_int_distribution<int> sign(0, 1);
  while (true) {
    std::vector<BigRational> entries;
    for (size_t i = 0; i < m; ++i) {
      long u = unit(rng);
      while (u % prime == 0) u = unit(rng);
      long w = unit(rng) + (large ? 0 : 2 * prime);
      while (w % prime == 0) ++w;
      BigRational a = q(u * prime, w);
      if (large) a *= unit(rng) + 1;
      if (sign(rng)) a = -a;
      entries.push_back(a);
    }
    try {
      AlphaVector alphas(entries, BigInt(prime));
      if ((alphas.M() > 1) == large) return alphas;
    } catch (const std::invalid_argument&) {
    }
  }
}

// S_{k,mu,j}(1) = d alpha_j sum_N r_N (-1)^N summed directly from the
// remainder series coefficients r_N, N >= mk+k+mu, reduced mod p^absolute.
PadicValue series_route_S(const PadePolynomials& poly, size_t j, const BigInt& p, long absolute) {
  const BigRational& alpha = poly.alphas[j - 1];
  const long v = padic_valuation(alpha, p).value();
  const size_t mk = poly.m() * poly.k;
  // term N has valuation >= v (N - mk + 1) - log_p(N + 1)
  size_t n_max = mk + poly.k + poly.mu;
  while (true) {
    long floor_log = 0;
    for (BigInt pw = p; pw <= BigInt(static_cast<unsigned long>(n_max + 1)); pw *= p) ++floor_log;
    if (v * static_cast<long>(n_max - mk + 1) - floor_log >= absolute + 2) break;
    ++n_max;
  }
  const auto r = approximation_product(poly, j, n_max + 200);
  BigRational sum = 0;
  for (size_t n = mk + poly.k + poly.mu; n < r.size(); ++n) sum += (n % 2 == 0 ? r[n] : -r[n]);
  const BigRational d(lcm_upto(mk + poly.mu));
  return PadicValue::from_rational(d * alpha * sum, p, absolute);
}

}  // namespace

TEST(AlphaVector, Validation) {
  const BigInt p(5);
  EXPECT_THROW(AlphaVector({q(5), q(5)}, p), std::invalid_argument);
  EXPECT_THROW(AlphaVector({q(0)}, p), std::invalid_argument);
  EXPECT_THROW(AlphaVector({q(1, 5)}, p), std::invalid_argument);
  EXPECT_THROW(AlphaVector({q(3)}, p), std::invalid_argument);
  EXPECT_THROW(AlphaVector({q(5, 3)}, p, BigInt(2)), std::invalid_argument);
  EXPECT_THROW(AlphaVector({q(5)}, BigInt(4)), std::invalid_argument);
  const AlphaVector ok({q(5, 3), q(-25, 2)}, p);
  EXPECT_EQ(ok.Q(), BigInt(6));
  EXPECT_EQ(ok.M(), q(25, 2));
  EXPECT_EQ(ok.padic_size_valuation(), 1);
}

TEST(Sigma, HandExpansions) {
  const BigRational a = q(5, 3), b = q(-10, 7);
  const auto s1 = sigma_coeffs(1, AlphaVector({a}, BigInt(5)));
  ASSERT_EQ(s1.size(), 2u);
  EXPECT_EQ(s1[0], a);
  EXPECT_EQ(s1[1], q(-1));
  const auto s2 = sigma_coeffs(1, AlphaVector({a, b}, BigInt(5)));
  ASSERT_EQ(s2.size(), 3u);
  EXPECT_EQ(s2[0], a * b);
  EXPECT_EQ(s2[1], -(a + b));
  EXPECT_EQ(s2[2], q(1));
}

TEST(Sigma, MajorantAtTwo) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t m = 1 + trial % 3;
    const auto alphas = random_alphas(rng, m, 5, trial % 2 == 0);
    for (unsigned long k = 1; k <= 4; ++k) {
      const auto s = sigma_coeffs(k, alphas);
      BigRational lhs = 0;
      for (size_t i = 0; i < s.size(); ++i) lhs += abs(s[i]) * pow_rat(q(2), i);
      BigRational rhs = 1;
      for (const auto& a : alphas.entries()) rhs *= pow_rat(abs(a) + 2, k);
      EXPECT_LE(lhs, rhs);
    }
  }
}

TEST(BuildPade, HandExamples) {
  const BigRational a = q(5, 3);
  const AlphaVector alphas({a}, BigInt(5));
  const auto p0 = build_pade(1, 0, alphas);
  EXPECT_EQ(p0.a0, (Polynomial{q(2), -a}));
  ASSERT_EQ(p0.a.size(), 1u);
  EXPECT_EQ(p0.a[0], (Polynomial{q(2)}));
  const auto p1 = build_pade(1, 1, alphas);
  EXPECT_EQ(p1.a0, (Polynomial{q(3), -2 * a}));
  EXPECT_EQ(p1.a[0], (Polynomial{q(3), -a / 2}));
  EXPECT_THROW(build_pade(1, 2, alphas), std::invalid_argument);
}

TEST(BuildPade, DegreesAndOrderOnRandomInstances) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t m = 1 + trial % 3;
    const unsigned long k = 1 + static_cast<unsigned long>(trial) % 4;
    const auto alphas = random_alphas(rng, m, 7, trial % 2 == 0);
    for (unsigned long mu = 0; mu <= m; ++mu) {
      const auto poly = build_pade(k, mu, alphas);
      EXPECT_EQ(degree(poly.a0), static_cast<long>(m * k));
      for (size_t j = 1; j <= m; ++j) {
        EXPECT_LE(degree(poly.a[j - 1]), static_cast<long>(m * k + mu) - 1);
        const auto check = order_check(poly, j, m * k + k + mu);
        EXPECT_TRUE(check.ok) << "first nonzero at " << check.first_nonzero.value_or(0);
      }
    }
  }
}

TEST(OrderCheck, LeadingRemainderTerm) {
  // m=1,k=1,mu=0: A0(z) log(1-az)/(-az) - 2 = a^2 z^2 / 6 + ..., so in the
  // B/S normalization S(t) = a t R(-t) starts with (a t)^3 / 6.
  const BigRational a = q(5, 3);
  const auto poly = build_pade(1, 0, AlphaVector({a}, BigInt(5)));
  EXPECT_TRUE(order_check(poly, 1, 2).ok);
  const auto fail = order_check(poly, 1, 3);
  EXPECT_FALSE(fail.ok);
  EXPECT_EQ(fail.first_nonzero, std::optional<size_t>(2));
  const auto r = approximation_product(poly, 1, 3);
  EXPECT_EQ(r[2], pow_rat(a, 2) / 6);
}

TEST(OrderCheck, VacuousOnZeroPolynomial) {
  PadePolynomials empty;
  empty.alphas = {q(5)};
  empty.a = {Polynomial{}};
  EXPECT_TRUE(order_check(empty, 1, 10).ok);
}

TEST(EvalB, HandExamples) {
  const BigRational a = q(5, 3);
  const AlphaVector alphas({a}, BigInt(5));
  const auto s0 = eval_B_at_one(build_pade(1, 0, alphas), alphas);
  EXPECT_EQ(s0.b_values[0], 2 + a);
  EXPECT_EQ(s0.b_values[1], 2 * a);
  const auto s1 = eval_B_at_one(build_pade(1, 1, alphas), alphas);
  EXPECT_EQ(s1.b_values[0], 6 + 4 * a);
  EXPECT_EQ(s1.b_values[1], 6 * a + a * a);
  EXPECT_EQ(BigRational(s1.scaled_b[1]), 9 * (6 * a + a * a));
}

TEST(EvalB, PolynomialsAtOneFifth) {
  const auto alphas = AlphaVector::without_prime({q(1, 5)});
  const auto poly = build_pade(1, 0, alphas);
  EXPECT_EQ(eval_B(poly, q(3)), (std::vector<BigRational>{2 + q(3, 5), 2 * q(3, 5)}));
  EXPECT_THROW((void)alphas.prime(), std::logic_error);
}

TEST(EvalB, IntegralityOnRandomInstances) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t m = 1 + trial % 3;
    const unsigned long k = 1 + static_cast<unsigned long>(trial) % 4;
    const auto alphas = random_alphas(rng, m, trial % 2 ? 5 : 3, trial % 3 != 0);
    for (unsigned long mu = 0; mu <= m; ++mu) EXPECT_NO_THROW(build_system(k, mu, alphas));
  }
}

TEST(Estimates, ArchimedeanBounds) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t m = 1 + trial % 3;
    const unsigned long k = 1 + static_cast<unsigned long>(trial) % 4;
    const auto alphas = random_alphas(rng, m, 5, trial % 2 == 0);
    for (unsigned long mu = 0; mu <= m; ++mu) {
      const auto sys = build_system(k, mu, alphas);
      EXPECT_LE(abs(sys.b_values[0]), estimate_B0(m, k, alphas.M()));
      for (size_t j = 1; j <= m; ++j) EXPECT_LE(abs(sys.b_values[j]), estimate_Bj(m, k, alphas.M()));
    }
  }
}

TEST(Remainder, LeadingValuationForAlphaEqualP) {
  for (const long prime : {5L, 7L, 11L}) {
    const AlphaVector alphas({q(prime)}, BigInt(prime));
    const auto s = remainder_S(1, 0, 1, alphas, 10);
    EXPECT_GE(s.value.valuation_lower_bound(), Valuation(3));
    EXPECT_EQ(s.value.valuation(), Valuation(3)) << "leading term p^3/6 is a p-adic unit times p^3";
    EXPECT_TRUE(s.meets_estimate);
  }
}

TEST(Remainder, EstimateAndSeriesRouteAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t m = 1 + trial % 3;
    const unsigned long k = 1 + static_cast<unsigned long>(trial) % 3;
    const long prime = trial % 2 ? 5 : 7;
    const auto alphas = random_alphas(rng, m, prime, trial % 3 != 0);
    const unsigned long mu = static_cast<unsigned long>(trial) % (m + 1);
    const size_t j = 1 + static_cast<size_t>(trial) % m;
    const auto s = remainder_S(k, mu, j, alphas, 6);
    EXPECT_TRUE(s.meets_estimate);
    const long absolute = static_cast<long>(m * k + k + 1) * alphas.padic_size_valuation() + 6;
    const auto oracle = series_route_S(build_pade(k, mu, alphas), j, alphas.prime(), absolute);
    EXPECT_TRUE(s.value.agrees_with(oracle)) << "trial " << trial << ": " << s.value.to_string() << " vs "
                                             << oracle.to_string();
  }
}

TEST(Determinant, HandValueMEqualsOne) {
  const BigRational a = q(5, 3);
  const auto det = determinant_delta(1, AlphaVector({a}, BigInt(5)), q(1));
  EXPECT_EQ(det.direct, pow_rat(a, 3));
  EXPECT_EQ(det.closed_form, pow_rat(a, 3) / 2);
  EXPECT_EQ(det.scaling, BigInt(2));
  EXPECT_NE(det.sign, 0);
}

TEST(Determinant, IdentityForSmallCases) {
  std::mt19937_64 rng(37);
  for (size_t m = 1; m <= 2; ++m) {
    for (unsigned long k = 1; k <= 3; ++k) {
      for (const BigRational& t : {q(1), q(2), q(-1, 3)}) {
        const auto alphas = random_alphas(rng, m, 5, k % 2 == 1);
        const auto det = determinant_delta(k, alphas, t);
        EXPECT_NE(det.direct, 0);
        EXPECT_NE(det.sign, 0) << "m=" << m << " k=" << k << " t=" << t;
      }
    }
  }
  EXPECT_THROW(determinant_delta(1, AlphaVector({q(5)}, BigInt(5)), q(0)), std::invalid_argument);
}

TEST(SelectRow, Examples) {
  const BigRational a = q(10, 3);
  const AlphaVector alphas({a}, BigInt(5));
  std::vector<PadeSystem> systems{build_system(1, 0, alphas), build_system(1, 1, alphas)};
  const auto [mu, t] = select_nonzero_row(systems, {BigInt(0), BigInt(1)});
  EXPECT_EQ(mu, 0u);
  EXPECT_EQ(BigRational(t), BigRational(pow_int(alphas.Q(), 2)) * 2 * a);
  EXPECT_THROW(select_nonzero_row(systems, {BigInt(0), BigInt(0)}), std::invalid_argument);
}

TEST(SelectRow, RandomNonzero) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> lam(-50, 50);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t m = 1 + trial % 3;
    const unsigned long k = 1 + static_cast<unsigned long>(trial) % 3;
    const auto alphas = random_alphas(rng, m, 5, trial % 2 == 0);
    std::vector<PadeSystem> systems;
    for (unsigned long mu = 0; mu <= m; ++mu) systems.push_back(build_system(k, mu, alphas));
    std::vector<BigInt> lambdas;
    for (size_t i = 0; i <= m; ++i) lambdas.emplace_back(lam(rng));
    if (std::all_of(lambdas.begin(), lambdas.end(), [](const BigInt& x) { return x == 0; })) lambdas[0] = 1;
    const auto [mu, t] = select_nonzero_row(systems, lambdas);
    EXPECT_NE(t, 0);
    for (unsigned long earlier = 0; earlier < mu; ++earlier) EXPECT_EQ(systems[earlier].T(lambdas), 0);
  }
}
