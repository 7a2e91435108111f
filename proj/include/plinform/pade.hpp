#pragma once

// Simultaneous Padé approximations of the second kind for the functions
// log(1 - a_j z)/(-a_j z), their integer-scaled values at t = 1, the
// p-adic remainders and the (m+1)x(m+1) determinant.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plinform/arith/interval.hpp"
#include "plinform/arith/padic.hpp"
#include "plinform/arith/rational.hpp"

namespace plinform {

/// Coefficients in ascending degree.
using Polynomial = std::vector<BigRational>;

/// Degree of p, or -1 for the zero polynomial.
inline long degree(const Polynomial& poly) {
  for (long i = static_cast<long>(poly.size()) - 1; i >= 0; --i)
    if (poly[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

inline BigRational evaluate(const Polynomial& poly, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial c(a.size() + b.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// The rationals a_1..a_m of a linear form together with the derived
/// quantities Q (common denominator), M (max |a_i|) and v = min v_p(a_i),
/// so that the p-adic size is p^-v.
class AlphaVector {
 public:
  AlphaVector(std::vector<BigRational> entries, BigInt prime, std::optional<BigInt> common_denominator = std::nullopt)
      : entries_(std::move(entries)), prime_(std::move(prime)) {
    require_prime(*prime_);
    init(std::move(common_denominator));
    valuation_ = padic_valuation(entries_.front(), *prime_).value();
    for (const auto& a : entries_) valuation_ = std::min(valuation_, padic_valuation(a, *prime_).value());
    if (valuation_ < 1)
      throw std::invalid_argument("every alpha must satisfy |alpha|_p < 1 (v_p >= 1); minimum valuation is " +
                                  std::to_string(valuation_));
  }

  /// Entries used only for the Padé construction; p-adic queries throw.
  static AlphaVector without_prime(std::vector<BigRational> entries,
                                   std::optional<BigInt> common_denominator = std::nullopt) {
    AlphaVector out;
    out.entries_ = std::move(entries);
    out.init(std::move(common_denominator));
    return out;
  }

  [[nodiscard]] size_t m() const { return entries_.size(); }
  [[nodiscard]] const std::vector<BigRational>& entries() const { return entries_; }
  [[nodiscard]] const BigRational& operator[](size_t i) const { return entries_[i]; }
  [[nodiscard]] bool has_prime() const { return prime_.has_value(); }
  [[nodiscard]] const BigInt& prime() const {
    if (!prime_) throw std::logic_error("alpha vector was built without a prime");
    return *prime_;
  }
  [[nodiscard]] const BigInt& Q() const { return q_; }
  /// Archimedean size M = max |alpha_i|.
  [[nodiscard]] const BigRational& M() const { return max_abs_; }
  /// v with max |alpha_i|_p = p^-v.
  [[nodiscard]] long padic_size_valuation() const {
    (void)prime();
    return valuation_;
  }
  /// log of the p-adic size, -v log p.
  [[nodiscard]] Interval log_padic_size(mpfr_prec_t prec = kDefaultPrecision) const {
    return Interval::point(-padic_size_valuation(), prec) * log_of(prime(), prec);
  }

 private:
  AlphaVector() = default;

  void init(std::optional<BigInt> common_denominator) {
    if (entries_.empty()) throw std::invalid_argument("alphas must be nonempty");
    std::set<BigRational> seen;
    for (const auto& a : entries_) {
      if (a == 0) throw std::invalid_argument("alphas must be nonzero");
      if (!seen.insert(a).second) throw std::invalid_argument("alphas must be pairwise distinct");
    }
    if (common_denominator) {
      q_ = *common_denominator;
      if (q_ <= 0) throw std::invalid_argument("Q must be a positive integer");
      for (const auto& a : entries_) {
        if (BigRational(q_ * a).get_den() != 1)
          throw std::invalid_argument("Q * alpha must be integral for every alpha (fails for " + a.get_str() + ")");
      }
    } else {
      q_ = 1;
      for (const auto& a : entries_) mpz_lcm(q_.get_mpz_t(), q_.get_mpz_t(), a.get_den().get_mpz_t());
    }
    max_abs_ = 0;
    for (const auto& a : entries_) max_abs_ = std::max(max_abs_, BigRational(abs(a)));
    if (max_abs_ == 1) throw std::invalid_argument("M = max |alpha_i| must differ from 1");
  }

  std::vector<BigRational> entries_;
  std::optional<BigInt> prime_;
  BigInt q_;
  BigRational max_abs_;
  long valuation_ = 0;
};

/// sigma_0..sigma_mk: coefficients of prod_j (a_j - z)^k.
inline std::vector<BigRational> sigma_coeffs(unsigned long k, const AlphaVector& alphas) {
  if (k < 1) throw std::invalid_argument("sigma_coeffs requires k >= 1");
  Polynomial product{BigRational(1)};
  for (const auto& a : alphas.entries()) {
    Polynomial factor(k + 1);
    for (unsigned long i = 0; i <= k; ++i) {
      BigRational c(binomial(k, i));
      c *= pow_rat(a, k - i);
      if (i % 2 == 1) c = -c;
      factor[i] = c;
    }
    product = multiply(product, factor);
  }
  return product;
}

struct PadePolynomials {
  unsigned long k = 0;
  unsigned long mu = 0;
  std::vector<BigRational> alphas;
  std::vector<BigRational> sigma;
  Polynomial a0;
  /// a[j-1] is A_{k,mu,j}.
  std::vector<Polynomial> a;

  [[nodiscard]] unsigned long m() const { return alphas.size(); }
};

inline PadePolynomials build_pade(unsigned long k, unsigned long mu, const AlphaVector& alphas) {
  const unsigned long m = alphas.m();
  if (mu > m) throw std::invalid_argument("build_pade requires 0 <= mu <= m");
  PadePolynomials out;
  out.k = k;
  out.mu = mu;
  out.alphas = alphas.entries();
  out.sigma = sigma_coeffs(k, alphas);
  const unsigned long mk = m * k;
  const bool flip = mk % 2 == 1;

  // c_i = (-1)^mk C(i+k+mu, k) sigma_i, shared by A0 and every Aj.
  std::vector<BigRational> c(mk + 1);
  for (unsigned long i = 0; i <= mk; ++i) {
    c[i] = BigRational(binomial(i + k + mu, k)) * out.sigma[i];
    if (flip) c[i] = -c[i];
  }

  out.a0.assign(mk + 1, BigRational(0));
  for (unsigned long i = 0; i <= mk; ++i) out.a0[mk - i] = c[i];

  for (const auto& alpha : out.alphas) {
    Polynomial aj(mk + mu, BigRational(0));
    for (unsigned long n = 0; n < mk + mu; ++n) {
      BigRational coeff = 0;
      for (unsigned long i = mk - std::min(n, mk); i <= mk; ++i) {
        const unsigned long e = n + i - mk;
        coeff += c[i] * pow_rat(alpha, e) / BigRational(e + 1);
      }
      aj[n] = coeff;
    }
    out.a.push_back(std::move(aj));
  }
  return out;
}

/// Coefficients r_0..r_{count-1} of A0(z) * sum_n (a_j z)^n / (n+1).
inline std::vector<BigRational> approximation_product(const PadePolynomials& poly, size_t j, size_t count) {
  if (j < 1 || j > poly.m()) throw std::out_of_range("approximation index j out of range");
  const BigRational& alpha = poly.alphas[j - 1];
  std::vector<BigRational> series(count);
  BigRational power = 1;
  for (size_t n = 0; n < count; ++n) {
    series[n] = power / BigRational(static_cast<unsigned long>(n + 1));
    power *= alpha;
  }
  std::vector<BigRational> r(count, BigRational(0));
  for (size_t h = 0; h < poly.a0.size() && h < count; ++h) {
    if (poly.a0[h] == 0) continue;
    for (size_t n = 0; n + h < count; ++n) r[n + h] += poly.a0[h] * series[n];
  }
  return r;
}

struct OrderCheck {
  bool ok = true;
  /// First index below the target whose coefficient does not vanish.
  std::optional<size_t> first_nonzero;
};

/// Confirms that A0(z) log(1 - a_j z)/(-a_j z) - Aj(z) vanishes to order
/// `order_target` by exact truncated series expansion.
inline OrderCheck order_check(const PadePolynomials& poly, size_t j, size_t order_target) {
  if (poly.a0.empty() && (poly.a.empty() || poly.a[j - 1].empty())) return {};
  auto r = approximation_product(poly, j, order_target);
  const Polynomial& aj = poly.a[j - 1];
  for (size_t n = 0; n < order_target; ++n) {
    BigRational coeff = r[n];
    if (n < aj.size()) coeff -= aj[n];
    if (coeff != 0) return {false, n};
  }
  return {};
}

/// B_{k,mu,0}(t), ..., B_{k,mu,m}(t).
inline std::vector<BigRational> eval_B(const PadePolynomials& poly, const BigRational& t) {
  const BigRational d(lcm_upto(poly.m() * poly.k + poly.mu));
  std::vector<BigRational> b;
  b.reserve(poly.m() + 1);
  b.push_back(d * evaluate(poly.a0, -t));
  for (size_t j = 0; j < poly.m(); ++j) b.push_back(d * poly.alphas[j] * t * evaluate(poly.a[j], -t));
  return b;
}

struct PadeSystem {
  unsigned long k = 0;
  unsigned long mu = 0;
  /// B_{k,mu,j}(1) for j = 0..m.
  std::vector<BigRational> b_values;
  /// Q^{mk+m} B_{k,mu,j}(1), exact integers.
  std::vector<BigInt> scaled_b;

  /// T(k, mu) = sum_j lambda_j Q^{mk+m} B_{k,mu,j}(1).
  [[nodiscard]] BigInt T(const std::vector<BigInt>& lambdas) const {
    if (lambdas.size() != scaled_b.size()) throw std::invalid_argument("lambda vector must have m+1 entries");
    BigInt t = 0;
    for (size_t j = 0; j < lambdas.size(); ++j) t += lambdas[j] * scaled_b[j];
    return t;
  }
};

inline PadeSystem eval_B_at_one(const PadePolynomials& poly, const AlphaVector& alphas) {
  PadeSystem sys;
  sys.k = poly.k;
  sys.mu = poly.mu;
  sys.b_values = eval_B(poly, BigRational(1));
  const BigInt scale = pow_int(alphas.Q(), poly.m() * poly.k + poly.m());
  for (const auto& b : sys.b_values) {
    const BigRational scaled = BigRational(scale) * b;
    if (scaled.get_den() != 1)
      throw InternalInconsistency("Q^(mk+m) B_{k,mu,j}(1) is not an integer: " + scaled.get_str());
    sys.scaled_b.push_back(scaled.get_num());
  }
  return sys;
}

inline PadeSystem build_system(unsigned long k, unsigned long mu, const AlphaVector& alphas) {
  return eval_B_at_one(build_pade(k, mu, alphas), alphas);
}

/// True when v_p(S) >= lower_bound certifies |S|_p <= (mk+k+1) p^{-v(mk+k+1)}.
inline bool meets_remainder_estimate(Valuation lower_bound, const BigInt& p, long v, unsigned long m,
                                     unsigned long k) {
  if (lower_bound.is_infinite()) return true;
  const unsigned long n = m * k + k + 1;
  const long excess = static_cast<long>(n) * v - lower_bound.value();
  if (excess <= 0) return true;
  return pow_int(p, static_cast<unsigned long>(excess)) <= BigInt(n);
}

struct RemainderValue {
  PadicValue value;
  /// v_p(S) lower bound satisfies the estimate |S|_p <= (mk+k+1) alpha^{mk+k+1}.
  bool meets_estimate = false;
};

/// S_{k,mu,j}(1) = B_{k,mu,0}(1) log(1+a_j) - B_{k,mu,j}(1) as a p-adic number
/// with at least `target_precision` digits beyond the estimate's valuation.
inline RemainderValue remainder_S(unsigned long k, unsigned long mu, size_t j, const AlphaVector& alphas,
                                  long target_precision) {
  if (j < 1 || j > alphas.m()) throw std::out_of_range("remainder index j out of range");
  const auto poly = build_pade(k, mu, alphas);
  const auto b = eval_B(poly, BigRational(1));
  const BigInt& p = alphas.prime();
  const long estimate = static_cast<long>(alphas.m() * k + k + 1) * alphas.padic_size_valuation();
  const long absolute = estimate + std::max(1L, target_precision);
  const long b0_val = b[0] == 0 ? 0 : padic_valuation(b[0], p).value();
  const long log_absolute = absolute + std::max(0L, -b0_val);
  const PadicValue log_value =
      PadicValue::from_scaled_residue(p, 0, padic_log_residue(alphas[j - 1], p, log_absolute), log_absolute);
  RemainderValue out{log_value.scaled(b[0]) - PadicValue::from_rational(b[j], p, absolute), false};
  if (out.value.absolute_precision() < Valuation(estimate))
    throw InternalInconsistency("remainder precision fell below the estimate valuation");
  out.meets_estimate =
      meets_remainder_estimate(out.value.valuation_lower_bound(), p, alphas.padic_size_valuation(), alphas.m(), k);
  return out;
}

/// Exact determinant by Gaussian elimination over the rationals.
inline BigRational determinant(std::vector<std::vector<BigRational>> a) {
  const size_t n = a.size();
  BigRational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const BigRational f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

struct DeterminantCheck {
  /// det of the matrix with rows (B_{k,mu,0}(t), ..., B_{k,mu,m}(t)), mu = 0..m.
  BigRational direct;
  /// (k!)^m/(mk+m)! * (t^{m(m+1)/2} a_1..a_m prod_{i<j}(a_i - a_j))^{2k+1}.
  BigRational closed_form;
  /// prod_{mu=0}^m d_{mk+mu}: the B rows carry this factor relative to the closed form.
  BigInt scaling;
  /// +1 or -1 when direct = sign * scaling * closed_form, 0 otherwise.
  int sign = 0;
};

inline DeterminantCheck determinant_delta(unsigned long k, const AlphaVector& alphas, const BigRational& t) {
  if (t == 0) throw std::invalid_argument("determinant_delta requires t != 0");
  const unsigned long m = alphas.m();
  std::vector<std::vector<BigRational>> rows;
  DeterminantCheck out;
  out.scaling = 1;
  for (unsigned long mu = 0; mu <= m; ++mu) {
    rows.push_back(eval_B(build_pade(k, mu, alphas), t));
    out.scaling *= lcm_upto(m * k + mu);
  }
  out.direct = determinant(rows);

  BigRational inner = pow_rat(t, m * (m + 1) / 2);
  for (size_t i = 0; i < m; ++i) {
    inner *= alphas[i];
    for (size_t j = i + 1; j < m; ++j) inner *= alphas[i] - alphas[j];
  }
  out.closed_form = BigRational(pow_int(factorial(k), m), factorial(m * k + m)) * pow_rat(inner, 2 * k + 1);
  out.closed_form.canonicalize();
  const BigRational expected = BigRational(out.scaling) * out.closed_form;
  if (out.direct == expected) {
    out.sign = 1;
  } else if (out.direct == -expected) {
    out.sign = -1;
  }
  return out;
}

/// The smallest mu with T(k, mu) != 0.
inline std::pair<unsigned long, BigInt> select_nonzero_row(const std::vector<PadeSystem>& systems,
                                                           const std::vector<BigInt>& lambdas) {
  if (std::all_of(lambdas.begin(), lambdas.end(), [](const BigInt& l) { return l == 0; }))
    throw std::invalid_argument("lambdas must not all be zero");
  for (const auto& sys : systems) {
    BigInt t = sys.T(lambdas);
    if (t != 0) return {sys.mu, t};
  }
  throw InternalInconsistency("T(k, mu) vanishes for every mu although the B-matrix is invertible");
}

/// 2^{k+m-1} 3^{mk} d_{mk+m}: the common factor of both archimedean estimates.
inline BigRational archimedean_estimate_base(unsigned long m, unsigned long k) {
  return BigRational(pow_int(2, k + m - 1) * pow_int(3, m * k) * lcm_upto(m * k + m));
}

/// Upper estimate for |B_{k,mu,0}(1)|.
inline BigRational estimate_B0(unsigned long m, unsigned long k, const BigRational& M) {
  return archimedean_estimate_base(m, k) * (M > 1 ? pow_rat(M, m * k) : BigRational(1));
}

/// Upper estimate for |B_{k,mu,j}(1)|, j >= 1.
inline BigRational estimate_Bj(unsigned long m, unsigned long k, const BigRational& M) {
  return archimedean_estimate_base(m, k) * (pow_rat(M, m * k + m + 1) - M) / (M - 1);
}

}  // namespace plinform
