// plinform: certified lower bounds for p-adic linear forms in logarithms.
//
// Exit codes: 0 success, 1 no applicable theorem / failed check,
// 2 malformed input, 3 internal inconsistency.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "instance_io.hpp"
#include "plinform/harness.hpp"

using namespace plinform;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kNoBound = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

struct InstanceArgs {
  std::string file;
  std::string prime;
  std::vector<std::string> alphas;
  std::string q;
  std::string height;
  std::string epsilon;
  std::vector<std::string> lambdas;
  long precision = 0;

  void add_to(CLI::App* cmd, bool with_height = true) {
    cmd->add_option("instance", file, "Instance file (key = value lines)");
    cmd->add_option("--prime", prime, "Prime p");
    cmd->add_option("--alpha", alphas, "An alpha_i (repeatable); exact expression such as 11^25/(1+11^25)");
    cmd->add_option("--Q", q, "Common denominator Q (default: lcm of denominators)");
    if (with_height) {
      cmd->add_option("--H", height, "Height H: integer expression, <m>e<exp>, or log10:<value>");
      cmd->add_option("--epsilon", epsilon, "epsilon in (0, 3] for the best-exponent theorems");
      cmd->add_option("--lambda", lambdas, "lambda_0, ..., lambda_m (repeatable)");
    }
    cmd->add_option("--precision", precision, "Working precision in bits (default 256)");
  }

  io::InstanceSpec spec() const {
    io::InstanceSpec s = file.empty() ? io::InstanceSpec{} : io::parse_instance_file(file);
    auto wrap = [](const std::string& key, const std::string& value, io::InstanceSpec& into) {
      try {
        io::set_key(into, key, value);
      } catch (const std::invalid_argument& e) {
        throw io::ParseError("--" + key + ": " + e.what());
      }
    };
    if (!prime.empty()) wrap("prime", prime, s);
    if (!alphas.empty()) {
      std::string joined;
      for (const auto& a : alphas) joined += (joined.empty() ? "" : ",") + ("(" + a + ")");
      wrap("alphas", joined, s);
    }
    if (!q.empty()) wrap("Q", q, s);
    if (!height.empty()) wrap("H", height, s);
    if (!epsilon.empty()) wrap("epsilon", epsilon, s);
    if (!lambdas.empty()) {
      std::string joined;
      for (const auto& l : lambdas) joined += (joined.empty() ? "" : ",") + ("(" + l + ")");
      wrap("lambdas", joined, s);
    }
    if (precision != 0) s.precision_bits = precision;
    return s;
  }
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string fmt(const Interval& x) { return "[" + x.lower().to_string(MPFR_RNDD, 12) + ", " + x.upper().to_string(MPFR_RNDU, 12) + "]"; }

double log10_height(const BigInt& H) { return log10(Interval::point(H, 128)).mid_double(); }

void print_instance(const ProblemInstance& inst) {
  std::cout << "instance: " << instance_summary(inst.alphas) << "\n";
  std::cout << "log10 H: " << fmt(log10_height(inst.H)) << "\n";
  if (inst.epsilon) std::cout << "epsilon: " << inst.epsilon->get_str() << "\n";
}

void print_certificate(const BoundCertificate& c) {
  std::cout << "\n" << theorem_name(c.theorem) << "  " << (c.valid ? "VALID" : "not applicable") << "  ("
            << c.precision << " bits)\n";
  for (const auto& cond : c.report.conditions) {
    std::cout << "  " << std::left << std::setw(22) << cond.name << std::setw(14) << verdict_name(cond.verdict)
              << "margin " << fmt(cond.margin) << (cond.strict ? " > 0" : " >= 0") << "\n";
  }
  if (c.report.all_pass()) {
    std::cout << "  log10 c      " << fmt(c.log10_c) << "\n"
              << "  omega        " << fmt(c.omega) << "\n"
              << "  bound_log10  " << fmt(c.bound_log10) << "\n";
  }
  if (c.k) std::cout << "  k = " << c.k->k << ", log Omega " << fmt(c.k->log_omega) << "\n";
  for (const auto& r : c.failure_reasons) std::cout << "  reason: " << r << "\n";
}

std::vector<TheoremId> theorems_from(const std::string& which) {
  if (which == "all") return {std::begin(kAllTheorems), std::end(kAllTheorems)};
  const auto id = parse_theorem(which);
  if (!id) throw io::ParseError("unknown theorem '" + which + "'");
  return {*id};
}

int cmd_bound(const InstanceArgs& args, const std::string& theorem, const std::string& json_path,
              const std::string& check_path) {
  if (!check_path.empty()) {
    std::ifstream in(check_path);
    if (!in) throw io::ParseError("cannot read certificate '" + check_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw io::ParseError(std::string("certificate is not valid JSON: ") + e.what());
    }
    const auto outcome = io::recheck(doc);
    for (const auto& d : outcome.differences) std::cout << "DIFF " << d << "\n";
    std::cout << (outcome.identical ? "CHECK PASS" : "CHECK FAIL") << "\n";
    return outcome.identical ? kOk : kNoBound;
  }
  const auto spec = args.spec();
  const ProblemInstance inst = spec.instance();
  CertifyOptions opt;
  opt.theorems = theorems_from(theorem);
  opt.precision = spec.precision_bits.value_or(kDefaultPrecision);
  opt.max_precision = std::max<mpfr_prec_t>(opt.precision, 4096);
  const CertifyResult result = certify(inst, opt);
  print_instance(inst);
  for (const auto& c : result.certificates) print_certificate(c);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << io::result_json(inst, result).dump(2) << "\n";
  }
  const BoundCertificate* best = result.best_certificate();
  if (!best) {
    std::cout << "\nno applicable theorem\n";
    return kNoBound;
  }
  std::cout << "\nbest: " << theorem_name(best->theorem) << "  |Lambda|_p > 10^" << best->bound_log10.lower().to_string(MPFR_RNDD, 12)
            << "  (c >= 10^" << best->log10_c.lower().to_string(MPFR_RNDD, 12) << ", H^-omega with omega <= "
            << best->omega.upper().to_string(MPFR_RNDU, 12) << ")\n";
  return kOk;
}

int cmd_verify(const InstanceArgs& args, const std::string& theorem, unsigned long samples, unsigned long seed,
               unsigned workers) {
  const auto spec = args.spec();
  const ProblemInstance inst = spec.instance();
  CertifyOptions opt;
  opt.theorems = theorems_from(theorem);
  opt.precision = spec.precision_bits.value_or(kDefaultPrecision);
  const CertifyResult result = certify(inst, opt);
  const BoundCertificate* best = result.best_certificate();
  if (!best) {
    std::cout << "no valid certificate for this instance\n";
    for (const auto& c : result.certificates)
      for (const auto& r : c.failure_reasons) std::cout << "  " << theorem_name(c.theorem) << ": " << r << "\n";
    return kNoBound;
  }
  const auto report = sample_verify(inst, *best, SampleOptions{samples, seed, workers});
  std::cout << report.to_string();
  std::cout << (report.ok() ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
  return report.ok() ? kOk : kNoBound;
}

int cmd_search(const InstanceArgs& args, unsigned long hmax) {
  const auto spec = args.spec();
  const AlphaVector alphas = spec.alpha_vector();
  const auto rows = exhaustive_min(alphas, hmax);
  std::cout << "instance: " << instance_summary(alphas) << "\n";
  std::cout << std::left << std::setw(8) << "H" << std::setw(10) << "max v_p" << std::setw(18) << "log10 min|L|_p"
            << "witness\n";
  for (const auto& row : rows) {
    std::cout << std::setw(8) << row.H.get_str() << std::setw(10)
              << (std::to_string(row.max_valuation) + (row.exact ? "" : "+")) << std::setw(18)
              << fmt(row.log10_min_abs(alphas.prime())) << lambdas_to_string(row.witness) << "\n";
  }
  return kOk;
}

int cmd_examples() {
  bool all = true;
  for (const auto& c : reproduce_examples()) {
    all = all && c.pass;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.quantity << " = " << (c.has_value ? fmt(c.computed) : std::string("not certified"))
              << ", expected [" << fmt(c.expected_lo, 4) << ", " << fmt(c.expected_hi, 4) << "]";
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  }
  return all ? kOk : kNoBound;
}

std::string poly_to_string(const Polynomial& p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    const BigRational& c = p[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const BigInt num = abs(c.get_num());
    std::string term;
    if (i == 0) {
      term = num.get_str();
    } else {
      if (num != 1) term = num.get_str();
      term += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    if (c.get_den() != 1) term += "/" + c.get_den().get_str();
    if (out.empty()) {
      out = (neg ? "-" : "") + term;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

// B_0(t) = d A_0(-t) and B_j(t) = d alpha_j t A_j(-t) as polynomials in t.
std::vector<Polynomial> b_polynomials(const PadePolynomials& poly) {
  const BigRational d(lcm_upto(poly.m() * poly.k + poly.mu));
  auto reflect = [&](const Polynomial& a, const BigRational& scale, size_t shift) {
    Polynomial out(a.size() + shift, BigRational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i + shift] = (i % 2 ? -a[i] : a[i]) * scale;
    return out;
  };
  std::vector<Polynomial> out{reflect(poly.a0, d, 0)};
  for (size_t j = 0; j < poly.m(); ++j) out.push_back(reflect(poly.a[j], d * poly.alphas[j], 1));
  return out;
}

int cmd_pade(const InstanceArgs& args, long m_opt, unsigned long k, unsigned long mu) {
  io::InstanceSpec spec = args.spec();
  if (spec.alphas.empty()) {
    if (m_opt <= 0) throw io::ParseError("give --alpha values or --m");
    for (long i = 1; i <= m_opt; ++i) spec.alphas.push_back(BigRational(1, i + 4));
  }
  if (m_opt > 0 && static_cast<size_t>(m_opt) != spec.alphas.size())
    throw io::ParseError("--m is " + std::to_string(m_opt) + " but " + std::to_string(spec.alphas.size()) +
                         " alphas were given");
  const AlphaVector alphas =
      spec.prime ? AlphaVector(spec.alphas, *spec.prime, spec.Q) : AlphaVector::without_prime(spec.alphas, spec.Q);
  const unsigned long m = alphas.m();
  if (k < 1) throw io::ParseError("--k must be >= 1");
  if (mu > m) throw io::ParseError("--mu must lie in [0, m]");
  const PadePolynomials poly = build_pade(k, mu, alphas);
  const auto bs = b_polynomials(poly);
  std::cout << "m = " << m << ", k = " << k << ", mu = " << mu << ", Q = " << alphas.Q() << "\n";
  for (size_t j = 0; j < bs.size(); ++j) std::cout << "B" << j << "(t) = " << poly_to_string(bs[j]) << "\n";

  bool all = true;
  auto line = [&](const std::string& what, bool ok, const std::string& detail = {}) {
    all = all && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
  };
  const size_t order = m * k + k + mu;
  bool order_ok = true;
  std::string order_detail = "remainder order >= " + std::to_string(order);
  for (size_t j = 1; j <= m; ++j) {
    const auto oc = order_check(poly, j, order);
    if (!oc.ok) {
      order_ok = false;
      order_detail = "j = " + std::to_string(j) + " has a nonzero coefficient at z^" + std::to_string(*oc.first_nonzero);
    }
  }
  line("order", order_ok, order_detail);
  bool deg_ok = degree(poly.a0) == static_cast<long>(m * k);
  for (const auto& a : poly.a) deg_ok = deg_ok && degree(a) <= static_cast<long>(m * k + mu) - 1;
  line("degrees", deg_ok, "deg A0 = " + std::to_string(degree(poly.a0)));
  try {
    const PadeSystem sys = eval_B_at_one(poly, alphas);
    std::string values;
    for (const auto& b : sys.scaled_b) values += (values.empty() ? "" : ", ") + b.get_str();
    line("integrality", true, "Q^(mk+m) B_j(1) = " + values);
  } catch (const InternalInconsistency& e) {
    line("integrality", false, e.what());
  }
  if (m * k <= 24) {
    const auto det = determinant_delta(k, alphas, BigRational(1));
    line("determinant", det.sign != 0, "det = " + det.direct.get_str());
  }
  return all ? kOk : kNoBound;
}

int cmd_compare_yu(const InstanceArgs& args) {
  const auto spec = args.spec();
  const ProblemInstance inst = spec.instance();
  const unsigned long m = inst.m();
  if (m < 2) throw io::ParseError("compare-yu needs m >= 2 (Yu's bound is stated for m >= 2)");
  const mpfr_prec_t prec = spec.precision_bits.value_or(kDefaultPrecision);
  // Lambda with lambda_0 = 0 equals the log of prod (1 + alpha_j)^{lambda_j}; both
  // have the same valuation, so Yu's bound applies with x_j = 1 + alpha_j, b_j = lambda_j.
  YuParams y;
  y.m = m;
  y.p = inst.prime();
  const BigRational e_ceiling(3);
  std::vector<BigRational> bases;
  for (const auto& a : inst.alphas.entries()) {
    const BigRational x = BigRational(1) + a;
    bases.push_back(x);
    y.A.push_back(std::max({e_ceiling, BigRational(abs(x.get_num())), BigRational(x.get_den())}));
    y.b.push_back(inst.H);
  }
  y.bases = bases;
  y.B = std::max(BigRational(inst.H), BigRational(3));
  y.B_m = BigRational(inst.H);
  y.delta = BigRational(1, 2);
  const YuBound yu = yu_bound(y, prec);
  CertifyOptions opt;
  opt.precision = prec;
  const CertifyResult result = certify(inst, opt);
  print_instance(inst);
  std::cout << "Yu (lambda_0 = 0, B = B_m = H, delta = 1/2):\n"
            << "  v_p bound     " << fmt(yu.valuation) << "\n"
            << "  log10 |L|_p > " << yu.log10_lower_bound.lower().to_string(MPFR_RNDD, 12) << "\n";
  if (const auto* best = result.best_certificate()) {
    std::cout << "Pade (" << theorem_name(best->theorem) << "):\n"
              << "  log10 |L|_p > " << best->bound_log10.lower().to_string(MPFR_RNDD, 12) << "\n";
    const bool pade_wins = mpfr_greater_p(best->bound_log10.lo(), yu.log10_lower_bound.lo());
    std::cout << "stronger: " << (pade_wins ? "Pade" : "Yu") << "\n";
  } else {
    std::cout << "Pade: no applicable theorem\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for p-adic linear forms in logarithms"};
  app.require_subcommand(1);

  InstanceArgs bound_args, verify_args, search_args, pade_args, yu_args;
  std::string theorem = "all", json_path, check_path, verify_theorem = "all";
  unsigned long samples = 100, seed = 1, hmax = 10, k = 1, mu = 0;
  unsigned workers = 4;
  long m_opt = 0;

  auto* bound = app.add_subcommand("bound", "Certify lower bounds for an instance");
  bound_args.add_to(bound);
  bound->add_option("--theorem", theorem, "Theorem id or 'all'");
  bound->add_option("--json", json_path, "Write the certificates as JSON");
  bound->add_option("--check", check_path, "Re-validate a JSON certificate file");

  auto* verify = app.add_subcommand("verify", "Sample lambda vectors against the best certificate");
  verify_args.add_to(verify);
  verify->add_option("--theorem", verify_theorem, "Theorem id or 'all'");
  verify->add_option("--samples", samples, "Number of lambda vectors");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--workers", workers, "Worker threads (part of the sampling schedule)");

  auto* search = app.add_subcommand("search", "Exhaustive minimum of |Lambda|_p for small H");
  search_args.add_to(search, false);
  search->add_option("--hmax", hmax, "Largest H");

  app.add_subcommand("examples", "Recompute the worked examples");

  auto* pade = app.add_subcommand("pade", "Print and check the Pade approximants");
  pade_args.add_to(pade, false);
  pade->add_option("--m", m_opt, "Number of alphas (defaults alpha_i = 1/(i+4) when no --alpha)");
  pade->add_option("--k", k, "k >= 1");
  pade->add_option("--mu", mu, "mu in [0, m]");

  auto* yu = app.add_subcommand("compare-yu", "Compare with Yu's explicit bound");
  yu_args.add_to(yu);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*bound) return cmd_bound(bound_args, theorem, json_path, check_path);
    if (*verify) return cmd_verify(verify_args, verify_theorem, samples, seed, workers);
    if (*search) return cmd_search(search_args, hmax);
    if (app.got_subcommand("examples")) return cmd_examples();
    if (*pade) return cmd_pade(pade_args, m_opt, k, mu);
    if (*yu) return cmd_compare_yu(yu_args);
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
