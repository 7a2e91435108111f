#pragma once

// Instance files and JSON certificates for the command-line tool.
//
// Instance file grammar (one `key = value` per line, `#` starts a comment):
//
//   file     := { line }
//   line     := [ key "=" value ] [ "#" comment ]
//   key      := prime | alphas | Q | H | log10_H | epsilon | lambdas | precision_bits
//   alphas   := expr { "," expr }
//   lambdas  := expr { "," expr }
//   H        := expr | mantissa "e" integer | "log10:" expr
//   expr     := exact rational arithmetic over integer and decimal literals
//               with + - * / ^ and parentheses; exponents are integers >= 0
//
// Example:
//   prime = 11
//   alphas = 11^25/(1 + 11^25)
//   H = 3.6e6482
//   epsilon = 0.1

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "plinform/bounds.hpp"

namespace plinform::io {

/// Malformed input; the CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  BigRational parse() {
    BigRational v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("in expression '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigRational sum() {
    BigRational v = product();
    while (true) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  BigRational product() {
    BigRational v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const BigRational d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  BigRational unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  BigRational power() {
    BigRational base = atom();
    if (!eat('^')) return base;
    const BigRational e = unary();
    if (e.get_den() != 1 || e < 0 || e > 1000000) fail("exponent must be an integer in [0, 10^6]");
    return pow_rat(base, e.get_num().get_ui());
  }

  BigRational atom() {
    if (eat('(')) {
      BigRational v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

inline std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace detail

inline BigRational parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline BigInt parse_integer_expr(std::string_view text, const std::string& what) {
  const BigRational v = parse_expr(text);
  if (v.get_den() != 1) throw ParseError(what + " must be an integer, got " + v.get_str());
  return v.get_num();
}

/// H as an exact integer: an integer expression, `<mantissa>e<exponent>` (rounded
/// up to an integer), or `log10:<expr>` (smallest integer >= 10^value).
inline BigInt parse_height(const std::string& raw) {
  const std::string text = detail::trim(raw);
  if (text.rfind("log10:", 0) == 0) return height_from_log10(parse_expr(text.substr(6)));
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    const BigRational mant = parse_expr(text.substr(0, e));
    const BigInt ex = parse_integer_expr(text.substr(e + 1), "H exponent");
    if (mant <= 0) throw ParseError("H mantissa must be positive");
    if (ex < 0 || ex > 10000000) throw ParseError("H exponent out of range");
    const BigRational v = mant * BigRational(pow_int(10, ex.get_ui()));
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return out;
  }
  return parse_integer_expr(text, "H");
}

struct InstanceSpec {
  std::optional<BigInt> prime;
  std::vector<BigRational> alphas;
  /// Source text of each alpha, kept for reporting.
  std::vector<std::string> alpha_text;
  std::optional<BigInt> Q;
  std::optional<BigInt> H;
  std::optional<BigRational> epsilon;
  std::optional<std::vector<BigInt>> lambdas;
  std::optional<long> precision_bits;

  [[nodiscard]] AlphaVector alpha_vector() const {
    if (alphas.empty()) throw ParseError("no alphas given");
    if (!prime) throw ParseError("no prime given");
    return AlphaVector(alphas, *prime, Q);
  }

  [[nodiscard]] ProblemInstance instance() const {
    if (!H) throw ParseError("no H given");
    return ProblemInstance(alpha_vector(), *H, epsilon, lambdas);
  }
};

inline void set_key(InstanceSpec& spec, const std::string& key, const std::string& value) {
  if (key == "prime") {
    spec.prime = parse_integer_expr(value, "prime");
  } else if (key == "alphas") {
    spec.alphas.clear();
    spec.alpha_text.clear();
    for (const auto& item : detail::split_list(value)) {
      spec.alphas.push_back(parse_expr(item));
      spec.alpha_text.push_back(item);
    }
  } else if (key == "Q") {
    spec.Q = parse_integer_expr(value, "Q");
  } else if (key == "H") {
    spec.H = parse_height(value);
  } else if (key == "log10_H") {
    spec.H = height_from_log10(parse_expr(value));
  } else if (key == "epsilon") {
    spec.epsilon = parse_expr(value);
  } else if (key == "lambdas") {
    std::vector<BigInt> l;
    for (const auto& item : detail::split_list(value)) l.push_back(parse_integer_expr(item, "lambda"));
    spec.lambdas = std::move(l);
  } else if (key == "precision_bits") {
    const BigInt b = parse_integer_expr(value, "precision_bits");
    if (b < 64 || b > 1 << 20) throw ParseError("precision_bits must lie in [64, 2^20]");
    spec.precision_bits = b.get_si();
  } else {
    throw ParseError("unknown key '" + key + "'");
  }
}

inline InstanceSpec parse_instance_text(const std::string& text) {
  InstanceSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    try {
      set_key(spec, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return spec;
}

inline InstanceSpec parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

// ---- JSON certificates ----

using nlohmann::json;

inline json interval_json(const Interval& x) {
  return json{{"lo", x.lower().to_string(MPFR_RNDD)}, {"hi", x.upper().to_string(MPFR_RNDU)}};
}

inline json instance_json(const ProblemInstance& inst) {
  json j;
  j["prime"] = inst.prime().get_str();
  json alphas = json::array();
  for (const auto& a : inst.alphas.entries()) alphas.push_back(a.get_str());
  j["alphas"] = alphas;
  j["Q"] = inst.alphas.Q().get_str();
  j["H"] = inst.H.get_str();
  j["epsilon"] = inst.epsilon ? json(inst.epsilon->get_str()) : json(nullptr);
  if (inst.lambdas) {
    json l = json::array();
    for (const auto& x : *inst.lambdas) l.push_back(x.get_str());
    j["lambdas"] = l;
  } else {
    j["lambdas"] = nullptr;
  }
  return j;
}

inline ProblemInstance instance_from_json(const json& j) {
  try {
    std::vector<BigRational> alphas;
    for (const auto& a : j.at("alphas")) alphas.push_back(parse_rational(a.get<std::string>()));
    const BigInt prime(j.at("prime").get<std::string>());
    const BigInt q(j.at("Q").get<std::string>());
    std::optional<BigRational> eps;
    if (!j.at("epsilon").is_null()) eps = parse_rational(j.at("epsilon").get<std::string>());
    std::optional<std::vector<BigInt>> lambdas;
    if (j.contains("lambdas") && !j.at("lambdas").is_null()) {
      lambdas.emplace();
      for (const auto& l : j.at("lambdas")) lambdas->emplace_back(l.get<std::string>());
    }
    return ProblemInstance(AlphaVector(alphas, prime, q), BigInt(j.at("H").get<std::string>()), eps, lambdas);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate instance: ") + e.what());
  }
}

inline json certificate_json(const BoundCertificate& c) {
  json j;
  j["theorem_id"] = std::string(theorem_name(c.theorem));
  j["valid"] = c.valid;
  j["precision_bits"] = c.precision;
  j["failure_reasons"] = c.failure_reasons;
  json conds = json::array();
  for (const auto& cond : c.report.conditions) {
    conds.push_back(json{{"name", cond.name},
                         {"verdict", std::string(verdict_name(cond.verdict))},
                         {"strict", cond.strict},
                         {"margin", interval_json(cond.margin)},
                         {"note", cond.note}});
  }
  j["conditions"] = conds;
  if (c.report.all_pass()) {
    j["c_lower_log10"] = interval_json(c.log10_c);
    j["omega_upper"] = interval_json(c.omega);
    j["bound_log10"] = interval_json(c.bound_log10);
  } else {
    j["c_lower_log10"] = nullptr;
    j["omega_upper"] = nullptr;
    j["bound_log10"] = nullptr;
  }
  if (c.k) {
    j["k_selected"] = c.k->k;
    j["log_omega"] = interval_json(c.k->log_omega);
  } else {
    j["k_selected"] = nullptr;
    j["log_omega"] = nullptr;
  }
  return j;
}

inline json result_json(const ProblemInstance& inst, const CertifyResult& r) {
  json j;
  j["schema"] = "plinform-certificate/1";
  j["instance"] = instance_json(inst);
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  j["best"] = r.best_certificate() ? json(std::string(theorem_name(r.best_certificate()->theorem))) : json(nullptr);
  return j;
}

struct CheckOutcome {
  bool identical = true;
  std::vector<std::string> differences;
};

/// Re-runs every recorded certificate at its recorded precision and compares
/// validity and each condition verdict.
inline CheckOutcome recheck(const json& doc) {
  CheckOutcome out;
  if (doc.value("schema", "") != "plinform-certificate/1") throw ParseError("not a plinform certificate document");
  const ProblemInstance inst = instance_from_json(doc.at("instance"));
  for (const auto& jc : doc.at("certificates")) {
    const auto name = jc.at("theorem_id").get<std::string>();
    const auto id = parse_theorem(name);
    if (!id) throw ParseError("unknown theorem id '" + name + "'");
    const auto prec = jc.at("precision_bits").get<mpfr_prec_t>();
    const BoundCertificate c = certify_theorem(*id, inst, prec, prec);
    auto differ = [&](const std::string& what) {
      out.identical = false;
      out.differences.push_back(name + ": " + what);
    };
    if (c.valid != jc.at("valid").get<bool>()) differ("validity differs");
    const auto& conds = jc.at("conditions");
    if (conds.size() != c.report.conditions.size()) {
      differ("condition count differs");
      continue;
    }
    for (size_t i = 0; i < conds.size(); ++i) {
      const auto& rc = c.report.conditions[i];
      if (conds[i].at("name").get<std::string>() != rc.name ||
          conds[i].at("verdict").get<std::string>() != verdict_name(rc.verdict))
        differ("condition " + rc.name + " differs");
    }
  }
  return out;
}

}  // namespace plinform::io
