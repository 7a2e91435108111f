#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "instance_io.hpp"

using namespace plinform;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PLINFORM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  Run r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(::testing::TempDir()) + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Expr, ArithmeticAndPowers) {
  EXPECT_EQ(io::parse_expr("11^2/(1 + 11^2)"), BigRational(121, 122));
  EXPECT_EQ(io::parse_expr("-3/4 + 1/4"), BigRational(-1, 2));
  EXPECT_EQ(io::parse_expr("0.1"), BigRational(1, 10));
  EXPECT_EQ(io::parse_expr("2^3^2"), BigRational(512));
  EXPECT_THROW(io::parse_expr("2^(1/2)"), io::ParseError);
  EXPECT_THROW(io::parse_expr("1/0"), io::ParseError);
  EXPECT_THROW(io::parse_expr("3 +"), io::ParseError);
  EXPECT_THROW(io::parse_expr("(1"), io::ParseError);
}

TEST(Expr, Heights) {
  EXPECT_EQ(io::parse_height("1000"), BigInt(1000));
  EXPECT_EQ(io::parse_height("3e2"), BigInt(300));
  EXPECT_EQ(io::parse_height("3.6e3"), BigInt(3600));
  EXPECT_EQ(io::parse_height("log10:2.5"), BigInt(317));
  EXPECT_EQ(io::parse_height("10^20"), pow_int(10, 20));
}

TEST(InstanceFile, ParsesAllKeys) {
  const auto spec = io::parse_instance_text(
      "# example\n prime = 11\nalphas = 11^3, 2*11 # two\nQ = 3\nH = 1e5\nepsilon = 0.1\n"
      "lambdas = 1, -2, 3\nprecision_bits = 512\n");
  EXPECT_EQ(*spec.prime, BigInt(11));
  ASSERT_EQ(spec.alphas.size(), 2u);
  EXPECT_EQ(spec.alphas[1], BigRational(22));
  EXPECT_EQ(*spec.Q, BigInt(3));
  EXPECT_EQ(*spec.H, BigInt(100000));
  EXPECT_EQ(*spec.epsilon, BigRational(1, 10));
  EXPECT_EQ(spec.lambdas->size(), 3u);
  EXPECT_EQ(*spec.precision_bits, 512);
  const auto inst = spec.instance();
  EXPECT_EQ(inst.alphas.Q(), BigInt(3));
}

TEST(InstanceFile, ErrorsNameTheLine) {
  try {
    io::parse_instance_text("prime = 11\nbogus = 3\n");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  EXPECT_THROW(io::parse_instance_text("prime 11\n"), io::ParseError);
  EXPECT_THROW(io::parse_instance_text("H = 1.5\n"), io::ParseError);
}

TEST(Cli, Example2Bound) {
  const auto path = write_temp("ex2.txt", "prime = 149\nalphas = 149, -149\nH = 1e100\n");
  const auto r = run("bound " + path);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("best: MGT1_MAIN"), std::string::npos) << r.out;
  // omega ~ 417 (1 + log(log H + R1)/log H) + 1
  EXPECT_NE(r.out.find("omega        [4.2794"), std::string::npos) << r.out;
}

TEST(Cli, RepeatedAlphaIsInputError) {
  const auto r = run("bound --prime 11 --alpha 11 --alpha 11 --H 10");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("alphas must be pairwise distinct"), std::string::npos) << r.out;
}

TEST(Cli, NoApplicableTheorem) {
  // f < 1 for p = 139 and M > 1
  const auto r = run("bound --prime 139 --alpha 139 --alpha -139 --H 1e10");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("no applicable theorem"), std::string::npos);
}

TEST(Cli, SimpleCorollaryExponent) {
  const auto r = run("bound --prime 11 --alpha 11^25 --H 1e60 --theorem MGT1_SIMPLE");
  EXPECT_EQ(r.code, 0) << r.out;
  // 1 + 14 log 2 + 14 log(3 e^{1.03883} 11^25) = 879.8915...
  EXPECT_NE(r.out.find("omega        [8.79891"), std::string::npos) << r.out;
}

TEST(Cli, JsonRoundTrip) {
  const auto json_path = std::string(::testing::TempDir()) + "cert.json";
  const auto r = run("bound --prime 11 --alpha 11^25 --H 1e200 --epsilon 1 --json " + json_path);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(json_path);
  const auto doc = io::json::parse(in);
  EXPECT_EQ(doc.at("schema"), "plinform-certificate/1");
  EXPECT_EQ(doc.at("certificates").size(), 6u);
  const auto& first = doc.at("certificates")[0];
  EXPECT_TRUE(first.at("omega_upper").contains("lo"));
  EXPECT_TRUE(first.at("omega_upper").contains("hi"));
  const auto check = run("bound --check " + json_path);
  EXPECT_EQ(check.code, 0) << check.out;
  EXPECT_NE(check.out.find("CHECK PASS"), std::string::npos);
}

TEST(Cli, TamperedCertificateFailsCheck) {
  const auto json_path = std::string(::testing::TempDir()) + "cert2.json";
  ASSERT_EQ(run("bound --prime 11 --alpha 11^25 --H 1e200 --json " + json_path).code, 0);
  std::ifstream in(json_path);
  auto doc = io::json::parse(in);
  doc["certificates"][0]["valid"] = false;
  std::ofstream(json_path) << doc.dump();
  const auto check = run("bound --check " + json_path);
  EXPECT_EQ(check.code, 1) << check.out;
}

TEST(Cli, PadeHandExpansion) {
  const auto r = run("pade --m 1 --k 1 --mu 0 --alpha 1/5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("B0(t) = 2 + t/5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("B1(t) = 2t/5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS order"), std::string::npos);
  EXPECT_NE(r.out.find("PASS integrality"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::string args = "verify --prime 11 --alpha 11^25 --H 1e300 --samples 10 --seed 7";
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("VERIFY PASS"), std::string::npos);
}

TEST(Cli, SearchAndCompareYu) {
  const auto s = run("search --prime 5 --alpha 5 --hmax 3");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("(0, -1)"), std::string::npos) << s.out;
  const auto big = run("search --prime 5 --alpha 5 --alpha 10 --hmax 500");
  EXPECT_EQ(big.code, 2);
  const auto y = run("compare-yu --prime 149 --alpha 149 --alpha -149 --H 1e100");
  EXPECT_EQ(y.code, 0) << y.out;
  EXPECT_NE(y.out.find("stronger: Pade"), std::string::npos) << y.out;
  EXPECT_EQ(run("compare-yu --prime 11 --alpha 11 --H 100").code, 2);
}

TEST(Cli, ExamplesReportsEachCheck) {
  const auto r = run("examples");
  // criteria of the worked examples; see the decisions notes for the two that disagree
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("PASS example 1: log10 H threshold"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS example 3: log10 H threshold"), std::string::npos) << r.out;
}

TEST(Cli, BadUsage) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bound --theorem NOPE --prime 11 --alpha 11 --H 10").code, 2);
  EXPECT_EQ(run("bound /nonexistent/file").code, 2);
}
