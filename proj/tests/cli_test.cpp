#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "periodlab/cli.hpp"

namespace periodlab {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("periodlab-cli-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::vector<std::string> with_cache(std::vector<std::string> args) {
    args.insert(args.begin(), {"--cache", dir_.string()});
    return args;
  }
  std::filesystem::path dir_;
};

TEST_F(Cli, Shuffle) {
  Outcome r = run({"--format", "plain", "shuffle", "1", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2*110 + 101\n");
  auto j = nlohmann::json::parse(run({"shuffle", "1", "1,0"}).out);
  EXPECT_EQ(j["result"], "2*110 + 101");
  EXPECT_EQ(j["terms"][0]["coefficient"], "2");
}

TEST_F(Cli, Stuffle) {
  EXPECT_EQ(run({"stuffle", "2", "3", "--format", "plain"}).out, "zeta(3,2) + zeta(2,3) + zeta(5)\n");
  EXPECT_EQ(run({"stuffle", "phi(1)", "phi(1)", "--format", "plain"}).out, "2*phi(1,1) + zeta(2)\n");
}

TEST_F(Cli, EvalReturnsStringsWithErrorExponent) {
  Outcome r = run({"eval", "zeta(1,2)", "--digits", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j["value"].is_string());
  EXPECT_TRUE(j["error_exp"].is_number_integer());
  EXPECT_LE(j["error_exp"].get<int>(), -30);
  auto z3 = nlohmann::json::parse(run({"eval", "zeta(3)", "--digits", "30"}).out);
  EXPECT_EQ(j["value"], z3["value"]);
  EXPECT_EQ(j["value"].get<std::string>().substr(0, 12), "1.2020569031");
  EXPECT_FALSE(j.contains("imag"));

  auto c = nlohmann::json::parse(run({"eval", "L[1](1/2+1/2i)", "--digits", "20"}).out);
  EXPECT_EQ(c["imag"].get<std::string>().substr(0, 10), "-0.7853981");
}

TEST_F(Cli, Dims) {
  EXPECT_EQ(run({"dims", "--max", "10", "--format", "plain"}).out, "1,0,1,1,1,2,2,3,4,5,7\n");
  Outcome r = run(with_cache({"dims", "--max", "8", "--computed"}));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_TRUE(std::filesystem::exists(cache_file(dir_, 8, 1)));
}

TEST_F(Cli, ReduceAndAssoc) {
  EXPECT_EQ(run(with_cache({"--format", "plain", "reduce", "zeta(1,2)"})).out, "zeta(3)\n");
  EXPECT_EQ(run(with_cache({"--format", "plain", "reduce", "zeta(4) - 2/5*zeta(2)*zeta(2)"})).out, "0\n");
  auto j = nlohmann::json::parse(run({"--no-cache", "assoc", "--weight", "2"}).out);
  EXPECT_EQ(j["series"], "1 + zeta(2)*[01] - zeta(2)*[10]");
}

TEST_F(Cli, RelationsVanishUnderEval) {
  const int digits = 30;
  for (int w = 3; w <= 6; ++w) {
    auto rels = nlohmann::json::parse(run({"relations", "--weight", std::to_string(w)}).out)["relations"];
    ASSERT_FALSE(rels.empty()) << w;
    for (const auto& rel : rels) {
      Outcome r = run({"eval", rel.get<std::string>(), "--digits", std::to_string(digits)});
      ASSERT_EQ(r.code, 0) << r.err;
      Real v = parse_real(nlohmann::json::parse(r.out)["value"].get<std::string>(), 256);
      EXPECT_LT(mpfr_get_d(abs(v).get(), MPFR_RNDU), std::pow(10.0, -(digits - 5))) << rel;
    }
  }
}

TEST_F(Cli, PeriodsAndAe) {
  auto z = nlohmann::json::parse(run({"zigzag", "--loops", "4"}).out);
  EXPECT_EQ(z["exact"], "20*zeta(5)");
  auto a = nlohmann::json::parse(run({"ae"}).out);
  EXPECT_TRUE(a["residual"].is_string());
  EXPECT_FALSE(a["within_tolerance"].get<bool>());
  EXPECT_EQ(a["coefficients"].size(), 3u);
  EXPECT_EQ(run({"ae", "--loops", "4"}).code, 1);
}

TEST_F(Cli, CsvOutput) {
  Outcome r = run({"--format", "csv", "zigzag", "--loops", "3", "--digits", "10"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "loops,exact,value,error_exp");
  EXPECT_NE(r.out.find("3,6*zeta(3),7.2123414190"), std::string::npos) << r.out;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  Outcome syntax = run({"eval", "zeta(2"});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("position 6"), std::string::npos);
  EXPECT_EQ(run({"eval", "zeta(1)"}).code, 1);
  EXPECT_EQ(run({"eval", "Li[1](3)"}).code, 1);
  EXPECT_EQ(run({"zigzag", "--loops", "2"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "dims"}).code, 2);
  EXPECT_EQ(run({"--cache", "/tmp/x", "--no-cache", "dims"}).code, 2);
}

TEST_F(Cli, SelftestPasses) {
  Outcome r = run(with_cache({"selftest"}));
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 12u);
}

}  // namespace
}  // namespace periodlab
