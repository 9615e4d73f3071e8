#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bokstedt/cli.hpp"

using namespace bok;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "bok");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::ranges::count(s, '\n')); }

}  // namespace

TEST(Cli, VerifyP5) {
  const Outcome r = run({"verify", "-p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["p"], 5);
  for (const char* name : {"borel", "t01", "uprime", "tprime", "filt", "faces"})
    EXPECT_TRUE(j["lemmas"][name]["passed"].get<bool>()) << name;
  EXPECT_EQ(j["witnesses"], json({2, 3, 4}));
  EXPECT_FALSE(j.contains("timings"));
}

TEST(Cli, BadPrimes) {
  Outcome r = run({"verify", "-p", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotPrime"), std::string::npos);
  r = run({"verify", "-p", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("EvenCharacteristic"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify", "--solver", "magic"}).code, 1);
  EXPECT_EQ(run({"emit", "nothing"}).code, 1);
  EXPECT_EQ(run({"verify", "--help"}).code, 0);
}

TEST(Cli, LargePrimesAreGated) {
  EXPECT_EQ(run({"search", "-p", "11"}).code, 1);
  EXPECT_EQ(run({"search", "-p", "13", "--big"}).code, 1);
}

TEST(Cli, SearchP3) {
  const Outcome r = run({"search", "-p", "3"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["witnesses"], json({2}));
  EXPECT_TRUE(j["lemmas"].empty());
}

TEST(Cli, SearchToFile) {
  const auto path = std::filesystem::temp_directory_path() / "bok_cli_r.json";
  std::filesystem::remove(path);
  const Outcome r = run({"search", "-p", "5", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const json j = json::parse(slurp(path));
  std::vector<int> lambdas;
  for (const auto& v : j["verdicts"]) lambdas.push_back(v["lambda"].get<int>());
  EXPECT_EQ(lambdas, (std::vector<int>{2, 3, 4}));
  std::filesystem::remove(path);
}

TEST(Cli, SearchOverF49) {
  const Outcome r = run({"search", "-p", "7", "--ext", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 1u + 47u);
}

TEST(Cli, MultiplePrimesGiveArray) {
  const Outcome r = run({"search", "-p", "3", "-p", "5"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["p"], 5);
}

TEST(Cli, DefaultPrimes) {
  const Outcome r = run({"search", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u + 1u + 3u + 5u);
}

TEST(Cli, EnvironmentOverride) {
  ::setenv("BOK_PRIMES", "3", 1);
  const Outcome r = run({"search"});
  ::unsetenv("BOK_PRIMES");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["p"], 3);
}

TEST(Cli, EmitMatricesMatchesGolden) {
  const Outcome r = run({"emit", "matrices"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(std::string(BOK_GOLDEN_DIR) + "/face_matrices.txt"));
}

TEST(Cli, EmitT) {
  const Outcome r = run({"emit", "t", "-p", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u + 2u);
  const Outcome j = run({"emit", "t", "-p", "5"});
  EXPECT_EQ(json::parse(j.out)["t"].size(), 6u);
}

TEST(Cli, EmitTPoly) {
  const Outcome r = run({"emit", "tpoly", "-p", "3"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  for (const auto& [k, c] : j["t_lambda"].items()) {
    EXPECT_EQ(c[0], 0) << k;  // no constant term
    EXPECT_LE(c.size(), 3u);
  }
}

TEST(Cli, EmitPn) {
  const Outcome r = run({"emit", "pn", "-n", "1", "-p", "3"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["degrees"].size(), 4u);
  for (const auto& row : j["degrees"]) EXPECT_EQ(row["homology"], row["degree"] == 3 ? 1 : 0);
}

TEST(Cli, ThreadCountsGiveIdenticalReports) {
  const Outcome a = run({"verify", "--threads", "1"});
  const Outcome b = run({"verify", "--threads", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SolverChoiceRecorded) {
  const Outcome r = run({"verify", "-p", "5", "--solver", "sparse"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["solver"], "sparse");
  EXPECT_EQ(j["witnesses"], json({2, 3, 4}));
}

TEST(Cli, BudgetExceeded) {
  const Outcome r = run({"search", "-p", "7", "--solver", "sparse", "--budget", "50"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("BudgetExceeded"), std::string::npos);
}

TEST(Cli, Timings) {
  const Outcome r = run({"verify", "-p", "3", "--timings"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).contains("timings"));
}
