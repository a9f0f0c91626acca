#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "vinotab/cli.hpp"
#include "vinotab/io.hpp"

using namespace vinotab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  static const std::string cache =
      (std::filesystem::temp_directory_path() / ("vinotab-cli-" + std::to_string(::getpid()))).string();
  args.insert(args.begin(), {"vinotab", "--cache-dir", cache});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CatalogJson) {
  const auto r = run({"catalog", "--k", "5", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  const Rational d18 = rational_from_json(j.at("entries")[17].at("delta"));
  EXPECT_EQ(j.at("entries")[17].at("s"), 18);
  EXPECT_LE(d18, Rational(2, 7));
}

TEST(Cli, CatalogClosedFormOnly) {
  const auto r = run({"catalog", "--k", "5", "--parity", "closed-form-only", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\n18,0.286,2/7,MultigradeClosed(r=3)\n"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "s,delta,exact,source");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"catalog", "--k", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"catalog"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"waring", "--k", "7..5"}).code, kExitUsage);
  EXPECT_EQ(run({"waring", "--k", "five"}).code, kExitUsage);
  EXPECT_EQ(run({"weyl", "--k", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "everything"}).code, kExitUsage);
  EXPECT_EQ(run({"hua", "--k", "4", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"catalog", "--k", "4", "--parity", "even"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, Waring) {
  const auto r = run({"waring", "--k", "5..6"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("| k | 5 | 6 |"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("| G~ bound | 28 | 43 |"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("| G~+ bound | 14 | 22 |"), std::string::npos) << r.out;
  const auto j = Json::parse(run({"waring", "--k", "5", "--format", "json"}).out);
  EXPECT_EQ(j[0].at("gtilde").at("value"), 28);
  EXPECT_TRUE(j[0].at("s1").at("value").is_object());
}

TEST(Cli, Constants) {
  const auto r = run({"constants", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("xi,0.312383\n"), std::string::npos);
  EXPECT_NE(r.out.find("C,1.542749\n"), std::string::npos);
}

TEST(Cli, Hua) {
  const auto r = run({"hua", "--k", "4", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "k,C,S,t*\n4,26,22,11\n");
}

TEST(Cli, WeylAndTarry) {
  const auto w = run({"weyl", "--k", "6", "--format", "csv"});
  ASSERT_EQ(w.code, kExitOk);
  EXPECT_NE(w.out.find("6,42,84,"), std::string::npos) << w.out;
  const auto big = run({"weyl", "--k", "5000", "--format", "json"});
  ASSERT_EQ(big.code, kExitOk) << big.err;
  EXPECT_FALSE(Json::parse(big.out)[0].contains("sigma_bw"));
  const auto t = run({"tarry", "--k", "3", "--format", "csv"});
  EXPECT_EQ(t.out, "k,\"W(k,2) bound\"\n3,7\n");
}

TEST(Cli, Count) {
  EXPECT_EQ(run({"count", "--s", "3", "--k", "2", "--X", "2"}).out, "s,k,X,shift,J\n3,2,2,0,20\n");
  EXPECT_EQ(run({"count", "--s", "1", "--k", "1", "--X", "5"}).out, "s,k,X,shift,J\n1,1,5,0,5\n");
  const auto refused = run({"count", "--s", "6", "--k", "4", "--X", "10000"});
  EXPECT_EQ(refused.code, kExitBudget);
  EXPECT_NE(refused.err.find("budget"), std::string::npos);
  EXPECT_EQ(run({"count", "--s", "2", "--k", "2", "--X", "3", "--moduli", "2,2"}).out, "s,k,X,shift,J\n2,2,3,0,41\n");
  EXPECT_EQ(run({"count", "--s", "3", "--k", "2", "--X", "4", "--shift", "17"}).out,
            "s,k,X,shift,J\n3,2,4,17,256\n");
  const auto slope = run({"count", "--s", "2", "--k", "1", "--X", "10", "--slope", "20,40"});
  EXPECT_EQ(slope.code, kExitOk);
  EXPECT_NE(slope.out.find(",slope\n"), std::string::npos);
  EXPECT_EQ(run({"count", "--s", "2", "--k", "1", "--X", "10", "--slope", "20"}).code, kExitUsage);
  EXPECT_EQ(run({"count", "--s", "3", "--k", "3", "--X", "50", "--budget", "100"}).code, kExitBudget);
}

TEST(Cli, CatalogBudget) {
  EXPECT_EQ(run({"waring", "--k", "12", "--max-catalog-k", "10"}).code, kExitBudget);
  EXPECT_EQ(run({"catalog", "--k", "11", "--max-catalog-k", "10"}).code, kExitBudget);
}

TEST(Cli, VerifySuites) {
  const auto oracle = run({"verify", "oracle", "--format", "csv"});
  EXPECT_EQ(oracle.code, kExitOk) << oracle.out;
  EXPECT_NE(oracle.out.find("oracle,\"J(2,2,3)\",2,15,15,0,match"), std::string::npos) << oracle.out;
  const auto identities = run({"verify", "identities"});
  EXPECT_EQ(identities.code, kExitOk);
  EXPECT_EQ(identities.out.find("FAIL"), std::string::npos);
  const auto tables = run({"verify", "tables", "--format", "json"});
  EXPECT_EQ(tables.code, kExitOk);
  const Json j = Json::parse(tables.out);
  bool seen = false;
  for (const auto& row : j.at("rows")) {
    if (row.at("item") == "s1" && row.at("k") == 5) {
      seen = true;
      EXPECT_TRUE(row.at("verdict") == "dominates" || row.at("verdict") == "match");
      EXPECT_EQ(row.at("reference"), "27.413");
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyDoesNotWriteCache) {
  const auto dir = std::filesystem::temp_directory_path() / ("vinotab-ro-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::vector<const char*> argv{"vinotab", "--cache-dir", dir.c_str(), "verify", "identities"};
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), kExitOk);
  EXPECT_FALSE(std::filesystem::exists(dir));
}
