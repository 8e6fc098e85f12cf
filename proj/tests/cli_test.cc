// Copyright 2026 The Kinkscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kinkscope/cli.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "kinkscope/errors.h"
#include "kinkscope/summary_io.h"

namespace kinkscope::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kinkscope_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  fs::path dir_;
};

TEST_F(CliTest, PredictGaussianReport) {
  const Result r = RunCli({"predict", "--shape", "gauss", "--w", "10", "--R",
                           "1", "--scale", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("command"), "predict");
  EXPECT_EQ(j.at("inputs").at("scale_affects_prediction"), false);
  EXPECT_NEAR(j.at("outputs").at("mean").get<double>(), 5.0, 1e-12);
  EXPECT_NEAR(j.at("outputs").at("pmf")[5].get<double>(), 0.24609375, 1e-12);
  EXPECT_TRUE(j.contains("timing_ms"));
}

TEST_F(CliTest, PredictSpherical) {
  const Result r =
      RunCli({"predict", "--shape", "sphere", "--w", "2", "--R", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out).at("outputs");
  EXPECT_NEAR(j.at("exact").get<double>(), 0.848826363156775124, 1e-14);
  EXPECT_EQ(j.at("pmf"), "not available");
  EXPECT_NEAR(j.at("asymptotic").get<double>(), 1.1283791670955126, 1e-14);
}

TEST_F(CliTest, PredictPrettyPrintsTable) {
  const Result r = RunCli(
      {"predict", "--shape", "rect", "--w", "3", "--R", "1", "--pretty"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("pmf"), std::string::npos);
  EXPECT_NE(r.out.find("0.375"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli({"predict", "--shape", "sphere", "--w", "3", "--R", "2"})
                .code,
            kExitOutOfTheoryRange);
  EXPECT_EQ(RunCli({"predict", "--shape", "cube", "--w", "3", "--R", "1"}).code,
            kExitUsage);
  EXPECT_EQ(RunCli({"predict", "--shape", "rect", "--R", "1"}).code,
            kExitUsage);
  EXPECT_EQ(RunCli({"predict", "--shape", "rect", "--w", "3", "--R", "1",
                    "--bogus"})
                .code,
            kExitUsage);
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
  EXPECT_EQ(RunCli({"simulate", "--shape", "rect", "--w", "3", "--trials",
                    "10"})
                .code,
            kExitUsage);
  EXPECT_EQ(RunCli({"simulate", "--shape", "rect", "--w", "3", "--R", "1",
                    "--trials", "10", "--out",
                    Path("missing_dir/summary.json")})
                .code,
            kExitIo);
  EXPECT_EQ(RunCli({"compare", "--sim", Path("nope.json")}).code, kExitIo);
}

TEST_F(CliTest, SimulateIsByteIdentical) {
  const std::vector<std::string> base = {
      "simulate", "--shape", "rect",   "--w",       "6",  "--R",
      "1.5",      "--trials", "3000", "--workers", "3",  "--seed",
      "2024"};
  std::vector<std::string> a = base;
  a.insert(a.end(), {"--out", Path("a.json")});
  std::vector<std::string> b = base;
  b.insert(b.end(), {"--out", Path("b.json")});
  ASSERT_EQ(RunCli(a).code, kExitOk);
  ASSERT_EQ(RunCli(b).code, kExitOk);
  const std::string text = ReadFile(Path("a.json"));
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, ReadFile(Path("b.json")));
}

TEST_F(CliTest, SeedFromEnvironment) {
  const std::vector<std::string> args = {
      "simulate", "--shape", "gauss", "--w", "4", "--R", "1",
      "--trials", "500", "--out", Path("env.json")};
  ::setenv(kSeedEnvVar, "99", 1);
  ASSERT_EQ(RunCli(args).code, kExitOk);
  ::unsetenv(kSeedEnvVar);
  const json j = json::parse(ReadFile(Path("env.json")));
  EXPECT_EQ(j.at("config").at("seed"), 99);

  std::vector<std::string> flagged = args;
  flagged.back() = Path("flag.json");
  flagged.insert(flagged.end(), {"--seed", "99"});
  ASSERT_EQ(RunCli(flagged).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("env.json")), ReadFile(Path("flag.json")));

  ::setenv(kSeedEnvVar, "not-a-number", 1);
  std::vector<std::string> bad = args;
  bad.back() = Path("bad.json");
  EXPECT_EQ(RunCli(bad).code, kExitUsage);
  ::unsetenv(kSeedEnvVar);
}

TEST_F(CliTest, UnboundedRadiiCsv) {
  const Result r = RunCli({"simulate", "--shape", "gauss", "--w", "5",
                           "--unbounded", "--trials", "20000", "--seed", "1",
                           "--radii-csv", Path("radii.csv"), "--hist-csv",
                           Path("hist.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> radii = Lines(ReadFile(Path("radii.csv")));
  ASSERT_EQ(radii.size(), 100001u);
  EXPECT_EQ(radii.front(), "r");
  const std::vector<std::string> hist = Lines(ReadFile(Path("hist.csv")));
  ASSERT_EQ(hist.size(), 7u);
  EXPECT_EQ(hist.front(), "w_prime,count");
  EXPECT_EQ(hist.back(), "5,20000");
  EXPECT_EQ(json::parse(r.out).at("outputs").at("radii_seen"), 100000);
}

TEST_F(CliTest, CompareRoundTrip) {
  ASSERT_EQ(RunCli({"simulate", "--shape", "rect", "--w", "10", "--R", "1",
                    "--trials", "20000", "--seed", "4", "--out",
                    Path("s.json")})
                .code,
            kExitOk);
  const Result ok = RunCli({"compare", "--sim", Path("s.json")});
  ASSERT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  const json report = json::parse(ok.out);
  EXPECT_EQ(report.at("command"), "compare");
  EXPECT_EQ(report.at("outputs").at("chi_square").at("pass"), true);
  EXPECT_EQ(report.at("outputs").at("mean").at("pass"), true);
  EXPECT_EQ(report.at("outputs").at("ks"), "not available");

  // Move all mass to the last cell but keep the document consistent.
  json doc = json::parse(ReadFile(Path("s.json")));
  std::vector<std::uint64_t> hist(11, 0);
  hist[10] = 20000;
  doc["count_histogram"] = hist;
  std::ofstream(Path("bad.json")) << doc.dump();
  EXPECT_EQ(RunCli({"compare", "--sim", Path("bad.json")}).code,
            kExitStatisticalFailure);

  std::ofstream(Path("garbage.json")) << "{ not json";
  EXPECT_EQ(RunCli({"compare", "--sim", Path("garbage.json")}).code,
            kExitUsage);
}

TEST_F(CliTest, CompareSphericalMeanOnly) {
  ASSERT_EQ(RunCli({"simulate", "--shape", "sphere", "--w", "3", "--R", "0.5",
                    "--trials", "20000", "--out", Path("s.json")})
                .code,
            kExitOk);
  const Result r = RunCli({"compare", "--sim", Path("s.json")});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const json out = json::parse(r.out).at("outputs");
  EXPECT_EQ(out.at("chi_square"), "not available");
  EXPECT_TRUE(out.at("mean").is_object());
  EXPECT_FALSE(out.at("notes").empty());
}

TEST_F(CliTest, CompareUnboundedUsesKs) {
  ASSERT_EQ(RunCli({"simulate", "--shape", "rect", "--w", "5", "--unbounded",
                    "--trials", "4000", "--out", Path("u.json")})
                .code,
            kExitOk);
  const Result r = RunCli({"compare", "--sim", Path("u.json")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_TRUE(json::parse(r.out).at("outputs").at("ks").is_object());
}

TEST_F(CliTest, SweepSpherical) {
  const Result r =
      RunCli({"sweep", "--shape", "sphere", "--w-list", "1..3,10", "--R",
              "1", "--trials", "20000", "--csv", Path("sweep.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(ReadFile(Path("sweep.csv")));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "w,exact,asymptotic,empirical_mean,ci_halfwidth");
  EXPECT_EQ(lines[1].substr(0, 6), "1,0.5,");
  EXPECT_EQ(lines[4].substr(0, 3), "10,");

  EXPECT_EQ(RunCli({"sweep", "--shape", "rect", "--w-list", "1..3"}).code,
            kExitUsage);
  EXPECT_EQ(RunCli({"sweep", "--w-list", "1..3", "--R", "2"}).code,
            kExitOutOfTheoryRange);
}

TEST_F(CliTest, SweepDensityCurve) {
  const Result r = RunCli({"sweep", "--density-curve", "--w", "10",
                           "--r-max", "2", "--r-step", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "r,rect_pdf,gauss_pdf");
  EXPECT_EQ(lines[1].substr(0, 6), "0,5,6.");
  const double gauss0 = std::stod(lines[1].substr(4));
  EXPECT_NEAR(gauss0, 6.366, 1e-3);
  EXPECT_EQ(lines[5].substr(0, 8), "2,1.25,1");
}

TEST(ParseWidthListTest, RangesAndLists) {
  EXPECT_EQ(ParseWidthList("2..5,8"), (std::vector<std::size_t>{2, 3, 4, 5, 8}));
  EXPECT_EQ(ParseWidthList("7"), (std::vector<std::size_t>{7}));
  EXPECT_THROW(ParseWidthList("0"), InvalidArgument);
  EXPECT_THROW(ParseWidthList("5..2"), InvalidArgument);
  EXPECT_THROW(ParseWidthList("a"), InvalidArgument);
  EXPECT_THROW(ParseWidthList(""), InvalidArgument);
}

}  // namespace
}  // namespace kinkscope::cli
