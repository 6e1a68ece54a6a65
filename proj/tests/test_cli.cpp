#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "helixkit/cli.hpp"
#include "helixkit/io.hpp"

using namespace helixkit;
using helixkit::io::Json;

namespace {

const std::filesystem::path kData = HELIXKIT_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("helixkit-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, AnalyzeSlantHelix) {
  const auto r = run({"analyze", data("sine_slant_helix.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["classification"], "slant-helix");
  EXPECT_NEAR(j["cos_theta"].get<double>(), 0.6, 1e-5);
}

TEST(Cli, AnalyzeReparametrisesGeneralHelix) {
  const auto r = run({"analyze", data("circular_helix.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["classification"], "general-helix");
  EXPECT_NEAR(j["cos_theta"].get<double>(), 0.8, 1e-6);
}

TEST(Cli, AnalyzeCsv) {
  const auto r = run({"analyze", data("sine_slant_helix.json"), "--format", "csv", "--grid", "64"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "s,k1,k2,G1,G2,G3,sum_G2");
  EXPECT_EQ(rows.size(), 64u);
  for (const auto& row : rows) EXPECT_NEAR(row.back(), 25.0 / 9, 1e-4);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"analyze", data("line.json")}).code, cli::kExitDegenerate);
  EXPECT_EQ(run({"analyze", data("planar_circle.json")}).code, cli::kExitOk);
  EXPECT_EQ(run({"analyze", data("missing.json")}).code, cli::kExitInput);
  EXPECT_EQ(run({"analyze"}).code, cli::kExitInput);
  EXPECT_EQ(run({"frobnicate", data("line.json")}).code, cli::kExitInput);
  EXPECT_EQ(run({"analyze", data("sine_slant_helix.json"), "--grid", "4"}).code, cli::kExitInput);
  EXPECT_EQ(run({"axis", data("circular_helix.json")}).code, cli::kExitDegenerate);
  EXPECT_EQ(run({"indicatrix", data("line.json")}).code, cli::kExitDegenerate);
  EXPECT_EQ(run({"geodesic", data("sphere.json")}).code, cli::kExitDegenerate);
}

TEST_F(TempDir, MalformedJsonIsAnInputError) {
  const auto p = dir_ / "bad.json";
  std::ofstream(p) << "{\"dim\": 3, \"components\": [";
  const auto r = run({"analyze", p.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, IndicatrixCsvLiesOnTheSphere) {
  const auto r = run({"indicatrix", data("sine_slant_helix.json"), "--format", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 512u);
  for (const auto& row : rows) EXPECT_NEAR(std::hypot(row[1], row[2], row[3]), 1.0, 1e-9);
}

TEST(Cli, HelixIndicatrixHasConstantHeight) {
  const auto r = run({"indicatrix", data("circular_helix.json"), "--format", "csv", "--grid", "32"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const auto& row : parse_csv(r.out)) EXPECT_NEAR(row[3], 0.8, 1e-9);
}

TEST(Cli, IndicatrixJsonCarriesTheSameAxisReport) {
  const auto r = run({"indicatrix", data("sine_slant_helix.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["samples"].size(), 512u);
  EXPECT_LT(j["same_axis"]["angle_between"].get<double>(), 1e-4);

  const auto h = run({"indicatrix", data("circular_helix.json")});
  ASSERT_EQ(h.code, cli::kExitOk);
  EXPECT_TRUE(Json::parse(h.out)["same_axis"].contains("error"));
}

TEST(Cli, AxisReport) {
  const auto r = run({"axis", data("sine_slant_helix.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_LT(Json::parse(r.out)["angle_between"].get<double>(), 1e-4);
}

TEST(Cli, GeodesicScenarios) {
  const auto cyl = run({"geodesic", data("cylinder.json")});
  EXPECT_EQ(cyl.code, cli::kExitOk) << cyl.out;
  EXPECT_EQ(Json::parse(cyl.out)["geodesics"].size(), 1u);
  const auto cone = run({"geodesic", data("cone.json"), "--count", "3", "--length", "3"});
  EXPECT_EQ(cone.code, cli::kExitOk) << cone.out;
  EXPECT_EQ(Json::parse(cone.out)["geodesics"].size(), 3u);
}

TEST(Cli, PlotDataRows) {
  const auto r = run({"plotdata", data("sine_slant_helix.json")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(parse_csv(r.out).size(), 512u);
  EXPECT_EQ(parse_csv(run({"plotdata", data("sine_slant_helix.json"), "--grid", "16"}).out).size(), 16u);
  EXPECT_EQ(run({"plotdata", data("sine_slant_helix.json"), "--both"}).code, cli::kExitInput);
}

TEST_F(TempDir, PlotDataBoth) {
  const auto curve = dir_ / "trace.csv";
  const auto r = run({"plotdata", data("sine_slant_helix.json"), "--both", "-o", curve.string(), "--grid", "100"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto beta = dir_ / "trace_indicatrix.csv";
  ASSERT_TRUE(std::filesystem::exists(beta));
  EXPECT_EQ(parse_csv(slurp(curve)).size(), 100u);
  EXPECT_EQ(parse_csv(slurp(beta)).size(), 100u);
}

TEST_F(TempDir, OutputIsByteIdenticalAcrossRuns) {
  for (const char* cmd : {"analyze", "indicatrix", "axis"}) {
    const auto a = dir_ / "a.out", b = dir_ / "b.out";
    ASSERT_EQ(run({cmd, data("sine_slant_helix.json"), "-o", a.string()}).code, cli::kExitOk);
    ASSERT_EQ(run({cmd, data("sine_slant_helix.json"), "-o", b.string()}).code, cli::kExitOk);
    EXPECT_EQ(slurp(a), slurp(b)) << cmd;
    EXPECT_FALSE(slurp(a).empty());
  }
}
