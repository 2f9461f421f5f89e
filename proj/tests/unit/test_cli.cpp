#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lcgeom/report_io.hpp"
#include "lcgeom_cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lcgeom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lcg::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  fs::create_directories(LCGEOM_TEST_TMP);
  return (fs::path(LCGEOM_TEST_TMP) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string k;
  double v = 0.0;
  while (in >> k >> v)
    if (k == key) return v;
  ADD_FAILURE() << key << " missing in\n" << text;
  return 0.0;
}

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) {
  const Result r = run({});
  EXPECT_EQ(r.code, lcg::cli::kUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, lcg::cli::kOk);
  EXPECT_EQ(run({"sweep", "--help"}).code, lcg::cli::kOk);
}

TEST(Cli, BodyDisk) {
  const Result r = run({"body", "--shape", "disk"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r.out, "volume"), 3.14159265359, 1e-10);
  EXPECT_NEAR(value_of(r.out, "polar_projection_volume"), 0.785398163397, 1e-10);
  EXPECT_NEAR(value_of(r.out, "zhang_product"), 2.46740110027, 1e-9);
}

TEST(Cli, BodySquareAndSimplex) {
  const Result sq = run({"body", "--shape", "square"});
  ASSERT_EQ(sq.code, 0) << sq.err;
  EXPECT_NEAR(value_of(sq.out, "volume"), 4.0, 1e-12);
  EXPECT_NEAR(value_of(sq.out, "polar_projection_volume"), 0.5, 1e-4);
  EXPECT_NEAR(value_of(sq.out, "zhang_product"), 2.0, 1e-3);
  const Result s = run({"body", "--shape", "simplex2", "--compute", "zhang-product"});
  ASSERT_EQ(s.code, 0);
  EXPECT_NEAR(value_of(s.out, "zhang_product"), 1.5, 1e-3);
  EXPECT_EQ(s.out.find("volume"), std::string::npos);
}

TEST(Cli, BodyJson) {
  const Result r = run({"body", "--shape", "square", "--compute", "bounds", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"lower_bound\": 1.5, \"upper_bound\": 2.46740110027}\n");
}

TEST(Cli, BodyErrors) {
  EXPECT_EQ(run({"body", "--shape", "teapot"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"body", "--shape", "disk", "--compute", "nothing"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"body", "--shape", "disk", "--body-file", tmp_path("missing.txt")}).code, lcg::cli::kUsage);
}

TEST(Cli, BodyFile) {
  const std::string path = tmp_path("bodies.txt");
  {
    std::ofstream f(path);
    f << "[kite]\nkind = vpolytope\ndim = 2\nvertex = 0 -1\nvertex = 1 0\nvertex = 0 2\nvertex = -1 0\n";
  }
  const Result r = run({"body", "--shape", "kite", "--body-file", path, "--compute", "volume"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r.out, "volume"), 3.0, 1e-12);
  {
    std::ofstream f(path);
    f << "[kite]\nkind = vpolytope\ndim = 2\nvertex = 0 0\nvertex = 1 1\n";
  }
  EXPECT_EQ(run({"body", "--shape", "kite", "--body-file", path}).code, lcg::cli::kUsage);
}

TEST(Cli, FnIndicatorSquareRatio) {
  const Result r = run({"fn", "--f", "indicator:square"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r.out, "l1_norm"), 4.0, 1e-9);
  EXPECT_NEAR(value_of(r.out, "zhang_ratio"), 0.25, 1e-2);
  EXPECT_EQ(run({"fn", "--f", "bogus:1"}).code, lcg::cli::kUsage);
}

TEST(Cli, SweepPhiAndBerwald) {
  const Result phi = run({"sweep", "phi", "--gamma", "linear:2", "--p", "-0.9:4:25"});
  ASSERT_EQ(phi.code, 0) << phi.err;
  std::istringstream in(phi.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p,value,status");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto c1 = line.find(','), c2 = line.rfind(',');
    EXPECT_NEAR(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), 2.0, 1e-8) << line;
    EXPECT_EQ(line.substr(c2 + 1), "ok");
  }
  EXPECT_EQ(rows, 25);

  const Result bw = run({"sweep", "berwald", "--f", "indicator:interval01", "--h", "affine:x", "--p", "-0.5,1,2"});
  ASSERT_EQ(bw.code, 0) << bw.err;
  EXPECT_EQ(bw.out, "p,value,status\n-0.5,0.785398163397,ok\n1,0.5,ok\n2,0.408248290464,ok\n");
}

TEST(Cli, SweepClassical) {
  const Result r = run({"sweep", "classical", "--body", "interval01", "--phi", "x", "--p", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "p,value,status\n1,1,ok\n2,1,ok\n");
}

TEST(Cli, SweepErrors) {
  EXPECT_EQ(run({"sweep", "phi", "--gamma", "linear:2"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"sweep", "phi", "--gamma", "linear:2", "--p", "0:1:1"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"sweep", "phi", "--gamma", "linear:2", "--p", "-1,0"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"sweep", "nothing", "--p", "1"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"sweep", "berwald", "--f", "indicator:square", "--h", "affine:x", "--p", "1"}).code,
            lcg::cli::kUsage);
}

TEST(Cli, Covariogram) {
  const Result r = run({"covariogram", "--f", "indicator:interval01", "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x1,g_f\n-1,0\n-0.5,0.5\n0,1\n0.5,0.5\n1,0\n");
  EXPECT_EQ(run({"covariogram", "--f", "indicator:interval01", "--grid", "2"}).code, lcg::cli::kUsage);
}

TEST(Cli, VerifyAffineWritesReport) {
  const std::string path = tmp_path("affine.json");
  const Result r = run({"verify", "--suite", "affine", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reports = lcg::parse_report_json(slurp(path));
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& rep : reports) EXPECT_EQ(rep.status, lcg::CheckStatus::pass);
}

TEST(Cli, VerifyTightToleranceExitsOne) {
  const Result r = run({"verify", "--suite", "affine", "--tol", "1e-12"});
  EXPECT_EQ(r.code, lcg::cli::kCheckFailed);
  const auto reports = lcg::parse_report_json(r.out);
  EXPECT_FALSE(reports.empty());
}

TEST(Cli, VerifyUsageErrors) {
  EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"verify", "--dim", "4"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"verify", "--tol", "-1"}).code, lcg::cli::kUsage);
  EXPECT_EQ(run({"verify", "--config", tmp_path("nope.cfg")}).code, lcg::cli::kUsage);
}

TEST(Cli, VerifyConfigFile) {
  const std::string path = tmp_path("run.cfg");
  {
    std::ofstream f(path);
    f << "[verify]\nsuite = affine\ntol = 1e-12\n";
  }
  EXPECT_EQ(run({"verify", "--config", path}).code, lcg::cli::kCheckFailed);
  EXPECT_EQ(run({"verify", "--config", path, "--tol", "1e-2"}).code, lcg::cli::kOk);
}

TEST(Cli, IdenticalSeedsGiveIdenticalBytes) {
  const std::string a = tmp_path("r1.json"), b = tmp_path("r2.json");
  ASSERT_EQ(run({"verify", "--suite", "berwald", "--seed", "42", "--out", a}).code, 0);
  ASSERT_EQ(run({"verify", "--suite", "berwald", "--seed", "42", "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}
