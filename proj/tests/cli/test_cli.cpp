#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qso/families.hpp"
#include "qso/tensor.hpp"

#ifndef QSO_CLI
#error "QSO_CLI must name the command-line binary"
#endif

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(QSO_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, Families) {
  const CliRun r = run("families");
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"ZAKHAREVICH", "KHUKR", "REGULAR", "QUASI_STRICT", "ALPHA_COMBINATION", "V0", "V7"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
  const CliRun j = run("families --json");
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out).size(), 19u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("families --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify --suite bogus --seed 1").code, 2);
  EXPECT_EQ(run("trajectory --family NOPE --x0 0.5,0.5").code, 2);
  EXPECT_EQ(run("trajectory --family QUASI_STRICT --m 3 --x0 0.3,0.2,0.5").code, 2);
  EXPECT_EQ(run("trajectory --family REGULAR --m 3 --x0 0.3,0.3,0.3").code, 2);
  EXPECT_EQ(run("trajectory --family REGULAR --m 3").code, 2);
  EXPECT_EQ(run("fixed-points --family REGULAR --m 4 --random-starts 3").code, 2);
  EXPECT_EQ(run("lyapunov --family V2 --function CYCLIC_PRODUCT --seed 1").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, AnalysisFailureExitsOne) {
  EXPECT_EQ(run("classify --family REGULAR --m 4 --x0 0.4,0.3,0.2,0.1").code, 1);
}

TEST(Cli, TrajectoryConvergesToCenter) {
  const CliRun r = run("trajectory --family REGULAR --m 5 --x0 0.4,0.3,0.2,0.05,0.05 --steps 200");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,x1,x2,x3,x4,x5");
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.back()[0], 200);
  for (int k = 1; k <= 5; ++k) EXPECT_NEAR(rows.back()[k], 0.2, 1e-8);
}

TEST(Cli, TrajectoryAlternates) {
  const CliRun r = run("trajectory --family QUASI_STRICT --m 3 --perm \"(1 2)\" --x0 0.3,0.2,0.5 --steps 4");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    EXPECT_NEAR(rows[n][1], n % 2 ? 0.2 : 0.3, 1e-15);
    EXPECT_NEAR(rows[n][2], n % 2 ? 0.3 : 0.2, 1e-15);
    EXPECT_NEAR(rows[n][3], 0.5, 1e-15);
  }
  EXPECT_EQ(csv_rows(run("trajectory --family REGULAR --m 3 --x0 0.3,0.2,0.5 --steps 0").out).size(), 1u);
}

TEST(Cli, CsvRoundTripsExactly) {
  const CliRun a = run("trajectory --family GANIKHODJAEV_LAMBDA --lambda 0.1 --x0 0.2,0.3,0.5 --steps 50");
  ASSERT_EQ(a.code, 0);
  const auto rows = csv_rows(a.out);
  const qso::Operator op = qso::make_operator({qso::Family::GANIKHODJAEV_LAMBDA, 3, std::nullopt, 0.1});
  const qso::Trajectory traj = qso::iterate(op.tensor, qso::parse_point("0.2,0.3,0.5"), 50);
  ASSERT_EQ(rows.size(), traj.points.size());
  for (std::size_t n = 0; n < rows.size(); ++n)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(rows[n][k + 1], traj.points[n].x[k]);
  EXPECT_EQ(a.out, run("trajectory --family GANIKHODJAEV_LAMBDA --lambda 0.1 --x0 0.2,0.3,0.5 --steps 50").out);
  EXPECT_EQ(run("trajectory --family V2 --seed 3 --steps 5").out, run("trajectory --family V2 --seed 3 --steps 5").out);
}

TEST(Cli, FixedPointsReport) {
  const CliRun r = run("fixed-points --family ALPHA_COMBINATION --m 3 --perm \"(1 2)\" --alpha 0.5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"operator", "parameters", "seed", "tolerances", "results"}) EXPECT_TRUE(j.contains(key));
  bool interior = false, vertex = false;
  for (const auto& p : j["results"]["fixed_points"]) {
    const auto x = p["point"].get<std::vector<double>>();
    if (std::abs(x[0] - 2.0 / 7) < 1e-10 && std::abs(x[2] - 3.0 / 7) < 1e-10) {
      interior = true;
      EXPECT_EQ(p["classification"], "ATTRACTING");
    }
    if (x[2] == 1.0) vertex = true;
  }
  EXPECT_TRUE(interior);
  EXPECT_TRUE(vertex);
}

TEST(Cli, OmegaKhukr) {
  const CliRun r = run("omega --family KHUKR --x0 0.4,0.36,0.24");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["cluster_points"].size(), 2u);
  EXPECT_EQ(j["results"]["detected_period"], 2);
}

TEST(Cli, ScalarScan) {
  const CliRun r = run("scalar --map F --scan-period 3");
  ASSERT_EQ(r.code, 0);
  const auto roots = nlohmann::json::parse(r.out)["results"]["roots"].get<std::vector<double>>();
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], 0.5, 1e-8);
  EXPECT_NEAR(roots[1], 1.0, 1e-8);
}

TEST(Cli, LyapunovAndErgodic) {
  const CliRun l = run("lyapunov --family QUASI_STRICT --m 6 --perm \"(1 2)(3 4 5)\" --function CYCLE_SUM --cycle 2 --seed 4");
  EXPECT_EQ(l.code, 0);
  EXPECT_EQ(nlohmann::json::parse(l.out)["results"]["violations"], 0);
  const CliRun e = run("ergodic --family REGULAR --m 4 --x0 0.25,0.25,0.25,0.25 --checkpoints 10,100");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(nlohmann::json::parse(e.out)["results"]["fluctuation"], 0.0);
}

TEST(Cli, VerifyIsDeterministicAndHonestAboutExit) {
  const CliRun a = run("verify --suite scalar --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("PASS [C6]"), std::string::npos);
  const CliRun b = run("verify --suite scalar --seed 7");
  EXPECT_EQ(a.out, b.out);
  const CliRun all = run("verify --suite regular --seed 7");
  EXPECT_EQ(all.code, all.out.find("FAIL [") == std::string::npos ? 0 : 1);
}

TEST(Cli, OutputFile) {
  const std::string path = "cli_test_output.csv";
  ASSERT_EQ(run("trajectory --family V0 --x0 0.2,0.3,0.5 --steps 3 --out " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(csv_rows(ss.str()).size(), 4u);
  std::remove(path.c_str());
}
