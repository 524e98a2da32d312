#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string output;
};

/// Runs the CLI with `args` inside `dir`, capturing stdout and stderr together.
CliRun run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.txt";
  const std::string cmd = "cd '" + dir.string() + "' && '" + TORSIONLAB_CLI + "' " + args + " > '" + log.string() +
                          "' 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("torsionlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string scenario(const std::string& name) const {
    return std::string("'") + TORSIONLAB_SCENARIO_DIR + "/" + name + ".json'";
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunWritesDefaultReport) {
  const CliRun r = run_cli("run --scenario " + scenario("harmonic"), dir_);
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "harmonic.report.json"));
  EXPECT_NE(r.output.find("report written to harmonic.report.json"), std::string::npos);
}

TEST_F(Cli, ReportIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(run_cli("run --scenario " + scenario("paper") + " --out one.json", dir_).code, 0);
  ASSERT_EQ(run_cli("run --scenario " + scenario("paper") + " --out two.json", dir_).code, 0);
  EXPECT_EQ(read_file(dir_ / "one.json"), read_file(dir_ / "two.json"));
}

TEST_F(Cli, PointOverride) {
  const CliRun r = run_cli("run --scenario " + scenario("lc") + " --point 0.5,0,0,0 --out lc.json", dir_);
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(read_file(dir_ / "lc.json").find("\"point\": [0.5, 0, 0, 0]"), std::string::npos);
  EXPECT_EQ(run_cli("run --scenario " + scenario("lc") + " --point 0.5,0,0", dir_).code, 2);
  EXPECT_EQ(run_cli("run --scenario " + scenario("lc") + " --point 0,0,0,0", dir_).code, 2);
  EXPECT_EQ(run_cli("run --scenario " + scenario("lc") + " --point 1,x,0,0", dir_).code, 2);
}

TEST_F(Cli, ValidateReportsErrors) {
  std::ofstream(dir_ / "bad.json") << R"({"version": 1, "family": "custom",
    "components": [{"i": 2, "j": 2, "k": 1, "ca": 1}], "grid": {"x": {"count": 0}}})";
  const CliRun r = run_cli("validate --scenario bad.json", dir_);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("torsion component must have i ≠ j"), std::string::npos);
  EXPECT_NE(r.output.find("grid.x.count: grid.count must be a positive integer"), std::string::npos);
  EXPECT_EQ(run_cli("run --scenario bad.json", dir_).code, 2);
  EXPECT_FALSE(fs::exists(dir_ / "bad.report.json"));
}

TEST_F(Cli, ValidateAcceptsShippedScenarios) {
  for (const char* name : {"paper", "harmonic", "lc", "custom_skew"}) {
    EXPECT_EQ(run_cli(std::string("validate --scenario ") + scenario(name), dir_).code, 0) << name;
  }
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("", dir_).code, 2);
  EXPECT_EQ(run_cli("run", dir_).code, 2);
  EXPECT_EQ(run_cli("run --scenario missing.json", dir_).code, 2);
  EXPECT_EQ(run_cli("run --scenario " + scenario("lc") + " --tol -1", dir_).code, 2);
}

TEST_F(Cli, Families) {
  const CliRun r = run_cli("families", dir_);
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"paper", "harmonic", "lc", "custom"}) EXPECT_NE(r.output.find(name), std::string::npos);
}
