// Runs the noma_mec executable and checks output formats and exit codes.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(NOMA_MEC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, SolveText) {
  const auto r = RunCli("solve --pm 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("kind=HybridEqualPower order=UmFirst"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e_hybrid=22.7220333"), std::string::npos) << r.out;
}

TEST(Cli, SolveJson) {
  const auto r = RunCli("solve --nats 20 --dm 40 --dn 80 --pm 0.5 --gm 1 --gn 1 --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["e_lemma1"].is_null());
  EXPECT_EQ(j["kind"], "ExistingQosSic");
  EXPECT_EQ(j["order"], "UnFirst");
  EXPECT_NEAR(j["e_hybrid"].get<double>(), 25.808283505980759, 1e-9);
  for (const char* key : {"e_oma", "e_existing", "p_n1", "p_n2", "t_n"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Cli, SweepCsv) {
  const auto r = RunCli("sweep --var dn --from 41 --to 80 --steps 40 --nats 20 --dm 40 --pm 1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("var,value,e_oma,e_existing,e_lemma1,e_hybrid,kind,order,p_n1,p_n2,t_n\n", 0),
            0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 41);
}

TEST(Cli, SweepToFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "noma_mec_cli_sweep.csv";
  const std::string args = "sweep --var pm --from 0.66 --to 2 --steps 9 --dn 60";
  const auto to_stdout = RunCli(args);
  const auto to_file = RunCli(args + " --out " + path.string());
  ASSERT_EQ(to_file.exit_code, 0);
  EXPECT_EQ(ReadFile(path), to_stdout.out);
  std::filesystem::remove(path);
}

TEST(Cli, Regions) {
  const auto r = RunCli("regions --dn 60 --pm 1.2");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("lemma2_band applicable=true lower_pm=0.905363466 upper_pm=1.71828183"),
            std::string::npos)
      << r.out;
  const auto j = nlohmann::json::parse(RunCli("regions --dn 80 --pm 1 --json").out);
  EXPECT_EQ(j["kind"], "HybridEqualPower");
  EXPECT_FALSE(j["lemma2_applicable"].get<bool>());
}

TEST(Cli, VerifySmall) {
  const auto r = RunCli("verify --trials 2 --seed 7 --tol 1e-3");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("seed=7 trials=2"), std::string::npos);
}

TEST(Cli, VerifyZeroToleranceExits4) {
  const auto r = RunCli("verify --trials 1 --seed 7 --tol 0");
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_NE(r.out.find("result=FAIL"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(RunCli("").exit_code, 1);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 1);
  EXPECT_EQ(RunCli("solve --pm abc").exit_code, 1);
  EXPECT_EQ(RunCli("sweep --var dm --from 1 --to 2 --steps 3").exit_code, 1);
  EXPECT_EQ(RunCli("sweep --var pm --from 2 --to 1 --steps 3").exit_code, 1);
  EXPECT_EQ(RunCli("solve --dm 80 --dn 40").exit_code, 2);
  EXPECT_EQ(RunCli("solve --pm -1").exit_code, 2);
  EXPECT_EQ(RunCli("solve --out /nonexistent-dir/x.txt").exit_code, 3);
  EXPECT_EQ(RunCli("sweep --var pm --from 1 --to 2 --steps 3 --out /nonexistent-dir/x.csv").exit_code, 3);
  EXPECT_EQ(RunCli("--help").exit_code, 0);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const char* args : {"solve --pm 0.7 --json", "regions --pm 0.9 --dn 60",
                           "sweep --var nats --from 5 --to 40 --steps 8",
                           "verify --trials 2 --seed 3"}) {
    EXPECT_EQ(RunCli(args).out, RunCli(args).out) << args;
  }
}

}  // namespace
