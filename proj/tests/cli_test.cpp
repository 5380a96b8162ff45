#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef RPINORM_CLI_PATH
#  error "RPINORM_CLI_PATH must be defined"
#endif
#ifndef RPINORM_TEST_DATA
#  error "RPINORM_TEST_DATA must be defined"
#endif

namespace {

using json = nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(RPINORM_TEST_DATA) + "/" + name; }

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const std::string err_path = ::testing::TempDir() + "rpinorm_cli_" + info->name() + "_" +
                               std::to_string(++counter) + ".err";
  const std::string cmd = env + " " + RPINORM_CLI_PATH + " " + args + " 2>" + err_path;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

json stdout_json(const Run& r) { return json::parse(r.out); }

} // namespace

TEST(Cli, NormNamed) {
  auto r = run("norm --phi " + data("running.json") + " --named S");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"value\":3.0}\n");
  r = run("norm --phi " + data("running.json") + " --named L_n --n 4");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(stdout_json(r)["value"], 8.0);
  r = run("norm --phi " + data("running.json") + " --named S_n_e --n 3 --e 0.01,0,0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(stdout_json(r)["value"].get<double>(), 4.02, 1e-12);
}

TEST(Cli, NormFromDocuments) {
  auto r = run("norm --phi " + data("running_points.json") + " --psi " + data("norm_l4.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(stdout_json(r)["value"], 8.0);
  r = run("norm --phi " + data("running.json") + " --psi " + data("norm_s3.json"));
  EXPECT_EQ(stdout_json(r)["value"], 4.0);
  r = run("norm --phi " + data("running.json") + " --psi " + data("norm_range.json"));
  EXPECT_EQ(stdout_json(r)["value"], 3.0);
  r = run("norm --phi " + data("running.json") + " --psi " + data("peak3.json"));
  EXPECT_EQ(stdout_json(r)["value"], 9.0);
  r = run("norm --phi " + data("running.json") + " --classic tv");
  EXPECT_EQ(stdout_json(r)["value"], 8.0);
}

TEST(Cli, NormRejectsZeroPsi) {
  auto r = run("norm --phi " + data("running.json") + " --psi " + data("zero.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("psi must be nonzero"), std::string::npos);
  EXPECT_NO_THROW(json::parse(r.err));
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run("norm --phi " + data("bad_start.json") + " --named S").code, 1);
  EXPECT_EQ(run("norm --phi " + data("broken.json") + " --named S").code, 1);
  EXPECT_EQ(run("norm --phi " + data("missing.json") + " --named S").code, 1);
  EXPECT_EQ(run("norm --phi " + data("running.json")).code, 1);
  EXPECT_EQ(run("norm --phi " + data("running.json") + " --named S --classic sup").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST(Cli, Spectrum) {
  auto r = run("spectrum --phi " + data("running.json") + " --family S --max-n 4");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "n,value\n1,3\n2,3\n3,4\n4,4\n");
  r = run("spectrum --phi " + data("running.json") + " --family L --max-n 4");
  EXPECT_EQ(r.out, "n,value\n1,3\n2,6\n3,6\n4,8\n");
  EXPECT_EQ(run("spectrum --phi " + data("empty.json") + " --family S --max-n 4").code, 1);
}

TEST(Cli, SpectrumRoundTripsDecimals) {
  auto r = run("norm --phi " + data("running.json") + " --named S_n_e --n 3 --e 0.1,0,0");
  double v = stdout_json(r)["value"].get<double>();
  EXPECT_EQ(v, 4.0 + 0.1 * 2.0);
}

TEST(Cli, Reconstruct) {
  for (const char* f : {"running.json", "running_negated.json", "running_points.json"}) {
    auto r = run(std::string("reconstruct --phi ") + data(f));
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = stdout_json(r);
    EXPECT_EQ(j["l"], 3);
    EXPECT_EQ(j["match"], true);
    EXPECT_EQ(j["sign_ambiguous"], true);
    ASSERT_EQ(j["profile"].size(), 5u);
    EXPECT_NEAR(j["profile"][1].get<double>(), 3.0, 1e-9);
    EXPECT_GT(j["oracle_calls"].get<int>(), 0);
  }
}

TEST(Cli, ReconstructNonCompact) {
  auto r = run("reconstruct --phi " + data("sigmoid.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("reconstruction requires compact support"), std::string::npos);
}

TEST(Cli, NumericalFailuresExitTwo) {
  auto r = run("reconstruct --phi " + data("running.json") + " --n-cap 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("capacity"), std::string::npos);
}

TEST(Cli, ToleranceEnvironment) {
  EXPECT_EQ(run("reconstruct --phi " + data("running.json"), "RPINORM_TOL=1e-6").code, 0);
  EXPECT_EQ(run("reconstruct --phi " + data("running.json"), "RPINORM_TOL=-3").code, 1);
  EXPECT_EQ(run("reconstruct --phi " + data("running.json") + " --tol 0").code, 1);
}

TEST(Cli, Compare) {
  auto r = run("compare --phi " + data("running.json") + " --psi " + data("running.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = stdout_json(r);
  EXPECT_EQ(j["lower"], 0.0);
  EXPECT_EQ(j["upper"], 0.0);
  r = run("compare --phi " + data("peak3.json") + " --psi " + data("peak5.json") + " --refine 16");
  j = stdout_json(r);
  EXPECT_EQ(j["lower"], 2.0);
  EXPECT_NEAR(j["upper"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(j["refinement"], 16);
}

TEST(Cli, VerifyAndDeterminism) {
  auto a = run("verify --phi " + data("running.json") + " --seed 5");
  ASSERT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(stdout_json(a)["all_passed"], true);
  auto b = run("verify --phi " + data("running.json") + " --seed 5");
  EXPECT_EQ(a.out, b.out);
  auto c = run("reconstruct --phi " + data("running.json"));
  auto d = run("reconstruct --phi " + data("running.json"));
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, Catalog) {
  auto r = run("catalog");
  ASSERT_EQ(r.code, 0);
  auto j = stdout_json(r);
  std::map<std::string, std::vector<double>> entries;
  for (const auto& e : j["standard"]) entries[e["name"]] = e["weights"].get<std::vector<double>>();
  EXPECT_EQ(entries["S"], (std::vector<double>{1}));
  EXPECT_EQ(entries["Lambda"], (std::vector<double>{1, -1}));
  EXPECT_EQ(entries["L_2"], (std::vector<double>{1, -1, -1, 1}));
}
