#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "isometrica/json_io.hpp"

namespace fs = std::filesystem;
using isometrica::Json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("isometrica_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(ISOMETRICA_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string angle_projection(const std::string& name, double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    Json j{{"rows", 2}, {"cols", 2}, {"data", {c * c, c * s, c * s, s * s}}};
    return file(name, j.dump());
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("sweep"), 2);
  EXPECT_EQ(run("sweep thm9"), 2);
  EXPECT_EQ(run("sweep thm1 --trials 0"), 2);
  EXPECT_EQ(run("sweep thm1 --max-dim 100"), 2);
  EXPECT_EQ(run("sweep thm1 --format xml"), 2);
  EXPECT_EQ(run("gallery nothing"), 2);
  EXPECT_EQ(run("path missing.json missing.json"), 2);
}

TEST_F(Cli, SweepWritesReport) {
  const std::string out = (dir_ / "r.csv").string();
  EXPECT_EQ(run("sweep thm1 --seed 5 --trials 20 --format csv --out " + out), 0);
  EXPECT_EQ(read("r.csv").rfind("trial,seed,d,lhs,rhs,margin,flags\n", 0), 0u);
  EXPECT_EQ(run("sweep thm7 --trials 10"), 0);
  EXPECT_EQ(Json::parse(read("stdout"))["summary"]["violations"], 0);
}

TEST_F(Cli, SweepViolationExitsOne) {
  EXPECT_EQ(run("sweep thm1 --trials 5 --tol-iso 1e-300"), 1);
}

TEST_F(Cli, SameSeedSameBytes) {
  const std::string a = (dir_ / "a.json").string(), b = (dir_ / "b.json").string();
  ASSERT_EQ(run("sweep thm1 --seed 42 --trials 30 --out " + a), 0);
  ASSERT_EQ(run("sweep thm1 --seed 42 --trials 30 --out " + b), 0);
  EXPECT_EQ(read("a.json"), read("b.json"));
  EXPECT_FALSE(read("a.json").empty());
}

TEST_F(Cli, PathCommand) {
  const std::string p = angle_projection("p.json", 0.0), q = angle_projection("q.json", 0.5);
  EXPECT_EQ(run("path " + p + " " + q), 0);
  const Json j = Json::parse(read("stdout"));
  EXPECT_TRUE(j["certificate"]["passed"].get<bool>());
  // A step bound no refinement can meet.
  EXPECT_EQ(run("path " + p + " " + q + " --path-step 1e-9 --resolution 2"), 1);
  const std::string zero = file("zero.json", R"({"rows":2,"cols":2,"data":[0,0,0,0]})");
  EXPECT_EQ(run("path " + zero + " " + p), 2);
  const std::string r1 = file("r1.json", R"({"rows":1,"cols":2,"data":[1,0]})");
  const std::string r2 = file("r2.json", R"({"rows":1,"cols":2,"data":[-1,0]})");
  const std::string r3 = file("r3.json", R"({"rows":1,"cols":2,"data":[-0.5,0.8660254037844386]})");
  EXPECT_EQ(run("path " + r1 + " " + r2 + " --mode thm5"), 2);
  EXPECT_EQ(run("path " + r1 + " " + r3 + " --mode thm5"), 0);
  EXPECT_EQ(run("path " + r1 + " " + r3 + " --mode thm9"), 2);
}

TEST_F(Cli, DecompAndCriterion) {
  const std::string p = angle_projection("p.json", 0.0), q = angle_projection("q.json", 0.5);
  EXPECT_EQ(run("decomp " + p + " " + q), 0);
  const Json d = Json::parse(read("stdout"));
  EXPECT_EQ(d["dims"]["generic_pairs"], 1);
  EXPECT_NEAR(d["angles"][0].get<double>(), 0.5, 1e-12);
  const std::string bad = file("bad.json", R"({"rows":2,"cols":2,"data":[1,1,0,0]})");
  EXPECT_EQ(run("decomp " + p + " " + bad), 2);
  EXPECT_EQ(run("criterion " + p), 0);
  EXPECT_FALSE(Json::parse(read("stdout"))["is_continuity_point"].get<bool>());
  const std::string broken = file("broken.json", "{");
  EXPECT_EQ(run("criterion " + broken), 2);
}

TEST_F(Cli, FamilyCommand) {
  Json fam = Json::array();
  for (int i = 0; i <= 8; ++i) {
    const double x = -0.2 + 0.05 * i;
    fam.push_back({{"x", x}, {"operator", {{"rows", 2}, {"cols", 2}, {"data", {1.0, 0.0, 0.0, x}}}}});
  }
  const std::string f = file("fam.json", fam.dump());
  EXPECT_EQ(run("family " + f + " --x0-index 4"), 0);
  const Json r = Json::parse(read("stdout"));
  EXPECT_FALSE(r["polar_continuous"].get<bool>());
  EXPECT_TRUE(r["verdicts_agree"].get<bool>());
  EXPECT_EQ(run("family " + f + " --x0-index 40"), 2);
}
