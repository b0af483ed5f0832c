#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nvfix::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NVFIX_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, IndexBothAlgorithms) {
  const auto r = run({"index", data("linear_2_1.json"), "--region", "all", "--algorithm", "both"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "index = 1 (schirmer = crossing)\n");
}

TEST(Cli, BoundaryFixedPointIsInadmissible) {
  const auto r = run({"index", data("linear_1_2.json"), "--region", "0+1/2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("inadmissible"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"index"}).code, 2);
  EXPECT_EQ(run({"index", data("linear_2_1.json"), "--frobnicate"}).code, 2);
  EXPECT_EQ(run({"index", data("linear_2_1.json"), "--algorithm", "magic"}).code, 2);
  EXPECT_EQ(run({"index", data("linear_2_1.json"), "--region", "1/2"}).code, 2);
  EXPECT_EQ(run({"index", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ValidateReportsViolations) {
  const auto path = std::filesystem::temp_directory_path() / "nvfix_cli_bad.json";
  std::ofstream(path) << R"({"n":2,"strands":[{"breakpoints":[["0","0"],["1","1/2"]]},)"
                      << R"({"breakpoints":[["0","1"],["1","3/2"]]}],"monodromy":[0,1]})";
  const auto r = run({"validate", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Distinctness at all t"), std::string::npos);
  EXPECT_EQ(run({"index", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(run({"validate", data("linear_2_1.json")}).code, 0);
  EXPECT_EQ(run({"lefschetz", data("constant_thirds.json")}).out, "L = 3 (degree_formula = split_sum)\n");
  EXPECT_EQ(run({"fix", data("identity.json")}).out, "interval [0, 1]  strand 0\n");
  EXPECT_EQ(run({"lift", data("linear_2_1.json"), "--cover", "2"}).out, "lifts through the 2-fold cover: 0\n");
  EXPECT_EQ(run({"average", data("linear_2_1.json"), "--cover", "2"}).code, 3);
  EXPECT_EQ(run({"average", data("linear_1_2.json"), "--cover", "3"}).code, 0);
  const auto p = run({"product", data("linear_2_6.json"), data("linear_1_2.json"), "--json"});
  EXPECT_EQ(p.code, 0);
  const auto j = nlohmann::json::parse(p.out);
  EXPECT_EQ(j["direct"], 4);
  EXPECT_EQ(run({"product", data("linear_2_1.json"), data("linear_1_2.json"), "--region-v", "0+1/2"}).code, 3);
}

TEST(Cli, EmitPerturbed) {
  const auto path = std::filesystem::temp_directory_path() / "nvfix_cli_perturbed.json";
  EXPECT_EQ(run({"fix", data("identity.json"), "--emit-perturbed", path.string()}).code, 0);
  const auto r = run({"index", path.string(), "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["schirmer"], 0);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyWritesAReport) {
  const auto path = std::filesystem::temp_directory_path() / "nvfix_cli_verify.json";
  const auto r = run({"verify", "--suite", "uniqueness", "--seed", "3", "--cases", "10", "--json", path.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["failures"], 0);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_EQ(j["entries"][0]["suite"], "uniqueness");
  for (const char* key : {"case_id", "inputs", "expected", "got", "pass"}) EXPECT_TRUE(j["entries"][0].contains(key));
  std::filesystem::remove(path);
}
