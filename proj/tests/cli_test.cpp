#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

struct Run {
  int code;
  std::string out;
};

/// Runs the binary through the shell, capturing stdout; stderr is discarded unless redirected.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(EVENTRI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return ts::fixture_path(name); }

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / ("eventri_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, ValidateFixtures) {
  for (const char* f : {"quaternion.json", "l41.json", "fig8.json", "l31.json", "double3.json", "cross4.json",
                        "binary_tetrahedral.json", "odd_one_tet.json"}) {
    const auto r = run("validate " + fx(f));
    EXPECT_EQ(r.code, 0) << f;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["command"], "validate");
    EXPECT_EQ(doc["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  }
}

TEST(Cli, InvalidInputExitsOne) {
  const auto corrupt = temp_file("corrupt.json", "{\"dim\": 3, \"gluings\": [[");
  EXPECT_EQ(run("validate " + corrupt.string()).code, 1);
  const auto bad = temp_file("bad.json", R"({"dim": 3, "simplices": 1, "gluings": [[{"s": 0, "perm": [0, 1, 2, 3]}, {"s": 0, "perm": [0, 1, 2, 3]}, {"s": 0, "perm": [0, 1, 2, 3]}, {"s": 0, "perm": [0, 1, 2, 3]}]]})");
  EXPECT_EQ(run("validate " + bad.string()).code, 1);
  EXPECT_EQ(run("validate /nonexistent/file.json").code, 1);
  EXPECT_EQ(run("parity " + corrupt.string()).code, 1);
  fs::remove(corrupt);
  fs::remove(bad);
}

TEST(Cli, AnalyzeReportsFixtureValues) {
  const auto r = run("analyze " + fx("quaternion.json"));
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto dumped = doc.dump();
  EXPECT_NE(dumped.find("K(normal)"), std::string::npos);
  EXPECT_NE(dumped.find("Klein bottle"), std::string::npos);
  EXPECT_EQ(run("analyze " + fx("odd_one_tet.json")).code, 2);
  EXPECT_EQ(run("analyze --no-surfaces " + fx("fig8.json")).code, 0);
}

TEST(Cli, AnalyzeIsDeterministic) {
  const auto a = run("analyze " + fx("fig8.json") + " " + fx("l41.json"));
  const auto b = run("--jobs 2 analyze " + fx("fig8.json") + " " + fx("l41.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out).is_array());
  EXPECT_EQ(a.out, run("analyze " + fx("fig8.json") + " " + fx("l41.json")).out);
}

TEST(Cli, Cover) {
  const auto out = fs::temp_directory_path() / ("eventri_cover_" + std::to_string(::getpid()) + ".json");
  const auto r = run("cover " + fx("fig8.json") + " --action induced:2 --output " + out.string());
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(doc.dump().find("\"simplices\":6"), std::string::npos);
  EXPECT_EQ(run("validate " + out.string()).code, 0);
  fs::remove(out);
  EXPECT_EQ(run("cover " + fx("quaternion.json") + " --action trivial").code, 0);
  const auto bad = temp_file("action.json", R"({"degree": 4, "images": [[1, 0, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3]]})");
  EXPECT_EQ(run("cover " + fx("fig8.json") + " --action " + bad.string()).code, 2);
  fs::remove(bad);
  EXPECT_EQ(run("cover " + fx("odd_one_tet.json") + " --action canonical").code, 2);
  EXPECT_EQ(run("cover " + fx("fig8.json") + " --action induced:zz").code, 1);
}

TEST(Cli, Parity) {
  const auto r = run("parity --symmetric " + fx("parity_symmetric.json"));
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(doc.dump().find("\"ops\""), std::string::npos);
  EXPECT_EQ(run("parity " + fx("parity_symmetric.json")).code, 0);
  EXPECT_EQ(run("parity " + fx("parity_identity.json")).code, 2);
  EXPECT_EQ(run("parity --symmetric " + fx("parity_identity.json")).code, 2);
  EXPECT_EQ(run("parity " + fx("parity_zero.json")).code, 0);
}

TEST(Cli, Color) {
  const auto r = run("color " + fx("double3.json"));
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(doc.dump().find("[0,1,2,3]"), std::string::npos);
  EXPECT_EQ(run("color " + fx("cross4.json")).code, 0);
  EXPECT_EQ(run("color " + fx("quaternion.json")).code, 2);
}

TEST(Cli, TextFormatFromEnvironment) {
  const auto r = run("validate " + fx("l41.json"), "EVENTRI_FORMAT=text");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run("--format yaml validate " + fx("l41.json")).code, 1);
}
