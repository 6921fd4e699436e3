#include "cubedance/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cubedance {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(CliTest, NeighborsOfCAug) {
  const auto r = run({"neighbors", "Caug"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  for (const auto& l : ls) EXPECT_EQ(l.back(), 'U') << l;
}

TEST(CliTest, NeighborsJson) {
  const auto r = run({"neighbors", "Em", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["chord"], "Em");
  EXPECT_EQ(j["neighbors"].size(), 3u);
}

TEST(CliTest, AutsCount) {
  EXPECT_EQ(run({"auts", "--count"}).out, "7776\n");
  EXPECT_EQ(run({"auts"}).out, "7776\n");
  EXPECT_EQ(run({"auts", "--count", "--filter", "N=U;PL=P,L"}).out, "648\n");
  EXPECT_EQ(run({"auts", "--count", "--filter", "sigma=()"}).out, "972\n");
  EXPECT_EQ(run({"auts", "--count", "--format", "json"}).out, "{\"count\":7776}\n");
}

TEST(CliTest, AutsList) {
  const auto r = run({"auts", "--list", "--filter", "N=U;PL=P,L;sigma=()"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 81u);
  EXPECT_EQ(ls.front(), "N=U;PL=P,L;sigma=();g=0,0,0,0");
  const auto j = run({"auts", "--list", "--format", "json", "--filter", "g=0,0,0,0;sigma=();N=U;PL=P,L"});
  const auto jl = lines(j.out);
  ASSERT_EQ(jl.size(), 1u);
  EXPECT_EQ(Json::parse(jl[0])["nu"].size(), 28u);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"neighbors"}).code, 2);
  EXPECT_EQ(run({"neighbors", "Hm"}).code, 2);
  EXPECT_EQ(run({"auts", "--filter", "nonsense"}).code, 2);
  EXPECT_EQ(run({"monoid", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"transform", "--progression", "C,,G"}).code, 2);
  EXPECT_EQ(run({"transform", "--progression", "C", "--aut", "junk"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliTest, Monoid) {
  const auto r = run({"monoid"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 40u);
  const auto j = Json::parse(run({"monoid", "--format", "json"}).out);
  ASSERT_EQ(j.size(), 40u);
  EXPECT_EQ(j[0]["word"], "e");
}

TEST(CliTest, GraphToFile) {
  const auto path = std::filesystem::temp_directory_path() / "cubedance-cli-graph.json";
  ASSERT_EQ(run({"graph", "--format", "json", "--out", path.string()}).code, 0);
  std::ifstream in(path);
  const auto j = Json::parse(in);
  EXPECT_EQ(j["nodes"].size(), 28u);
  std::filesystem::remove(path);
  const auto dot = run({"graph"});
  EXPECT_EQ(dot.out.rfind("graph colored_cube_dance {", 0), 0u);
  EXPECT_EQ(run({"graph", "--format", "svg"}).code, 2);
}

TEST(CliTest, TransformText) {
  const auto r = run({"transform", "--progression", "C, Am, F, G", "--aut", "N=U;PL=P,L;sigma=();g=1,1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("0: C, Am, F, G", 0), 0u);
  EXPECT_EQ(ls[1].rfind("1: E, Dbm, A, B", 0), 0u);
}

TEST(CliTest, TransformJson) {
  const auto r = run({"transform", "--progression", "C Em", "--aut", "N=U;PL=P,L;sigma=();g=0,0,0,0",
                      "--aut", "N=U;PL=P,L;sigma=();g=1,1,1,1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["chain"].size(), 2u);
  EXPECT_EQ(j["chain"][1]["chords"], Json::parse(R"js(["E", "Abm"])js"));
}

TEST(CliTest, Verify) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("9/9 criteria passed"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace cubedance
