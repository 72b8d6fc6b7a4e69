#include "latslice/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace latslice;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST(Io, BuiltinBodies) {
  EXPECT_EQ(count_points(io::parse_body("cube:3")).total, 27);
  EXPECT_EQ(count_points(io::parse_body("cross:4")).total, 9);
  EXPECT_EQ(count_points(io::parse_body("box:3,1/2")).total, 7);
  EXPECT_EQ(count_points(io::parse_body("cross:2@2")).total, 13);
  EXPECT_THROW(io::parse_body("cube:x"), ParseError);
  EXPECT_THROW(io::parse_body("box:1,0"), InvalidArgument);
  EXPECT_THROW(io::parse_body("no-such-body"), ParseError);
}

TEST(Io, RandomBodiesAreSeeded) {
  const auto a = io::parse_body("random:3", 11);
  const auto b = io::parse_body("random:3", 11);
  EXPECT_EQ(a.vertices(), b.vertices());
  EXPECT_EQ(a.dim(), 3U);
}

TEST(Io, BodyFiles) {
  const auto h = temp_file("latslice_h.json",
                           R"({"dim": 2, "hrep": [[["1","0"],"3"], [["-1","0"],"3"],
                               [["0","1"],"1/2"], [["0","-1"],"1/2"]]})");
  const auto body = io::parse_body(h);
  EXPECT_EQ(exact_volume(body), Rational(6));
  const auto v = temp_file("latslice_v.json", R"({"vrep": [["1","0"], ["0","1"], ["-1","0"], ["0","-1"]]})");
  EXPECT_EQ(count_points(io::parse_body(v)).total, 5);
  const auto bad = temp_file("latslice_bad.json", R"({"vrep": [["1/0","0"]]})");
  EXPECT_THROW(io::parse_body(bad), ParseError);
  const auto both = temp_file("latslice_both.json", R"({"vrep": [], "hrep": []})");
  EXPECT_THROW(io::parse_body(both), ParseError);
  const auto broken = temp_file("latslice_broken.json", "{not json");
  EXPECT_THROW(io::parse_body(broken), ParseError);
}

TEST(Io, Subspaces) {
  EXPECT_EQ(io::parse_subspace("1,2,3", 3), LatticeSubspace::hyperplane({1, 2, 3}));
  EXPECT_EQ(io::parse_subspace("u:1,2,3", 3), LatticeSubspace::hyperplane({1, 2, 3}));
  const auto line = io::parse_subspace("1,0,0;0,1,0", 3);
  EXPECT_EQ(line.dim(), 1U);
  EXPECT_TRUE(line.contains({0, 0, 5}));
  EXPECT_THROW(io::parse_subspace("1,2", 3), InvalidArgument);
  EXPECT_THROW(io::parse_subspace("0,0,0", 3), InvalidArgument);
  EXPECT_THROW(io::parse_subspace("1,1/2,0", 3), ParseError);
  EXPECT_THROW(io::parse_subspace("1,0,0;2,0,0", 3), InvalidArgument);
  EXPECT_EQ(io::parse_subspace("b:0,0,2", 3), line);
  EXPECT_EQ(io::parse_subspace("b:1,0,0;0,1,0", 3), LatticeSubspace::hyperplane({0, 0, 1}));
  EXPECT_THROW(io::parse_subspace("b:1,0,0;2,0,0", 3), InvalidArgument);
  EXPECT_THROW(io::parse_subspace("b:1,0;0,1", 2), InvalidArgument);
}

TEST(Cli, Count) {
  const auto r = run({"count", "--body", "cube:3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "27\n");
}

TEST(Cli, SliceWithNormal) {
  const auto r = run({"slice", "--body", "cross:3", "--normal", "1,1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, MaxSlice) {
  const auto r = run({"slice", "--body", "cube:3", "--m", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["best_count"], "9");
  EXPECT_EQ(j["exhaustive"], true);
}

TEST(Cli, VerifyMainJson) {
  const auto r = run({"verify", "main", "--body", "cross:4", "--m", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["status"], "passed");
  EXPECT_EQ(j["count_total"], "9");
  EXPECT_EQ(j["d"], 4);
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["max_slice"]["best_count"], "7");
  EXPECT_TRUE(j["observed_constant_power"].is_string());
  EXPECT_TRUE(j["mahler_volume"].is_string());
  for (const auto& e : j["chain"]) {
    EXPECT_TRUE(e["pass"].get<bool>()) << e["name"];
  }
}

TEST(Cli, VerifyOtherTheorems) {
  EXPECT_EQ(run({"verify", "dim2", "--body", "box:5,1"}).code, 0);
  EXPECT_EQ(run({"verify", "unconditional", "--body", "cross:3"}).code, 0);
  EXPECT_EQ(run({"verify", "progression", "--body", "box:3,1"}).code, 0);
  const auto thin = run({"verify", "dim2", "--body", "box:1,2/5"});
  EXPECT_EQ(thin.code, 1);
  EXPECT_NE(thin.err.find("hypothesis"), std::string::npos);
  const auto csv = run({"verify", "main", "--body", "cube:3", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), io::csv_header());
}

TEST(Cli, BrunnProfileJson) {
  const auto r = run({"brunn", "--body", "cross:3", "--normal", "1,1,1", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["normal"], io::Json::parse("[1,1,1]"));
  EXPECT_EQ(j["levels"], io::Json::parse(R"({"-1":3,"0":1,"1":3})"));
  EXPECT_EQ(j["brunn"]["holds"], true);
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(run({"volume", "--body", "cross:3"}).out, "4/3\n");
  const auto mc = run({"volume", "--body", "cross:3", "--mode", "mc", "--samples", "1000", "--seed", "5"});
  EXPECT_EQ(mc.code, 0);
  EXPECT_NE(mc.out.find("+-"), std::string::npos);
  EXPECT_EQ(run({"minima", "--body", "box:3,1/2"}).out,
            "lambda_1 = 1/3  (1,0)\nlambda_2 = 2  (0,1)\n");
  EXPECT_EQ(run({"pick", "--body", "cube:2"}).out, "A = 4, I = 1, B = 8: identity holds\n");
  const auto g = run({"gauss", "--body", "cube:2", "--radii", "1,2,3", "--format", "json"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(io::Json::parse(g.out)["rows"][2]["count"], "49");
  const auto levels = run({"count", "--body", "cross:3", "--normal", "1,1,1"});
  EXPECT_EQ(levels.out, "7\n(-1) 3\n(0) 1\n(1) 3\n");
}

TEST(Cli, ExitCodesForBadInput) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"count"}).code, 1);
  EXPECT_EQ(run({"count", "--body", "nothing"}).code, 1);
  EXPECT_EQ(run({"count", "--body", "cube:3", "--m", "2"}).code, 1);
  EXPECT_EQ(run({"slice", "--body", "cube:3", "--normal", "1,2"}).code, 1);
  EXPECT_EQ(run({"slice", "--body", "cube:3", "--m", "3"}).code, 1);
  EXPECT_EQ(run({"verify", "bogus", "--body", "cube:3"}).code, 1);
  EXPECT_EQ(run({"verify", "unconditional", "--body", "random:2"}).code, 1);
  EXPECT_EQ(run({"gauss", "--body", "cube:2", "--radii", "1,x"}).code, 1);
  EXPECT_EQ(run({"volume", "--body", "cube:2", "--mode", "fast"}).code, 1);
  EXPECT_EQ(run({"count", "--body", "cube:2", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ScanIsDeterministicAndOrdered) {
  const std::vector<std::string> base{"scan", "--body", "random:3", "--trials", "6", "--seed", "40"};
  auto serial = base;
  serial.insert(serial.end(), {"--jobs", "1"});
  auto parallel = base;
  parallel.insert(parallel.end(), {"--jobs", "4"});
  const auto a = run(serial);
  const auto b = run(parallel);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, io::csv_header());
  for (int i = 0; i < 6; ++i) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line.substr(0, line.find(',')), std::to_string(40 + i));
  }
  EXPECT_FALSE(std::getline(lines, line));
  EXPECT_EQ(run({"scan", "--body", "cube:3"}).code, 1);
}

TEST(Cli, OutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "latslice_out.txt").string();
  std::remove(path.c_str());
  const auto r = run({"count", "--body", "cube:2", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(contents, "9\n");
}

TEST(Cli, ExactDimCapFromEnvironment) {
  ::setenv("LATSLICE_EXACT_DIM_CAP", "2", 1);
  const auto r = run({"volume", "--body", "cube:3"});
  ::unsetenv("LATSLICE_EXACT_DIM_CAP");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run({"volume", "--body", "cube:3"}).out, "8\n");
}

TEST(Cli, ProgressionWithZeroBound) {
  // The heuristic progression of the cross-polytope has N = (1, 0).
  const auto r = run({"verify", "progression", "--body", "cross:2", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["volume_bound_applies"], false);
  EXPECT_EQ(j["contained"], true);
}
