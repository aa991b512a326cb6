#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oqa/cli.hpp"
#include "oqa/serialize.hpp"
#include "oracles.hpp"

using namespace oqa;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int status = cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("oqa-cli-test-" + name);
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, CheckCatalogOqaPasses) {
  Result r = run({"check", "oqa", "catalog:mn_oqa(2)"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("PASS yang-baxter"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, JsonReportIsParseable) {
  Result r = run({"check", "oqa", "catalog:mn_oqa(3)", "--json"});
  ASSERT_EQ(r.status, 0) << r.err;
  Json j = parse_json(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["results"].size(), 9u);
}

TEST(Cli, SignFlippedFileFailsWithWitness) {
  OqaCandidate c = mn_oqa(2, Scalar(2));
  AlgebraPtr M = c.H;
  c.r = oracle::lit({M, M}, {{{"E12", "E21"}, "-3/2"},
                             {{"E11", "E11"}, "2"},
                             {{"E22", "E22"}, "2"},
                             {{"E11", "E22"}, "1"},
                             {{"E22", "E11"}, "1"}});
  auto path = temp_file("flipped.json");
  std::ofstream(path) << to_json(c).dump(2);
  Result r = run({"check", "oqa", path.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("FAIL yang-baxter: at ["), std::string::npos) << r.out;
  Json err = parse_json(r.err);
  EXPECT_EQ(err["error"]["kind"], "VerdictFailed");
  std::filesystem::remove(path);
}

TEST(Cli, BuildOutputRevalidatesThroughStdin) {
  for (std::vector<std::string> build :
       {std::vector<std::string>{"build", "thm37", "catalog:mn_oqa(2)"},
        {"build", "thm36", "catalog:ex34_nonuple_case2"},
        {"build", "thm35", "catalog:ex34_nonuple_case1", "catalog:ex34_nonuple_case1"},
        {"build", "radford", "catalog:mn_oqa(2)"},
        {"build", "tensor-oqa", "catalog:ex45_H_oqa", "catalog:ex45_Hprime_oqa"},
        {"build", "cor39", "catalog:ex45_weak_r", "catalog:sweedler4_rmatrix", "catalog:kz2_rmatrix"}}) {
    Result b = run(build);
    ASSERT_EQ(b.status, 0) << build[1] << ": " << b.err;
    Result c = run({"check", "oqa", "-"}, b.out);
    EXPECT_EQ(c.status, 0) << build[1] << ": " << c.out << c.err;
  }
  Result h = run({"build", "bicrossed", "catalog:ex45_weak_r"});
  ASSERT_EQ(h.status, 0) << h.err;
  EXPECT_EQ(run({"check", "hopf", "-"}, h.out).status, 0);
  Result q = run({"build", "bicrossed", "catalog:ex45_weak_r", "catalog:sweedler4_rmatrix", "catalog:kz2_rmatrix"});
  ASSERT_EQ(q.status, 0) << q.err;
  EXPECT_EQ(run({"check", "qt", "-"}, q.out).status, 0);
}

TEST(Cli, BuildIsDeterministic) {
  EXPECT_EQ(run({"build", "thm36", "catalog:ex34_nonuple_case1"}).out,
            run({"build", "thm36", "catalog:ex34_nonuple_case1"}).out);
}

TEST(Cli, ExportMatrixAsCsv) {
  Result b = run({"build", "thm37", "catalog:mn_oqa(2)"});
  Result csv = run({"export", "matrix", "-", "--format", "csv"}, b.out);
  ASSERT_EQ(csv.status, 0) << csv.err;
  EXPECT_EQ(count_lines(csv.out), 16u);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "a^2,0,0,1,0,0,-a^3 + 2*a - a^-1,0,0,0,0,0,a^2,0,0,1");
  Result js = run({"export", "matrix", "-", "--format", "json", "--order", "col-major,second-major"}, b.out);
  ASSERT_EQ(js.status, 0) << js.err;
  Json j = parse_json(js.out);
  EXPECT_EQ(j["rows"], 16);
  EXPECT_EQ(j["ordering"], "col-major,second-major");
}

TEST(Cli, ExportDiffAgainstFixture) {
  Result b = run({"build", "thm37", "catalog:mn_oqa(2)"});
  Result d = run({"export", "diff", "-", "--fixture", "expected_ex43_alpha", "--json"}, b.out);
  EXPECT_EQ(d.status, 0) << d.err;
  Json j = parse_json(d.out);
  EXPECT_EQ(j["diffs"].size(), 3u);
  EXPECT_TRUE(j["all_recorded"].get<bool>());
  Result wrong = run({"export", "diff", "-", "--fixture", "expected_ex43_alpha", "--order", "col-major"}, b.out);
  EXPECT_EQ(wrong.status, 1);
}

TEST(Cli, EvalSubstitutesAndStaysValid) {
  Result e = run({"eval", "catalog:mn_oqa(2)", "--set", "a=3/2"});
  ASSERT_EQ(e.status, 0) << e.err;
  Json j = parse_json(e.out);
  EXPECT_TRUE(j["params"].empty());
  EXPECT_EQ(run({"check", "oqa", "-"}, e.out).status, 0);
  Result n = run({"eval", "catalog:ex45_nonuple", "--set", "nu=-2"});
  ASSERT_EQ(n.status, 0) << n.err;
  EXPECT_EQ(run({"check", "nonuple", "-"}, n.out).status, 0);
  Result m = run({"eval", "catalog:expected_ex43_alpha", "--set", "a=2"});
  ASSERT_EQ(m.status, 0) << m.err;
  EXPECT_EQ(parse_json(m.out)["cells"][0][0], "4");
}

TEST(Cli, HopfChecks) {
  EXPECT_EQ(run({"check", "hopf", "catalog:sweedler4_hopf"}).status, 0);
  EXPECT_EQ(run({"check", "qt", "catalog:sweedler4_rmatrix(1/3)"}).status, 0);
  EXPECT_EQ(run({"check", "qt", "catalog:kz2_rmatrix"}).status, 0);
  Result w = run({"check", "weakr", "catalog:ex45_weak_r"});
  EXPECT_EQ(w.status, 0) << w.out;
  EXPECT_NE(w.out.find("PASS antipode-invariance"), std::string::npos);
  Result n = run({"check", "nonuple", "catalog:ex34_nonuple_case1"});
  EXPECT_EQ(n.status, 0);
  EXPECT_NE(n.out.find("PASS derived-H'-H'-H"), std::string::npos);
}

TEST(Cli, CatalogListAndExport) {
  Result l = run({"catalog", "list"});
  EXPECT_EQ(l.status, 0);
  EXPECT_NE(l.out.find("mn_oqa(n)\n"), std::string::npos);
  Result e = run({"catalog", "export", "ex34_nonuple_case1"});
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_EQ(parse_json(e.out)["kind"], "nonuple");
  EXPECT_EQ(run({"check", "nonuple", "-"}, e.out).status, 0);
}

TEST(Cli, OutputFlagWritesFile) {
  auto path = temp_file("out.json");
  Result r = run({"catalog", "export", "kz2_hopf", "--output", path.string()});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(parse_json(buf.str())["kind"], "hopf");
  std::filesystem::remove(path);
}

TEST(Cli, InputErrorsExitTwoWithErrorObject) {
  for (std::vector<std::string> args : {std::vector<std::string>{"check", "oqa", "/nonexistent/file.json"},
                                        {"check", "oqa", "catalog:nope"},
                                        {"check", "oqa", "catalog:ex34_nonuple_case1"},
                                        {"check", "frobenius", "catalog:mn_oqa(2)"},
                                        {"eval", "catalog:mn_oqa(2)", "--set", "a"},
                                        {"eval", "catalog:mn_oqa(2)", "--set", "nu=1"},
                                        {"bogus"},
                                        {}}) {
    Result r = run(args);
    EXPECT_EQ(r.status, 2) << (args.empty() ? "" : args[0]);
    Json err = parse_json(r.err);
    EXPECT_TRUE(err["error"].contains("kind"));
    EXPECT_TRUE(err["error"].contains("message"));
  }
  Result bad = run({"check", "oqa", "-"}, "{ not json");
  EXPECT_EQ(bad.status, 2);
  EXPECT_EQ(parse_json(bad.err)["error"]["kind"], "ParseError");
}
