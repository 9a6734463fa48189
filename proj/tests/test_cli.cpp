#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <intertwine/cli.hpp>

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "intertwine");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = intertwine::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find("\r\n", start)) != std::string::npos; start = pos + 2)
    v.push_back(s.substr(start, pos - start));
  return v;
}

}  // namespace

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--model", "nope"}).code, 2);
  EXPECT_EQ(run({"oracle", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"oracle", "--grid", "32", "--grid", "64"}).code, 2);
  EXPECT_EQ(run({"verify", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--g", "2"}).code, 2);  // overrides need one model
  EXPECT_EQ(run({"verify", "--model", "cs", "--g", "-1"}).code, 2);
  EXPECT_EQ(run({"verify", "--sets", "6"}).code, 2);
  EXPECT_EQ(run({"verify", "--tol-relation", "0"}).code, 2);
  EXPECT_EQ(run({"spectrum"}).code, 2);
  const CliRun bad = run({"verify", "--model", "nope"});
  EXPECT_NE(bad.err.find("unknown model 'nope'"), std::string::npos);
}

TEST(Cli, HelpExitsWithZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle"), std::string::npos);
}

TEST(Cli, SpectrumCsv) {
  const CliRun r = run({"spectrum", "--model", "hydrogen", "--nmax", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "n,E_direct,E_chain,overlap");
  EXPECT_EQ(rows[1].substr(0, 7), "0,-0.5,");
  EXPECT_EQ(lines(run({"spectrum", "--model", "hydrogen", "--nmax", "0"}).out).size(), 2u);
}

TEST(Cli, SpectrumClampsToBoundSpectrum) {
  const CliRun r = run({"spectrum", "--model", "rm-hyp", "--nmax", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["results"].size(), 2u);
  EXPECT_EQ(doc["summary"]["notes"][0], "rm-hyp: bound spectrum has 2 levels; chain truncated at n=1");
}

TEST(Cli, VerifyNotesTruncatedSpectrum) {
  const CliRun r = run({"verify", "--model", "rm-hyp", "--g", "9", "--l", "0", "--nmax", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["summary"]["pass"].get<bool>());
  EXPECT_EQ(doc["summary"]["notes"][0], "rm-hyp g=9 l=0: bound spectrum has 2 levels; checks truncated at n=1");
  EXPECT_EQ(doc["run_config"]["parameter_overrides"]["g"], 9.0);
  EXPECT_EQ(doc["summary"]["rows"], doc["results"].size());
}

TEST(Cli, TightToleranceFails) {
  const CliRun r = run({"verify", "--model", "cs", "--sets", "1", "--nmax", "2", "--tol-relation", "1e-30"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out)["summary"]["pass"].get<bool>());
}

TEST(Cli, CsvRowsCarryResiduals) {
  const CliRun r = run({"verify", "--model", "ho", "--sets", "1", "--nmax", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], "relation_id,model,params,n,n_max,residual,value,tolerance,pass,note");
  EXPECT_EQ(rows[1].substr(0, 15), "ho.eigenpair,ho");
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "intertwine_cli_test.json";
  const CliRun r = run({"verify", "--model", "cs", "--sets", "1", "--nmax", "1", "--output", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const json doc = json::parse(f);
  EXPECT_TRUE(doc.contains("timing"));
  std::filesystem::remove(path);
}

TEST(Cli, ResultsAreByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> args{"verify", "--model", "rm-sph", "--sets", "2", "--nmax", "3", "--seed", "7"};
  ::setenv("INTERTWINE_THREADS", "1", 1);
  const std::string a = json::parse(run(args).out)["results"].dump();
  const std::string b = json::parse(run(args).out)["results"].dump();
  ::setenv("INTERTWINE_THREADS", "4", 1);
  const std::string c = json::parse(run(args).out)["results"].dump();
  ::unsetenv("INTERTWINE_THREADS");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Cli, CoarseGridOrderNearTwo) {
  for (const char* model : {"ho", "cs", "rm-sph"}) {
    const CliRun r = run({"oracle", "--model", model, "--grid", "64", "--grid", "128", "--grid", "256"});
    const json doc = json::parse(r.out);
    for (const auto& row : doc["results"]) {
      const double order = row["residuals"]["convergence_order"].get<double>();
      EXPECT_NEAR(order, 2.0, 0.3) << model << " n=" << row["n"];
    }
  }
}

TEST(Cli, OracleClampsStateCount) {
  const CliRun r = run({"oracle", "--model", "rm-hyp", "--g", "9", "--l", "0", "--k", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["summary"]["notes"][0], "rm-hyp g=9 l=0: bound spectrum has 2 levels; oracle truncated at n=1");
  EXPECT_EQ(doc["run_config"]["k"], 4);
}
