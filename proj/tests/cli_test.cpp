#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace lexiscan {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + LEXISCAN_CLI_PATH + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("lexiscan_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    write("d3.txt", "ear\nlead\nreal\n");
    ASSERT_EQ(run("build --lexicon " + path("d3.txt") + " --out " + path("d3.idx")).status, 0);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& body) const { std::ofstream(path(name)) << body; }

  fs::path dir;
};

TEST_F(Cli, BuildIsDeterministicAndLoadable) {
  ASSERT_EQ(run("build --lexicon " + path("d3.txt") + " --out " + path("again.idx")).status, 0);
  const std::string a = read_file(path("d3.idx"));
  EXPECT_EQ(a.substr(0, 4), "SCDG");
  EXPECT_EQ(a, read_file(path("again.idx")));
  EXPECT_EQ(deserialize(a), build_index(testing::d3()));
}

TEST_F(Cli, BuildMissingLexicon) { EXPECT_EQ(run("build --lexicon " + path("nope.txt") + " --out " + path("x.idx")).status, 2); }

TEST_F(Cli, QueryD3) {
  const CliRun r = run("query --index " + path("d3.idx") + " --pattern dread --bound 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "lead\t2\nreal\t2\n");
  EXPECT_EQ(run("query --index " + path("d3.idx") + " --pattern ear --bound 0").out, "ear\t0\n");
  const CliRun empty = run("query --index " + path("d3.idx") + " --pattern zzz --bound 0");
  EXPECT_EQ(empty.status, 0);
  EXPECT_EQ(empty.out, "");
}

TEST_F(Cli, QueryMethodsAgree) {
  for (const char* pattern : {"dread", "rae", "lear", "e"}) {
    const std::string base = "query --index " + path("d3.idx") + " --pattern " + pattern + " --bound 2";
    const std::string expected = run(base).out;
    for (const char* extra : {" --method brute", " --method fb", " --method oflazer", " --no-prune", " --bottom-up",
                              " --ops lev-transpose --method brute"}) {
      if (std::string(extra).find("transpose") != std::string::npos) {
        EXPECT_EQ(run(base + extra).out, run(base + " --ops lev-transpose").out) << pattern;
      } else {
        EXPECT_EQ(run(base + extra).out, expected) << pattern << extra;
      }
    }
  }
}

TEST_F(Cli, QueryOpsFileAndSubstrings) {
  write("ops.txt", "classes: substitute insert delete\n");
  EXPECT_EQ(run("query --index " + path("d3.idx") + " --ops-file " + path("ops.txt") + " --pattern dread --bound 2").out,
            "lead\t2\nreal\t2\n");
  const CliRun r = run("query --index " + path("d3.idx") + " --pattern dre --bound 1 --include-substrings");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("substring\tre\t1\n"), std::string::npos);
}

TEST_F(Cli, QueryUsageErrors) {
  EXPECT_EQ(run("query --index " + path("d3.idx") + " --pattern x --bound -1").status, 2);
  EXPECT_EQ(run("query --index " + path("d3.idx") + " --pattern x --bound 1 --method nope").status, 2);
  EXPECT_EQ(run("query --index " + path("d3.txt") + " --pattern x --bound 1").status, 2);
  EXPECT_EQ(run("query --pattern x --bound 1").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST_F(Cli, VerifyD3) {
  const CliRun r = run("verify --index " + path("d3.idx"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, 3), "ok\t");
}

TEST_F(Cli, BenchCsvAndCoverage) {
  write("q.txt", "dread\near\n");
  write("other.txt", "ear\n");
  const CliRun ok = run("bench --index " + path("d3.idx") + " --queries " + path("q.txt") + " --bound 2 --repeat 1");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out.substr(0, ok.out.find('\n')),
            "method,bound,queries,mean_us,median_us,total_answers,checksum,ratio_vs_ideal");
  EXPECT_EQ(std::count(ok.out.begin(), ok.out.end(), '\n'), 5);
  EXPECT_EQ(run("bench --index " + path("d3.idx") + " --queries " + path("q.txt") + " --perfect-queries " +
                path("other.txt") + " --bound 2")
                .status,
            1);
}

TEST_F(Cli, GenLexiconAndQueriesDeterministic) {
  const std::string gl = "gen-lexicon --entries 200 --average-length 8 --alphabet 10 --seed 5 --output ";
  ASSERT_EQ(run(gl + path("a.txt")).status, 0);
  ASSERT_EQ(run(gl + path("b.txt")).status, 0);
  EXPECT_EQ(read_file(path("a.txt")), read_file(path("b.txt")));
  EXPECT_EQ(load_lexicon_file(path("a.txt")).entries.size(), 200u);

  const std::string gq = "gen-queries --lexicon " + path("a.txt") + " --bound 1 --count 50 --seed 3";
  const CliRun q1 = run(gq);
  EXPECT_EQ(q1.status, 0);
  EXPECT_EQ(q1.out, run(gq).out);
  EXPECT_EQ(std::count(q1.out.begin(), q1.out.end(), '\n'), 50);
  EXPECT_NE(q1.out, run(gq, "LEXISCAN_SEED=4").out);
}

TEST_F(Cli, SeedEnvironmentOverride) {
  const std::string gl = "gen-lexicon --entries 20 --alphabet 5 --seed ";
  const auto a = run(gl + "1", "LEXISCAN_SEED=9").out;
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, run(gl + "2", "LEXISCAN_SEED=9").out);
  EXPECT_NE(a, run(gl + "1").out);
  EXPECT_EQ(run(gl + "1", "LEXISCAN_SEED=x").status, 2);
}

TEST_F(Cli, DumpD3) {
  const CliRun r = run("dump --index " + path("d3.idx"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "states\t9");
  std::set<std::string> canon;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("state\t", 0) == 0) canon.insert(line.substr(line.rfind('\t') + 1));
  }
  std::set<std::string> expected;
  for (const Word& w : testing::d3_classes()) expected.insert(encode_utf8(w, true));
  EXPECT_EQ(canon, expected);

  const CliRun dot = run("dump --dot --index " + path("d3.idx"));
  EXPECT_EQ(dot.status, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot.out.substr(dot.out.size() - 2), "}\n");
  EXPECT_NE(dot.out.find("style=dashed"), std::string::npos);
  EXPECT_EQ(std::count(dot.out.begin(), dot.out.end(), '{'), std::count(dot.out.begin(), dot.out.end(), '}'));
  EXPECT_EQ(std::count(dot.out.begin(), dot.out.end(), '"') % 2, 0);
  EXPECT_EQ(run("dump --index ''").status, 2);
}

}  // namespace
}  // namespace lexiscan
