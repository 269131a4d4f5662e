// Copyright 2026 The evoquery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evoquery/cli.hpp"
#include "evoquery/ledger.hpp"

namespace evoquery {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "evoquery");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("evoquery_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string small_corpus() {
    return write("corpus.jsonl",
                 R"({"id":"d1","url":"http://a.example/1","title":"Wear of steel","body":"friction wear steel surface wear"})"
                 "\n"
                 R"({"id":"d2","url":"http://b.example/2","title":"Lubricant","body":"lubricant friction film oil"})"
                 "\n"
                 R"({"id":"d3","url":"http://a.example/3","title":"Alloys","body":"steel alloy hardness wear testing"})"
                 "\n");
  }
  std::string seed() {
    return write("seed.jsonl", R"({"id":"s1","title":"Wear","body":"wear friction steel lubricant alloy surface hardness film"})"
                               "\n");
  }

  fs::path dir_;
};

TEST_F(CliTest, IndexReportsCount) {
  const auto r = run({"index", "--corpus", small_corpus(), "--out", path("idx/index.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("indexed 3 documents"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("idx/index.json")));
}

TEST_F(CliTest, IndexMissingFile) {
  EXPECT_EQ(run({"index", "--corpus", path("nope.jsonl"), "--out", path("i.json")}).code, 1);
}

TEST_F(CliTest, IndexEmptyCorpus) {
  const auto r = run({"index", "--corpus", write("empty.jsonl", ""), "--out", path("i.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("empty corpus"), std::string::npos) << r.err;
}

TEST_F(CliTest, IndexIdempotent) {
  const auto corpus = small_corpus();
  ASSERT_EQ(run({"index", "--corpus", corpus, "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"index", "--corpus", corpus, "--out", path("b.json")}).code, 0);
  std::ifstream a(path("a.json")), b(path("b.json"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(CliTest, UnknownFlagAndMissingSubcommand) {
  EXPECT_EQ(run({"index", "--corpus", "x", "--out", "y", "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, KeywordsListsPool) {
  const auto r = run({"keywords", "--seed-material", seed(), "--k", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(CliTest, EvolveDefaultsWritesTenGenerations) {
  ASSERT_EQ(run({"index", "--corpus", small_corpus(), "--out", path("index.json")}).code, 0);
  const auto config = write("config.json", R"({"g3": 3, "keyword_pool_size": 8})");
  const auto r = run({"evolve", "--config", config, "--seed-material", seed(), "--index", path("index.json"), "--out",
                      path("ledger")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_ledger(path("ledger")).ledger.generations.size(), 10u);
  EXPECT_NE(r.out.find("final population fitness"), std::string::npos);
  EXPECT_EQ(run({"replay", "--ledger", path("ledger")}).code, 0);
}

TEST_F(CliTest, EvolveBothProvidersIsUsageError) {
  const auto r = run({"evolve", "--seed-material", seed(), "--index", "i.json", "--endpoint", "http://127.0.0.1:9/s",
                      "--out", path("ledger")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run({"evolve", "--seed-material", seed(), "--out", path("ledger")}).code, 1);
}

TEST_F(CliTest, EvolveBadWeights) {
  ASSERT_EQ(run({"index", "--corpus", small_corpus(), "--out", path("index.json")}).code, 0);
  const auto config = write("config.json", R"({"f5": 0.5, "f6": 0.33, "f7": 0.34})");
  const auto r = run({"evolve", "--config", config, "--seed-material", seed(), "--index", path("index.json"), "--out",
                      path("ledger")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("weights must sum to 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvolveUnknownConfigKey) {
  const auto config = write("config.json", R"({"g9": 1})");
  EXPECT_EQ(run({"evolve", "--config", config, "--seed-material", seed(), "--index", "x", "--out", path("l")}).code, 1);
}

TEST_F(CliTest, EvolveUnreachableEndpointIsEnvironmentError) {
  const auto config = write("config.json", R"({"e1": 1, "g2": 1, "g3": 2, "keyword_pool_size": 5})");
  const auto r = run({"evolve", "--config", config, "--seed-material", seed(), "--endpoint", "http://127.0.0.1:1/search",
                      "--out", path("ledger")});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, EvaluateTwoListsAddsPairRows) {
  const auto qrels = write("qrels.tsv", "u1\te1\tS\t3\nu2\te1\tS\t1\nu3\te1\tS\t2\nu1\te1\tN\t2\n");
  const auto a = write("a.txt", "u1\nu2\nu3\n");
  const auto b = write("b.txt", "u3\nu1\n");
  const auto r = run({"evaluate", "--list", a, "--list", b, "--qrels", qrels, "--persona", "S", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("metric,ordering,persona,n,value\n", 0), 0u);
  EXPECT_NE(r.out.find("rho12,a~b,S,3,"), std::string::npos);
  EXPECT_NE(r.out.find("overlap_percent,a~b,S,3,66.666667"), std::string::npos);
  EXPECT_NE(r.out.find("precision,a,S,3,0.666667"), std::string::npos);
  EXPECT_EQ(r.out.find(",N,"), std::string::npos);
}

TEST_F(CliTest, EvaluateBadGrade) {
  const auto qrels = write("qrels.tsv", "u1\te1\tS\t7\n");
  EXPECT_EQ(run({"evaluate", "--list", write("a.txt", "u1\n"), "--qrels", qrels}).code, 1);
}

TEST_F(CliTest, ReportHeaderOnly) {
  const auto csv = write("m.csv", "metric,ordering,persona,n,value\n");
  const auto r = run({"report", "--metrics", csv, "--out", path("rep"), "--format", "svg"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, ReportMalformed) {
  const auto csv = write("m.csv", "metric,ordering,persona,n,value\ndcg,a,S,notanumber,1\n");
  EXPECT_EQ(run({"report", "--metrics", csv, "--out", path("rep")}).code, 1);
}

TEST_F(CliTest, ReportTwoRunsSideBySideAndDeterministic) {
  const auto one = write("one.csv", "metric,ordering,persona,n,value\ndcg,a,S,20,7.000000\nndcg,a,S,20,0.5\n");
  const auto two = write("two.csv", "metric,ordering,persona,n,value\ndcg,a,S,20,5.000000\nndcg,a,S,20,0.25\n");
  ASSERT_EQ(run({"report", "--metrics", one, "--metrics", two, "--out", path("csv"), "--format", "csv"}).code, 0);
  std::ifstream in(path("csv/report.csv"));
  std::stringstream merged;
  merged << in.rdbuf();
  EXPECT_EQ(merged.str(),
            "run,metric,ordering,persona,n,value\none,dcg,a,S,20,7.000000\none,ndcg,a,S,20,0.500000\n"
            "two,dcg,a,S,20,5.000000\ntwo,ndcg,a,S,20,0.250000\n");

  ASSERT_EQ(run({"report", "--metrics", one, "--metrics", two, "--out", path("s1")}).code, 0);
  ASSERT_EQ(run({"report", "--metrics", one, "--metrics", two, "--out", path("s2")}).code, 0);
  for (const char* f : {"dcg.svg", "ndcg.svg"}) {
    std::ifstream a(dir_ / "s1" / f), b(dir_ / "s2" / f);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_NE(sa.str().find(">one<"), std::string::npos);
    EXPECT_NE(sa.str().find(">two<"), std::string::npos);
  }
}

TEST(NamedPath, Parsing) {
  auto np = cli::parse_named_path("engine=/tmp/x/ledger");
  EXPECT_EQ(np.name, "engine");
  EXPECT_EQ(np.path, fs::path("/tmp/x/ledger"));
  np = cli::parse_named_path("/tmp/x/provider");
  EXPECT_EQ(np.name, "provider");
  np = cli::parse_named_path("runs/a.csv");
  EXPECT_EQ(np.name, "a");
}

}  // namespace
}  // namespace evoquery
