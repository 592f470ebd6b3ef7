#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using radon::cli::run;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "radon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

std::vector<std::map<std::string, std::string>> parse_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, '\t')) cols.push_back(c);
    if (header.empty()) {
      header = cols;
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size() && k < cols.size(); ++k) row[header[k]] = cols[k];
    rows.push_back(row);
  }
  return rows;
}

const char* kNested =
    "big\tPOLYGON ((0 0, 10 0, 10 10, 0 10, 0 0))\n"
    "mid\tPOLYGON ((20 20, 24 20, 24 24, 20 24, 20 20))\n";
const char* kSmall =
    "p\tPOINT (5 5)\n"
    "q\tPOLYGON ((1 1, 2 1, 2 2, 1 2, 1 1))\n"
    "r\tLINESTRING (21 21, 22 22)\n"
    "s\tPOLYGON ((9 9, 11 9, 11 11, 9 11, 9 9))\n";

}  // namespace

TEST_F(CliTest, LinkSmoke) {
  const auto s = file("s.tsv", "a\tPOLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))\n");
  const auto t = file("t.tsv", "b\tPOLYGON ((1 1, 3 1, 3 3, 1 3, 1 1))\n");
  const Outcome o = cli({"link", "--source", s, "--target", t, "--relation", "intersects", "--heuristic", "avg"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "<a> <http://www.opengis.net/ont/geosparql#sfIntersects> <b> .\n");
}

TEST_F(CliTest, CoversWithAndWithoutSwap) {
  const auto s = file("s.tsv", kNested);
  const auto t = file("t.tsv", kSmall);
  const Outcome swapped = cli({"link", "--source", s, "--target", t, "--relation", "covers", "--output-format", "tsv",
                               "--stats", path("a.stats")});
  const Outcome plain = cli({"link", "--source", s, "--target", t, "--relation", "covers", "--output-format", "tsv",
                             "--no-swap", "--stats", path("b.stats")});
  EXPECT_EQ(swapped.code, 0) << swapped.err;
  EXPECT_EQ(plain.code, 0) << plain.err;
  EXPECT_EQ(swapped.out, "big\tp\nbig\tq\nmid\tr\n");
  EXPECT_EQ(swapped.out, plain.out);
  EXPECT_NE(read(path("a.stats")).find("swapped=1"), std::string::npos);
  EXPECT_NE(read(path("b.stats")).find("swapped=0"), std::string::npos);
}

TEST_F(CliTest, OutputToFile) {
  const auto s = file("s.nt", "<http://s/1> <http://www.opengis.net/ont/geosparql#asWKT> \"POINT (1 1)\" .\n");
  const auto t = file("t.tsv", "x\tPOLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))\n");
  const Outcome o = cli({"link", "--source", s, "--target", t, "--relation", "within", "--output", path("out.nt"),
                         "--predicate", "http://ex/in"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(read(path("out.nt")), "<http://s/1> <http://ex/in> <x> .\n");
}

TEST_F(CliTest, UsageErrors) {
  const auto s = file("s.tsv", kNested);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "near"}).code, 2);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s}).code, 2);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals", "--heuristic", "best"}).code, 2);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals", "--threads", "0"}).code, 2);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals", "--output", s}).code, 2);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals", "--threads", "2", "--dedup",
                 "shared-cache"})
                .code,
            2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals"}).code, 0);
}

TEST_F(CliTest, IoErrors) {
  const auto s = file("s.tsv", kNested);
  EXPECT_EQ(cli({"link", "--source", path("missing.tsv"), "--target", s, "--relation", "equals"}).code, 3);
  EXPECT_EQ(cli({"link", "--source", s, "--target", s, "--relation", "equals", "--output",
                 path("no/such/dir/out.nt")})
                .code,
            3);
}

TEST_F(CliTest, OracleAgreesAndDetectsFault) {
  const auto s = file("s.tsv", kSmall);
  const auto t = file("t.tsv", kNested);
  for (const char* r : {"equals", "intersects", "touches", "crosses", "overlaps", "within", "covers", "disjoint"}) {
    const Outcome o = cli({"oracle", "--source", s, "--target", t, "--relation", r});
    EXPECT_EQ(o.code, 0) << r << o.err;
    EXPECT_EQ(o.out.find("+\t"), std::string::npos);
    EXPECT_EQ(o.out.find("-\t"), std::string::npos);
  }
  const Outcome bad = cli({"oracle", "--source", s, "--target", t, "--relation", "within", "--fault-unsound-filter"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("-\tq\tbig"), std::string::npos) << bad.out;
}

TEST_F(CliTest, OracleRejectsEmptyDatasets) {
  const auto s = file("s.tsv", kSmall);
  const auto e = file("e.tsv", "# nothing here\n");
  EXPECT_EQ(cli({"oracle", "--source", s, "--target", e, "--relation", "intersects"}).code, 2);
  EXPECT_EQ(cli({"oracle", "--source", e, "--target", s, "--relation", "intersects"}).code, 2);
}

TEST_F(CliTest, BenchIsDeterministic) {
  const std::vector<std::string> args{"bench", "--seed", "5", "--count", "150", "--clusters", "4",
                                      "--relation", "intersects,within", "--repetitions", "1"};
  const Outcome a = cli(args);
  const Outcome b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ra = parse_report(a.out), rb = parse_report(b.out);
  ASSERT_EQ(ra.size(), 2u);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t k = 0; k < ra.size(); ++k) {
    EXPECT_EQ(ra[k].at("digest"), rb[k].at("digest"));
    EXPECT_EQ(ra[k].at("radon_computations"), rb[k].at("radon_computations"));
    EXPECT_EQ(ra[k].at("matches_naive"), "yes");
    EXPECT_LE(std::stoull(ra[k].at("radon_computations")), std::stoull(ra[k].at("naive_computations")));
  }
}

TEST_F(CliTest, BenchThreadsSweepGivesIdenticalMappings) {
  const Outcome o = cli({"bench", "--seed", "3", "--count", "200", "--clusters", "5", "--relation", "touches",
                         "--threads-sweep", "--chunk-size", "3", "--repetitions", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = parse_report(o.out);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.at("digest"), rows[0].at("digest"));
    EXPECT_EQ(row.at("radon_computations"), rows[0].at("radon_computations"));
  }
}

TEST_F(CliTest, BenchOverlappingCorpusGainsNothing) {
  std::string text;
  for (int k = 0; k < 40; ++k) {
    const double d = k * 0.01;
    text += "b" + std::to_string(k) + "\tPOLYGON ((" + std::to_string(d) + " 0, 5 0, 5 5, " + std::to_string(d) +
            " 5, " + std::to_string(d) + " 0))\n";
  }
  const auto s = file("s.tsv", text);
  const auto t = file("t.tsv", text);
  const Outcome o = cli({"bench", "--source", s, "--target", t, "--relation", "intersects", "--repetitions", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = parse_report(o.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("naive_computations"), "1600");
  EXPECT_EQ(rows[0].at("radon_computations"), "1600");
  EXPECT_NEAR(std::stod(rows[0].at("reduction")), 1.0, 1e-9);
}

TEST_F(CliTest, BenchSeparatedClustersReduceWork) {
  const Outcome o = cli({"bench", "--seed", "8", "--count", "400", "--clusters", "10", "--relation", "intersects",
                         "--repetitions", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = parse_report(o.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GE(std::stod(rows[0].at("reduction")), 5.0);
}

TEST(ExitCodes, EveryErrorClassMaps) {
  using radon::ErrorCode;
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::invalid_config), 2);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::unsupported_relation), 2);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::empty_dataset), 2);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::io), 3);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::syntax), 4);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::unsupported_kind), 4);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::invalid_geometry), 4);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::invalid_mask), 4);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::numerical_degeneracy), 5);
  EXPECT_EQ(radon::cli::exit_code_for(ErrorCode::run_failure), 6);
}
