#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "twostep/cli.hpp"

using namespace twostep;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(TWOSTEP_FIXTURES) + "/" + name; }

std::vector<std::vector<double>> csv_rows(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header->push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) row.push_back(cell.empty() ? std::nan("") : std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, CatalogListsPresets) {
  const CliRun r = run({"catalog"});
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"hopf", "flag-su", "wallach-su3", "ksym-su", "su2-berger"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
  EXPECT_NE(r.out.find("grammar"), std::string::npos);
  const CliRun j = run({"catalog", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_GE(nlohmann::json::parse(j.out).size(), 5u);
}

TEST(Cli, DescribeHopf) {
  const CliRun r = run({"describe", "hopf:n=1,lambda=2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dim m = 3, split (2,1), λ = (1,2)"), std::string::npos) << r.out;
  for (const char* check : {"k_m_orthogonality", "split_orthogonality", "ad_k_invariance", "natural_reductivity"}) {
    EXPECT_NE(r.out.find(check), std::string::npos);
  }
}

TEST(Cli, NegativeLambdaIsRejected) {
  EXPECT_EQ(run({"describe", "hopf:n=1,lambda=-1"}).code, 2);
  EXPECT_EQ(run({"describe", "hopf:n=1", "--lambda=-1"}).code, 2);
}

TEST(Cli, UnknownPresetAndBadFlags) {
  const CliRun r = run({"describe", "torus:n=3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("UnknownPreset"), std::string::npos);
  EXPECT_EQ(run({"verify", "hopf:n=1", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "hopf:n=1", "--tol-alg", "0"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "hopf:n=1", "--format", "csv"}).code, 2);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run({"check", "wallach-su3:l=1,lambda=3"}).code, 0);

  const CliRun bad = run({"check", fixture("su2_noninvariant_split.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("ad_k_invariance"), std::string::npos) << bad.err;
  const auto report = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(report["pass"].get<bool>());

  const CliRun degenerate = run({"check", "flag-su:partition=2-1,i0=2,lambda=2"});
  EXPECT_EQ(degenerate.code, 1);
  EXPECT_NE(degenerate.err.find("degenerate split"), std::string::npos);
}

TEST(Cli, SpecFiles) {
  EXPECT_EQ(run({"check", fixture("su2_explicit_hopf.json")}).code, 0);
  const CliRun syntax = run({"check", fixture("syntax_error.json")});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("line 4"), std::string::npos) << syntax.err;
  const CliRun length = run({"check", fixture("wrong_length.json")});
  EXPECT_EQ(length.code, 2);
  EXPECT_NE(length.err.find("/split/0/0"), std::string::npos) << length.err;
  EXPECT_EQ(run({"check", "/nonexistent/space.json"}).code, 2);
}

TEST(Cli, VerifyHopf) {
  const CliRun r = run({"verify", "hopf:n=1,lambda=2", "--trials", "50", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["seed"], 7);
  EXPECT_EQ(report["trials"], 50);
  EXPECT_TRUE(report["assumed_connected"].get<bool>());
  bool found = false;
  for (const auto& c : report["checks"]) {
    EXPECT_TRUE(c.contains("name") && c.contains("max_residual") && c.contains("tolerance") && c.contains("pass"));
    if (c["name"] == "geodesic_defect") {
      found = true;
      EXPECT_LE(c["max_residual"].get<double>(), 1e-8);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(report["config"]["seed"], 7);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "wallach-su3:l=3,lambda=2", "--trials", "8", "--seed", "99"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto dir = std::filesystem::temp_directory_path() / "twostep_cli_test";
  std::filesystem::create_directories(dir);
  const std::string p1 = (dir / "a.json").string(), p2 = (dir / "b.json").string();
  ASSERT_EQ(run({"verify", "wallach-su3:l=3,lambda=2", "--trials", "8", "--seed", "99", "--out", p1}).code, 0);
  ASSERT_EQ(run({"verify", "wallach-su3:l=3,lambda=2", "--trials", "8", "--seed", "99", "--out", p2}).code, 0);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  EXPECT_EQ(s1.str(), s2.str());
  EXPECT_EQ(s1.str(), a.out);
}

TEST(Cli, VerifyDegenerateAndViolatedPairs) {
  EXPECT_EQ(run({"verify", "flag-su:partition=2-1,i0=2", "--trials", "2"}).code, 1);
  EXPECT_EQ(run({"verify", "hopf:n=1", "--trials", "2", "--pair", "2,1"}).code, 1);
  EXPECT_EQ(run({"verify", "hopf:n=1", "--trials", "2", "--pair", "1,3"}).code, 2);
}

TEST(Cli, TraceBerger) {
  const CliRun r = run({"trace", "su2-berger:lambda=4", "--Xa", "1,0", "--Xb", "1", "--t", "0:6.28:200"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> header;
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(rows.size(), 200u);
  EXPECT_EQ(header, (std::vector<std::string>{"t", "D1", "D2", "D3", "coset_error"}));
  for (const auto& row : rows) {
    for (std::size_t j = 1; j <= 3; ++j) EXPECT_LE(std::abs(row[j]), 1e-8);
  }
}

TEST(Cli, TraceWithOracle) {
  const CliRun r = run({"trace", "hopf:n=1,lambda=2", "--Xa", "0.5,0.5", "--Xb", "0.3", "--t", "0:2:5", "--with-oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) EXPECT_LE(row.back(), 1e-6);
}

TEST(Cli, TraceInputErrors) {
  EXPECT_EQ(run({"trace", "su2-berger:lambda=4", "--Xa", "1", "--Xb", "1"}).code, 2);
  EXPECT_EQ(run({"trace", "su2-berger:lambda=4", "--Xa", "1,x", "--Xb", "1"}).code, 2);
  EXPECT_EQ(run({"trace", "su2-berger:lambda=4", "--Xa", "1,0", "--Xb", "1", "--t", "0:1"}).code, 2);
  EXPECT_EQ(run({"trace", "su2-berger:lambda=4", "--Xa", "1", "--Xb", "1,0", "--pair", "2,1"}).code, 1);
}

TEST(Cli, OracleTrajectory) {
  const CliRun r = run({"oracle", "hopf:n=1,lambda=2", "--v0", "1,0,1", "--t-end", "1", "--samples", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> header;
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(rows.size(), 11u);
  EXPECT_EQ(header.front(), "t");
  EXPECT_EQ(header.back(), "speed");
  for (const auto& row : rows) EXPECT_NEAR(row.back(), std::sqrt(3.0), 1e-9);
}

TEST(Cli, NumericalBreakdownExitsWithThree) {
  const CliRun r = run({"oracle", "su2-berger:lambda=4", "--v0", "6,0,6", "--t-end", "10", "--step", "0.5"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("at t ="), std::string::npos) << r.err;
}

TEST(Cli, ToleranceEnvironmentVariables) {
  ::setenv("TWOSTEP_TOL_ALG", "1e-30", 1);
  const CliRun strict = run({"check", "wallach-su3:l=1,lambda=3"});
  ::setenv("TWOSTEP_TOL_ALG", "nonsense", 1);
  const CliRun garbage = run({"check", "wallach-su3:l=1,lambda=3"});
  ::unsetenv("TWOSTEP_TOL_ALG");
  EXPECT_EQ(garbage.code, 2);
  // Flags take precedence over the environment.
  ::setenv("TWOSTEP_TOL_ALG", "1e-30", 1);
  const CliRun flagged = run({"check", "wallach-su3:l=1,lambda=3", "--tol-alg", "1e-9"});
  ::unsetenv("TWOSTEP_TOL_ALG");
  EXPECT_EQ(flagged.code, 0);
  EXPECT_EQ(nlohmann::json::parse(strict.out)["config"]["tol_alg"], 1e-30);
}

TEST(Cli, ExitCodeMapping) {
  EXPECT_EQ(exit_code_for(Error(ErrorKind::ConditionViolated, "")), 1);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::DegenerateSplit, "")), 1);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::BadSpecFile, "")), 2);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::UnknownPreset, "")), 2);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::StepTooLarge, "")), 3);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::OutOfLogWindow, "")), 3);
}
