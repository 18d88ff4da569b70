#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nctorus/cli/commands.hpp"
#include "nctorus/cli/documents.hpp"
#include "nctorus/errors.hpp"

using namespace nctorus;
using namespace nctorus::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nctorus_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  RunResult run(const std::string& args, const std::string& input = "") {
    std::string cmd = std::string(NCTORUS_CLI_PATH) + " " + args;
    if (!input.empty()) cmd += " --input " + write("input.json", input).string();
    cmd += " > " + (dir_ / "out.txt").string() + " 2> " + (dir_ / "err.txt").string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir_ / "out.txt"), slurp(dir_ / "err.txt")};
  }

  fs::path dir_;
};

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_double(cell, "cell"));
    rows.push_back(row);
  }
  return rows;
}

const char* kDeltaStar = R"({
  "a": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [1, 0], "re": "1", "im": "0"}]},
  "b": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [0, 1], "re": "1", "im": "0"}]},
  "sigma": {"matrix": [[0, 1], [-1, 0]], "hbar": "0.5"}})";

}  // namespace

TEST_F(Cli, StarOfDeltasIsPhaseScaledDelta) {
  const auto r = run("star", kDeltaStar);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto e = parse_element(Json::parse(r.out), "out");
  ASSERT_EQ(e.support_size(), 1u);
  EXPECT_LE(std::abs(e.coefficient(GroupPoint{1, 1}) - Complex(0.0, -1.0)), 1e-15);
}

TEST_F(Cli, StarAtZeroHbarIsConvolution) {
  auto doc = Json::parse(kDeltaStar);
  doc["sigma"]["hbar"] = 0;
  doc["a"]["coefficients"].push_back(Json::parse(R"({"point": [0, 0], "re": "2", "im": "0.5"})"));
  const auto r = run("star", doc.dump());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto e = parse_element(Json::parse(r.out), "out");
  const auto a = parse_element(doc["a"], "a");
  const auto b = parse_element(doc["b"], "b");
  EXPECT_EQ(e, convolve(a, b));
}

TEST_F(Cli, MalformedPointNamesCoefficient) {
  auto doc = Json::parse(kDeltaStar);
  doc["b"]["coefficients"].push_back(Json::parse(R"({"point": [1, 2, 3], "re": "1", "im": "0"})"));
  const auto r = run("star", doc.dump());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("b.coefficients[1].point"), std::string::npos) << r.err;
  EXPECT_EQ(run("star", "{not json").code, 1);
  EXPECT_EQ(run("star --input /nonexistent/x.json").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(Cli, OutputFlagWritesFile) {
  const auto path = dir_ / "product.json";
  const auto r = run("star --output " + path.string(), kDeltaStar);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_NO_THROW(parse_element(Json::parse(slurp(path)), "out"));
}

TEST_F(Cli, SemiclassicalCommutingPairIsZero) {
  const auto r = run("semiclassical", R"({
    "a": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [1, 0], "re": "1", "im": "0"}]},
    "b": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [3, 0], "re": "0.5", "im": "1"}]},
    "form": [[0, 1], [-1, 0]], "hbar": [0.01, 1, 0.1], "window": 5})");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(header, "hbar,defect");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], 1.0);
  EXPECT_EQ(rows[2][0], 0.01);
  for (const auto& row : rows) EXPECT_EQ(row[1], 0.0);
}

TEST_F(Cli, SemiclassicalDeltaPairScalesLinearly) {
  const std::string doc = R"({
    "a": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [1, 0], "re": "1", "im": "0"}]},
    "b": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [0, 1], "re": "1", "im": "0"}]},
    "form": [[0, 1], [-1, 0]], "hbar": [0.001, 0.1, 0.01], "window": 4})";
  const auto r = run("semiclassical", doc);
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double h = rows[i][0];
    const Complex q = (std::exp(Complex(0.0, -std::numbers::pi * h)) - 1.0) / Complex(0.0, h);
    EXPECT_NEAR(rows[i][1], std::abs(q + std::numbers::pi), 1e-12);
  }
  EXPECT_NEAR(rows[1][1] / rows[0][1], 0.1, 0.01);
  EXPECT_NEAR(rows[2][1] / rows[1][1], 0.1, 0.01);
  EXPECT_EQ(run("semiclassical", doc).out, r.out);
}

TEST_F(Cli, KasprzakVerify) {
  for (const char* doc : {R"({"moduli": [5], "matrix": [[1]], "trials": 50})",
                          R"({"moduli": [7], "matrix": [[3]], "trials": 50})"}) {
    const auto r = run("kasprzak-verify --seed 11", doc);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = Json::parse(r.out);
    EXPECT_TRUE(report["passed"].get<bool>());
    EXPECT_EQ(report["fixed_point_dimension"], report["group_order"]);
    EXPECT_LE(parse_double(report["max_deviation"].get<std::string>(), "d"), 1e-10);
  }
  const auto singular = run("kasprzak-verify", R"({"moduli": [5], "matrix": [[0]]})");
  EXPECT_EQ(singular.code, 1);
  EXPECT_NE(singular.err.find("singular"), std::string::npos) << singular.err;
  const auto strict = run("kasprzak-verify --tolerance -1", R"({"moduli": [5], "matrix": [[1]], "trials": 2})");
  EXPECT_EQ(strict.code, 2);
  EXPECT_FALSE(Json::parse(strict.out)["passed"].get<bool>());
}

TEST_F(Cli, KasprzakSeedDeterminism) {
  const std::string doc = R"({"moduli": [7], "matrix": [[3]], "trials": 5, "seed": 9})";
  const auto first = run("kasprzak-verify", doc);
  const auto second = run("kasprzak-verify", doc);
  const auto flagged = run("kasprzak-verify --seed 9", doc);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out, flagged.out);
  EXPECT_EQ(Json::parse(first.out)["seed"], 9);
}

TEST_F(Cli, Heisenberg) {
  const auto r = run("heisenberg", R"({"samples": 32, "hbar": 1})");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(header, "y,re,im");
  ASSERT_EQ(rows.size(), 32u);
  EXPECT_EQ(rows[0], (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(rows[16][0], 0.5);
  EXPECT_NEAR(rows[16][1], -1.0, 1e-12);
  EXPECT_NEAR(rows[16][2], 0.0, 1e-12);
  for (const auto& row : rows) {
    const Complex want = std::exp(Complex(0.0, -2.0 * std::numbers::pi * row[0]));
    EXPECT_NEAR(std::abs(Complex(row[1], row[2]) - want), 0.0, 1e-12);
  }
  EXPECT_EQ(run("heisenberg", R"({"samples": 32, "hbar": 1})").out, r.out);
  const auto empty = run("heisenberg", R"({"samples": 0, "hbar": 1})");
  EXPECT_EQ(empty.code, 1);
  EXPECT_NE(empty.err.find("samples"), std::string::npos);
}

TEST_F(Cli, NormConstantElementIsFlat) {
  const auto r = run("norm", R"({
    "element": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [0, 0], "re": "0.6", "im": "0.8"}]},
    "form": [[0, 1], [-1, 0]], "hbar": 0.3, "windows": [0, 2, 5]})");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(header, "window,estimate");
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) EXPECT_NEAR(row[1], 1.0, 1e-15);
}

TEST_F(Cli, NormCosOracleApproachesTwo) {
  const auto r = run("norm", R"({
    "element": {"context": {"rank": 2, "mode": "lattice"},
                "coefficients": [{"point": [1, 0], "re": "1", "im": "0"}, {"point": [-1, 0], "re": "1", "im": "0"}]},
    "form": [[0, 0], [0, 0]], "hbar": 0, "windows": [2, 4, 8, 16]})");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i][1], rows[i - 1][1]);
  EXPECT_NEAR(rows.back()[1], 2.0, 0.05);
  EXPECT_LT(rows.back()[1], 2.0 + 1e-12);
  const auto bad = run("norm", R"({
    "element": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [3, 0], "re": "1", "im": "0"}]},
    "form": [[0, 0], [0, 0]], "hbar": 0, "windows": [1]})");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("windows[0]"), std::string::npos);
}

TEST_F(Cli, AutomorphySolve) {
  const std::string z2 = R"({"group": 2, "points": 1, "tau": {"modulus": 2, "exponents": [0, 0, 0, 1]}, "modulus": )";
  const auto at4 = run("automorphy-solve", z2 + "4}");
  ASSERT_EQ(at4.code, 0) << at4.err;
  const auto report = Json::parse(at4.out);
  EXPECT_TRUE(report["solvable"].get<bool>());
  EXPECT_LE(parse_double(report["automorphy_deviation"].get<std::string>(), "d"), 1e-12);
  EXPECT_LE(parse_double(report["u_deviation"].get<std::string>(), "d"), 1e-12);

  const auto at2 = run("automorphy-solve", z2 + "2}");
  ASSERT_EQ(at2.code, 0) << at2.err;
  EXPECT_FALSE(Json::parse(at2.out)["solvable"].get<bool>());

  const auto broken =
      run("automorphy-solve", R"({"group": 3, "points": 1, "modulus": 3, "tau": {"modulus": 3, "exponents": [0,0,0,0,1,0,0,0,0]}})");
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.err.find("cocycle"), std::string::npos) << broken.err;

  const auto short_tau = run("automorphy-solve", R"({"group": 2, "points": 1, "modulus": 2, "tau": {"modulus": 2, "exponents": [0]}})");
  EXPECT_EQ(short_tau.code, 1);
  const auto bad_action =
      run("automorphy-solve", R"({"group": 2, "action": [[0, 1], [0, 0]], "modulus": 2, "tau": {"modulus": 2, "exponents": [0,0,0,0,0,0,0,0]}})");
  EXPECT_EQ(bad_action.code, 1);
  EXPECT_NE(bad_action.err.find("action"), std::string::npos) << bad_action.err;
}

TEST_F(Cli, SuitePartialRunAndSummary) {
  const auto json = dir_ / "summary.json";
  const auto r = run("suite --only 1,involution --json " + json.string());
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS  1 delta-relation"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS  3 involution"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("associativity"), std::string::npos);
  const auto summary = Json::parse(slurp(json));
  EXPECT_TRUE(summary["passed"].get<bool>());
  EXPECT_EQ(summary["criteria"].size(), 2u);
  EXPECT_EQ(run("suite --only 99").code, 1);
}

TEST_F(Cli, SuiteMutationControl) {
  const auto mutated = run("suite --only semiclassical-limit --scale 1");
  EXPECT_EQ(mutated.code, 2);
  EXPECT_NE(mutated.out.find("FAIL  4 semiclassical-limit"), std::string::npos) << mutated.out;
  const auto baseline = run("suite --only 4");
  EXPECT_EQ(baseline.code, 0) << baseline.out;
}

TEST(Guarded, MapsExceptionsToExitCodes) {
  std::ostringstream sink;
  EXPECT_EQ(guarded([] {}, sink), kSuccess);
  EXPECT_EQ(guarded([] { throw ValidationError("v"); }, sink), kValidation);
  EXPECT_EQ(guarded([] { throw ContextMismatch("c"); }, sink), kValidation);
  EXPECT_EQ(guarded([] { throw PreconditionError("p"); }, sink), kValidation);
  EXPECT_EQ(guarded([] { throw ToleranceFailure("t"); }, sink), kTolerance);
  EXPECT_EQ(guarded([] { throw NumericFailure("n"); }, sink), kNumeric);
  EXPECT_EQ(guarded([] { [[maybe_unused]] const auto j = Json::parse("{"); }, sink), kValidation);
}
