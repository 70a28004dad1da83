#include "qind/cli/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qind/cli/inputs.hpp"
#include "qind/cli/run_report.hpp"
#include "qind/error.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qind::cli;
using nlohmann::json;

struct Result {
  int exit;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  // Reports echo file arguments verbatim, so run next to the data files.
  void SetUp() override {
    previous_ = fs::current_path();
    fs::current_path(QIND_TEST_DATA_DIR);
  }
  void TearDown() override { fs::current_path(previous_); }

  static Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string golden(const std::string& name) {
    std::ifstream in(fs::path(QIND_TEST_GOLDEN_DIR) / name, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

 private:
  fs::path previous_;
};

// ---------------------------------------------------------------------------
// Golden files

TEST_F(Cli, GoldenDecomposition) {
  const auto r = run_cli({"decompose", "0.64", "0.36", "0.24", "0"});
  EXPECT_EQ(r.exit, kExitOk);
  EXPECT_EQ(r.out, golden("decompose_064.json"));
}

TEST_F(Cli, GoldenBalancedSweep) {
  const auto r = run_cli({"zwm-sweep", "--output", "csv"});
  EXPECT_EQ(r.exit, kExitOk);
  EXPECT_EQ(r.out, golden("zwm_balanced.csv"));
}

TEST_F(Cli, GoldenThreePhotonUniverse) {
  const auto r = run_cli({"qset-check", "three_photons.yaml"});
  EXPECT_EQ(r.exit, kExitOk);
  EXPECT_EQ(r.out, golden("three_photons.json"));
}

// ---------------------------------------------------------------------------
// decompose

TEST_F(Cli, DecomposeCoherentState) {
  const auto r = run_cli({"decompose", "0.5", "0.5", "0.5", "0"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto report = parse_report(r.out);
  EXPECT_EQ(report.outputs["p_id"].get<double>(), 1.0);
  EXPECT_EQ(report.outputs["mandel_residual"].get<double>(), 0.0);
}

TEST_F(Cli, DecomposeValues) {
  const auto report = parse_report(run_cli({"decompose", "0.64", "0.36", "0.24", "0"}).out);
  EXPECT_NEAR(report.outputs["p_id"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(report.outputs["visibility"].get<double>(), 0.48, 1e-12);
  EXPECT_NEAR(report.outputs["visibility_pid_ratio"].get<double>(), 0.96, 1e-12);
}

TEST_F(Cli, DecomposeDegenerateSource) {
  const auto r = run_cli({"decompose", "1", "0", "0", "0"});
  EXPECT_EQ(r.exit, kExitDegenerate);
  EXPECT_NE(r.err.find("DegenerateSource"), std::string::npos);
  const auto report = parse_report(r.out);
  EXPECT_EQ(report.exit_status, kExitDegenerate);
  ASSERT_TRUE(report.error.has_value());
  EXPECT_TRUE(report.outputs.empty());
}

TEST_F(Cli, DecomposeInvalidDensity) {
  EXPECT_EQ(run_cli({"decompose", "0.5", "0.5", "0.6", "0"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"decompose", "0.5", "0.5", "0.1"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"decompose", "a", "0.5", "0.1", "0"}).exit, kExitInvalidInput);
}

TEST_F(Cli, DecomposeNegativeImaginaryPart) {
  const auto r = run_cli({"decompose", "0.64", "0.36", "0.12", "-0.12"});
  ASSERT_EQ(r.exit, kExitOk);
  EXPECT_NEAR(parse_report(r.out).outputs["p_id"].get<double>(), std::sqrt(2.0) / 4.0, 1e-12);
}

TEST_F(Cli, DecomposeCsv) {
  const auto r = run_cli({"decompose", "0.64", "0.36", "0.24", "0", "--output", "csv"});
  ASSERT_EQ(r.exit, kExitOk);
  std::istringstream lines(r.out);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("p_id,p_d,", 0), 0u);
  EXPECT_EQ(row.rfind("0.5,0.5,", 0), 0u);
  EXPECT_FALSE(std::getline(lines, extra));
}

// ---------------------------------------------------------------------------
// zwm-sweep

TEST_F(Cli, SweepRowsAndExitCodes) {
  const auto r = run_cli({"zwm-sweep"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto rows = parse_report(r.out).outputs["rows"];
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i]["p_id"].get<double>(), 0.1 * static_cast<double>(i), 1e-12);
  }
  EXPECT_EQ(run_cli({"zwm-sweep", "--steps", "1"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"zwm-sweep", "--alpha", "0", "--beta", "0"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"zwm-sweep", "--alpha", "x"}).exit, kExitInvalidInput);
}

TEST_F(Cli, SweepUnbalancedPidColumnMatchesBalanced) {
  auto pid_column = [](const Result& r) {
    std::vector<double> out;
    for (const auto& row : parse_report(r.out).outputs["rows"]) out.push_back(row["p_id"]);
    return out;
  };
  const auto even = pid_column(run_cli({"zwm-sweep"}));
  const auto uneven = pid_column(run_cli({"zwm-sweep", "--alpha", "0.8", "--beta", "0.6"}));
  ASSERT_EQ(even.size(), uneven.size());
  for (std::size_t i = 0; i < even.size(); ++i) EXPECT_NEAR(even[i], uneven[i], 1e-12);
}

// ---------------------------------------------------------------------------
// fringes

TEST_F(Cli, FringesCoherentState) {
  const auto r = run_cli({"fringes", "0.5", "0.5", "0.5", "0", "--samples", "360", "--output",
                          "csv"});
  ASSERT_EQ(r.exit, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "phase_rad,rate");
  double lo = 1e300, hi = -1e300;
  std::size_t samples = 0;
  std::string footer;
  while (std::getline(lines, line)) {
    if (line.rfind("visibility,", 0) == 0) {
      footer = line;
      continue;
    }
    const double rate = std::stod(line.substr(line.find(',') + 1));
    lo = std::min(lo, rate);
    hi = std::max(hi, rate);
    ++samples;
  }
  EXPECT_EQ(samples, 360u);
  EXPECT_NEAR(lo, 0.0, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
  EXPECT_EQ(footer, "visibility,1");
}

TEST_F(Cli, FringesDiagonalStateIsFlat) {
  const auto r = run_cli({"fringes", "0.5", "0.5", "0", "0", "--samples", "16"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto out = parse_report(r.out).outputs;
  ASSERT_EQ(out["samples"].size(), 16u);
  for (const auto& s : out["samples"]) EXPECT_NEAR(s[1].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(out["visibility"].get<double>(), 0.0, 1e-12);
}

TEST_F(Cli, FringesPartialCoherence) {
  const auto r = run_cli({"fringes", "0.64", "0.36", "0.24", "0", "--samples", "1024"});
  ASSERT_EQ(r.exit, kExitOk);
  EXPECT_NEAR(parse_report(r.out).outputs["visibility"].get<double>(), 0.48, 1e-6);
}

TEST_F(Cli, FringesErrors) {
  EXPECT_EQ(run_cli({"fringes", "0.5", "0.5", "0.5", "0", "--samples", "4"}).exit,
            kExitInvalidInput);
  EXPECT_EQ(run_cli({"fringes", "0.5", "0.5", "0.9", "0"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"fringes", "0.5", "0.5", "0.5", "0", "--k", "0"}).exit, kExitInvalidInput);
}

// ---------------------------------------------------------------------------
// qset-check

TEST_F(Cli, QsetCheckTwoSpeciesPrintsWitnesses) {
  const auto r = run_cli({"qset-check", "two_species.yaml"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto out = parse_report(r.out).outputs;
  EXPECT_TRUE(out["all_hold"].get<bool>());
  const json expected = {{"x", "p1"}, {"y", "p2"}};
  const auto& witnesses = out["indist_not_ext_witnesses"];
  EXPECT_NE(std::find(witnesses.begin(), witnesses.end(), expected), witnesses.end());

  const auto csv = run_cli({"qset-check", "two_species.yaml", "--output", "csv"});
  EXPECT_NE(csv.out.find("\"indist_not_ext\",\"p1 p2\",true"), std::string::npos);
}

TEST_F(Cli, QsetCheckParseErrors) {
  const auto dup = run_cli({"qset-check", "duplicate_atom.yaml"});
  EXPECT_EQ(dup.exit, kExitInvalidInput);
  EXPECT_NE(dup.err.find("duplicate_atom.yaml:4:"), std::string::npos);
  EXPECT_EQ(run_cli({"qset-check", "no_such_file.yaml"}).exit, kExitInvalidInput);
}

// ---------------------------------------------------------------------------
// bridge

TEST_F(Cli, BridgeCoherentPair) {
  const auto r = run_cli({"bridge", "coherent_pair.yaml"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto out = parse_report(r.out).outputs;
  EXPECT_TRUE(out["sound"].get<bool>());
  ASSERT_EQ(out["degrees"].size(), 1u);
  EXPECT_EQ(out["degrees"][0], json({{"a", "s1"}, {"b", "s2"}, {"r", 1.0}}));
}

TEST_F(Cli, BridgeThreeSources) {
  const auto r = run_cli({"bridge", "three_sources.yaml"});
  ASSERT_EQ(r.exit, kExitOk);
  const auto out = parse_report(r.out).outputs;
  EXPECT_EQ(out["distances"][0][2].get<double>(), 0.5);
  EXPECT_EQ(out["species"]["s1"], out["species"]["s2"]);
  EXPECT_NE(out["species"]["s1"], out["species"]["s3"]);
}

TEST_F(Cli, BridgeTriangleViolation) {
  const auto r = run_cli({"bridge", "triangle_violation.yaml"});
  EXPECT_EQ(r.exit, kExitUnsoundSpace);
  const auto out = parse_report(r.out).outputs;
  EXPECT_FALSE(out["sound"].get<bool>());
  EXPECT_TRUE(out["degrees"].is_null());
  for (const auto& a : out["axioms"]) {
    if (a["axiom"] == "QM6") {
      EXPECT_FALSE(a["holds"].get<bool>());
      EXPECT_EQ(a["counterexample"], json({"s2", "s1", "s3"}));
    }
  }
  const auto csv = run_cli({"bridge", "triangle_violation.yaml", "--output", "csv"});
  EXPECT_EQ(csv.exit, kExitUnsoundSpace);
  EXPECT_NE(csv.out.find("s2 s1 s3"), std::string::npos);
}

TEST_F(Cli, BridgeMalformedTables) {
  EXPECT_EQ(run_cli({"bridge", "asymmetric.yaml"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"bridge", "three_photons.yaml"}).exit, kExitInvalidInput);
}

TEST_F(Cli, ToleranceFlag) {
  EXPECT_EQ(run_cli({"bridge", "three_sources.yaml", "--tolerance", "0.01"}).exit, kExitOk);
  EXPECT_EQ(run_cli({"bridge", "three_sources.yaml", "--tolerance", "-1"}).exit,
            kExitInvalidInput);
}

// ---------------------------------------------------------------------------
// General contract

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"frobnicate"}).exit, kExitInvalidInput);
  EXPECT_EQ(run_cli({"decompose", "0.5", "0.5", "0", "0", "--output", "xml"}).exit,
            kExitInvalidInput);
  EXPECT_EQ(run_cli({"--help"}).exit, 0);
}

TEST_F(Cli, OutFlagWritesFile) {
  const auto path = fs::temp_directory_path() / "qind_cli_test_report.json";
  const auto r = run_cli({"decompose", "0.64", "0.36", "0.24", "0", "--out", path.string()});
  EXPECT_EQ(r.exit, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  fs::remove(path);
  const auto expected = golden("decompose_064.json");
  // args differ (the --out flag is echoed); compare outputs only
  EXPECT_EQ(parse_report(buf.str()).outputs, parse_report(expected).outputs);
}

TEST_F(Cli, DeterministicOutput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"decompose", "0.3", "0.7", "0.1", "-0.2"},
           {"zwm-sweep", "--alpha", "0.6,0.1", "--beta", "0,0.79", "--steps", "23"},
           {"fringes", "0.3", "0.7", "0.1", "-0.2", "--output", "csv"},
           {"qset-check", "two_species.yaml"},
           {"bridge", "triangle_violation.yaml"}}) {
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  }
}

TEST_F(Cli, ReportsRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"decompose", "0.64", "0.36", "0.24", "0"},
           {"decompose", "1", "0", "0", "0"},
           {"zwm-sweep", "--steps", "5"},
           {"fringes", "0.2", "0.8", "0.3", "0.1", "--samples", "12"},
           {"qset-check", "three_photons.yaml"},
           {"bridge", "three_sources.yaml"}}) {
    const auto text = run_cli(args).out;
    const auto report = parse_report(text);
    EXPECT_EQ(serialize(report), text);
    EXPECT_EQ(parse_report(serialize(report)), report);
    EXPECT_EQ(report.args, args);
  }
}

// ---------------------------------------------------------------------------
// Input helpers

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(0.48), "0.48");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  EXPECT_EQ(format_number(NAN), "nan");
  for (const double v : {0.1 + 0.2, 1.0 / 3.0, 2.0 / 7.0, 1e300, 5e-324}) {
    EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
  }
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5"), std::complex<double>(0.5, 0.0));
  EXPECT_EQ(parse_complex("0.5,-0.25"), std::complex<double>(0.5, -0.25));
  EXPECT_THROW(parse_complex("abc"), InputError);
  EXPECT_THROW(parse_complex("1,"), InputError);
  EXPECT_THROW(parse_complex("1x"), InputError);
}

TEST(ParseUniverse, ReportsPositions) {
  const char* text = "species: [photon]\natoms:\n  - {name: a, kind: quark}\n";
  try {
    parse_universe(text, "u.yaml");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("u.yaml:3:", 0), 0u) << e.what();
  }
  EXPECT_THROW(parse_universe("colours: [red]\n"), InputError);
  EXPECT_THROW(parse_universe("atoms: [{name: a, kind: macro, species: photon}]\n"), InputError);
  EXPECT_THROW(parse_universe("qsets: [{name: x, members: [ghost]}]\n"), InputError);
  EXPECT_THROW(parse_universe("species: [a\n"), InputError);
}

TEST(ParseUniverse, Comments) {
  const auto u = parse_universe(
      "# a universe\nspecies: [photon]  # one kind\natoms:\n  - {name: a, kind: micro, species: "
      "photon}\n");
  EXPECT_EQ(u.term_count(), 1u);
}

TEST(ParsePidTable, ShapeErrors) {
  EXPECT_THROW(parse_pid_table("sources: [a, b]\npid: [[1, 0.5]]\n"), InputError);
  EXPECT_THROW(parse_pid_table("sources: [a, b]\npid: [[1, 0.5], [0.5]]\n"), InputError);
  EXPECT_THROW(parse_pid_table("sources: [a, b]\npid: [[1, x], [0.5, 1]]\n"), InputError);
  EXPECT_THROW(parse_pid_table("pid: [[1]]\n"), InputError);
  const auto t = parse_pid_table("sources: [a, b]\npid: [[1, 0.5], [0.5, 1]]\n");
  EXPECT_EQ(t.pid, (std::vector<double>{1, 0.5, 0.5, 1}));
}

}  // namespace
