// Copyright 2026 The idec Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "scenario.hpp"

namespace idec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kScenarios = IDEC_SCENARIO_DIR;

json dephasing_doc() {
    return json::parse(R"({
        "name": "unit",
        "hamiltonian": [[0, 0], [0, 1]],
        "initial_state": "plus_state",
        "noise": {"gamma": 0.5, "sigma_theta": {"type": "linear", "c": 1.0},
                  "correlation_g": {"type": "uniform"}},
        "grid": {"t_start": 0, "t_end": 4, "n_steps": 10},
        "montecarlo": {"n_traj": 2000, "seed": 5}
    })");
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(::testing::TempDir()) / ("idec_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    EXPECT_NE(it, header.end()) << name;
    return static_cast<std::size_t>(it - header.begin());
}

std::string config_error_field(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

TEST(Config, ErrorsCarryFieldPaths) {
    json doc = dephasing_doc();
    doc["noise"]["correlation_g"]["type"] = "lorentzian";
    EXPECT_EQ(config_error_field(doc), "$.noise.correlation_g.type");

    doc = dephasing_doc();
    doc.erase("hamiltonian");
    EXPECT_EQ(config_error_field(doc), "$.hamiltonian");

    doc = dephasing_doc();
    doc["grid"]["n_steps"] = -3;
    EXPECT_EQ(config_error_field(doc), "$.grid.n_steps");

    doc = dephasing_doc();
    doc["hamiltonian"] = json::parse("[[0, 1], [0]]");
    EXPECT_NE(config_error_field(doc).find("$.hamiltonian"), std::string::npos);
}

TEST(Config, PrepareRejectsInvalidPhysics) {
    json doc = dephasing_doc();
    doc["hamiltonian"] = json::parse("[[0, [1, 1]], [[1, 1], 1]]");
    EXPECT_THROW(prepare(parse_scenario(doc)), std::exception);

    doc = dephasing_doc();
    doc["initial_state"] = json::parse("[[1.5, 0], [0, -0.5]]");
    EXPECT_THROW(prepare(parse_scenario(doc)), std::exception);
}

TEST(Config, RoundTripIsIdentity) {
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        const Scenario a = load_scenario(entry.path());
        const Scenario b = parse_scenario(to_json(a));
        EXPECT_TRUE(equivalent(a, b)) << entry.path();
        EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    }
}

TEST(Config, StatePresets) {
    json doc = dephasing_doc();
    doc["hamiltonian"] = json::parse("[[1, 0, 0], [0, 0, 0], [0, 0, 0]]");
    doc["initial_state"] = "ground";
    const Prepared ground = prepare(parse_scenario(doc));
    EXPECT_NEAR(ground.rho0.matrix()(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(ground.rho0.matrix()(0, 0).real(), 0.0, 1e-15);
    doc["initial_state"] = "maximally_mixed";
    EXPECT_TRUE(prepare(parse_scenario(doc)).rho0.matrix().isApprox(Matrix::Identity(3, 3) / 3.0));
}

TEST(Evolve, DephasingCoherenceClosedForm) {
    const fs::path dir = fresh_dir("evolve");
    std::ostringstream log;
    ASSERT_EQ(cmd_evolve(parse_scenario(dephasing_doc()), RunOptions{dir}, log), kOk) << log.str();
    const auto rows = read_csv(dir / "analytic.csv");
    ASSERT_EQ(rows.size(), 12u);
    const std::vector<std::string> expect_head{"t", "rho_re_0_0", "rho_im_0_0", "rho_re_0_1", "rho_im_0_1"};
    EXPECT_TRUE(std::equal(expect_head.begin(), expect_head.end(), rows[0].begin()));
    const std::size_t c = column(rows[0], "coherence_l1");
    const std::size_t e = column(rows[0], "energy");
    const std::size_t p = column(rows[0], "trace");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][0]);
        EXPECT_NEAR(std::stod(rows[i][c]), std::exp(-0.25 * t), 1e-12);
        EXPECT_NEAR(std::stod(rows[i][e]), 0.5, 1e-12);
        EXPECT_NEAR(std::stod(rows[i][p]), 1.0, 1e-12);
    }
    EXPECT_TRUE(log.str().empty());
    EXPECT_FALSE(fs::exists(dir / "analytic.csv.tmp"));
}

TEST(Evolve, ZeroNoiseKeepsPurityAndEnergy) {
    json doc = dephasing_doc();
    doc["noise"]["sigma_theta"] = json::parse(R"({"type": "constant", "c": 0})");
    const fs::path dir = fresh_dir("evolve_quiet");
    std::ostringstream log;
    ASSERT_EQ(cmd_evolve(parse_scenario(doc), RunOptions{dir}, log), kOk);
    const auto rows = read_csv(dir / "analytic.csv");
    const std::size_t pu = column(rows[0], "purity");
    const std::size_t en = column(rows[0], "energy");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][pu]), 1.0, 1e-14);
        EXPECT_NEAR(std::stod(rows[i][en]), 0.5, 1e-14);
    }
}

TEST(Evolve, DissipativeScenarioWarns) {
    const fs::path dir = fresh_dir("evolve_dissipative");
    std::ostringstream log;
    const Scenario s = load_scenario(kScenarios / "dissipative_direct_lambda.json");
    ASSERT_EQ(cmd_evolve(s, RunOptions{dir}, log), kOk);
    EXPECT_NE(log.str().find("warning: DissipativeTraceLoss"), std::string::npos);
    const auto rows = read_csv(dir / "analytic.csv");
    const std::size_t tr = column(rows[0], "trace");
    EXPECT_DOUBLE_EQ(std::stod(rows[1][tr]), 1.0);
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][tr]), 1.0);
}

TEST(Integrate, WritesStatesAndCpReport) {
    const fs::path dir = fresh_dir("integrate");
    std::ostringstream log;
    ASSERT_EQ(cmd_integrate(parse_scenario(dephasing_doc()), "phase", RunOptions{dir}, log), kOk) << log.str();
    const json report = json::parse(slurp(dir / "cp_report.json"));
    EXPECT_EQ(report["generator"], "phase-destroying");
    EXPECT_TRUE(report["completely_positive"].get<bool>());
    EXPECT_EQ(report["checkpoints"].size(), 11u);
    const auto rows = read_csv(dir / "me.csv");
    const std::size_t c = column(rows[0], "coherence_l1");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][c]), std::exp(-0.25 * std::stod(rows[i][0])), 1e-8);
    }
    EXPECT_EQ(cmd_integrate(parse_scenario(dephasing_doc()), "bogus", RunOptions{dir}, log), kConfigError);
}

TEST(Sample, SingleTrajectoryFlagsInsufficientStatistics) {
    json doc = dephasing_doc();
    doc["montecarlo"]["n_traj"] = 1;
    const fs::path dir = fresh_dir("sample_one");
    std::ostringstream log;
    ASSERT_EQ(cmd_sample(parse_scenario(doc), RunOptions{dir}, log), kOk);
    const json cmp = json::parse(slurp(dir / "comparison.json"));
    EXPECT_FALSE(cmp.contains("pass"));
    EXPECT_TRUE(cmp["insufficient_statistics"].get<bool>());
    const auto rows = read_csv(dir / "mc_stderr.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (std::size_t j = 1; j < rows[i].size(); ++j) EXPECT_EQ(std::stod(rows[i][j]), 0.0);
    }
}

TEST(Sample, PassesAndRerunsByteIdentically) {
    const Scenario s = parse_scenario(dephasing_doc());
    const fs::path a = fresh_dir("sample_a"), b = fresh_dir("sample_b");
    std::ostringstream log;
    ASSERT_EQ(cmd_sample(s, RunOptions{a}, log), kOk) << log.str();
    ASSERT_EQ(cmd_sample(s, RunOptions{b}, log), kOk);
    EXPECT_TRUE(json::parse(slurp(a / "comparison.json"))["pass"].get<bool>());
    for (const char* f : {"mc_mean.csv", "mc_stderr.csv", "comparison.json"}) {
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    RunOptions other{fresh_dir("sample_c"), std::uint64_t{6}};
    ASSERT_EQ(cmd_sample(s, other, log), kOk);
    EXPECT_NE(slurp(a / "mc_mean.csv"), slurp(*other.out_dir / "mc_mean.csv"));
}

TEST(Sample, DirectLambdaIsAConfigError) {
    std::ostringstream log;
    const Scenario s = load_scenario(kScenarios / "dissipative_direct_lambda.json");
    EXPECT_EQ(cmd_sample(s, RunOptions{fresh_dir("sample_direct")}, log), kConfigError);
}

TEST(Moments, ZeroNoiseAndEqualLevelsGiveZero) {
    json doc = dephasing_doc();
    std::ostringstream log;
    const fs::path dir = fresh_dir("moments_equal");
    ASSERT_EQ(cmd_moments(parse_scenario(doc), 0.7, 0.7, 4, RunOptions{dir}, log), kOk) << log.str();
    auto rows = read_csv(dir / "moments.csv");
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(std::stod(rows[i][1]), 0.0);

    doc["noise"]["sigma_theta"] = json::parse(R"({"type": "constant", "c": 0})");
    ASSERT_EQ(cmd_moments(parse_scenario(doc), 1.0, -1.0, 4, RunOptions{dir}, log), kOk);
    rows = read_csv(dir / "moments.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "empirical", "predicted", "stderr"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(std::stod(rows[i][1]), 0.0);
        EXPECT_EQ(std::stod(rows[i][2]), 0.0);
    }
}

TEST(Moments, NonTrivialPairWithinThreeStandardErrors) {
    std::ostringstream log;
    const fs::path dir = fresh_dir("moments");
    ASSERT_EQ(cmd_moments(parse_scenario(dephasing_doc()), 1.0, 0.0, 4, RunOptions{dir}, log), kOk) << log.str();
    const auto rows = read_csv(dir / "moments.csv");
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1][0], "2");
    EXPECT_DOUBLE_EQ(std::stod(rows[1][2]), 2.0);
    EXPECT_EQ(std::stod(rows[2][2]), 0.0);
    EXPECT_DOUBLE_EQ(std::stod(rows[3][2]), 12.0);
}

TEST(Verify, ListAndSuite) {
    std::ostringstream out;
    VerifyOptions o;
    o.scenario_dir = kScenarios;
    o.list_only = true;
    EXPECT_EQ(cmd_verify(o, out), kOk);
    for (const auto& name : verify_check_names()) EXPECT_NE(out.str().find(name), std::string::npos);
}

TEST(Output, FormatDouble) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(std::exp(-0.5))), std::exp(-0.5));
}

} // namespace
} // namespace idec::cli
