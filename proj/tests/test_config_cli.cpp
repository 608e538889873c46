// Copyright 2026 The hamagent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "hamagent/cli.hpp"

using namespace hamagent;
namespace fs = std::filesystem;

namespace {

const std::string kConfigDir = HAMAGENT_CONFIG_DIR;

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::Io;
}

std::string messageOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& tag) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  fs::path p = fs::temp_directory_path() / ("hamagent-test-" + tag + "-" + std::to_string(stamp));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int runBinary(const std::string& args) {
  const std::string cmd = std::string(HAMAGENT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t lineCount(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Config, MinimalDocumentTakesDefaults) {
  const auto c = parseConfigText(R"({"scenario": "qagi-toy"})");
  EXPECT_EQ(c.scenario, ScenarioKind::QagiToy);
  EXPECT_EQ(c.kappa, 0.5);
  EXPECT_EQ(c.dt, 0.01);
  EXPECT_EQ(c.steps, 1000u);
  EXPECT_EQ(c.readout, ReadoutMode::Projective);
  EXPECT_EQ(c.metrics, knownScenarioMetrics());
}

TEST(Config, NegativeStepIsAnInvariantViolation) {
  const auto f = [] { (void)parseConfigText(R"({"scenario": "qagi-toy", "timing": {"dt": -1}})"); };
  EXPECT_EQ(codeOf(f), ErrorCode::InvariantViolation);
  EXPECT_NE(messageOf(f).find("timing.dt"), std::string::npos);
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_EQ(codeOf([] { (void)parseConfigText(R"({"scenario": "qagi-toy", "colour": 1})"); }), ErrorCode::UnknownKey);
  const auto nested = [] { (void)parseConfigText(R"({"scenario": "qagi-toy", "couplings": {"kapa": 1}})"); };
  EXPECT_EQ(codeOf(nested), ErrorCode::UnknownKey);
  EXPECT_NE(messageOf(nested).find("kapa"), std::string::npos);
}

TEST(Config, ParseErrorsCarryPosition) {
  const auto f = [] { (void)parseConfigText("{\n  \"scenario\": \"qagi-toy\",\n  \"seed\": ,\n}"); };
  EXPECT_EQ(codeOf(f), ErrorCode::ParseError);
  EXPECT_NE(messageOf(f).find("line 3"), std::string::npos) << messageOf(f);
}

TEST(Config, InvariantsAcrossFields) {
  EXPECT_EQ(codeOf([] { (void)parseConfigText(R"({"scenario": "nope"})"); }), ErrorCode::InvariantViolation);
  EXPECT_EQ(codeOf([] { (void)parseConfigText(R"({"scenario": "qagi-toy", "metrics": ["speed"]})"); }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(codeOf([] {
              (void)parseConfigText(
                  R"({"scenario": "custom", "terms": [{"name": "a", "coefficient": 1, "pauli": "ZZ"}],
                      "readout": {"mode": "projective"}})");
            }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(codeOf([] {
              (void)parseConfigText(
                  R"({"scenario": "qagi-toy", "couplings": {"eta": [{"start": 2, "stop": 1, "amplitude": 1}]}})");
            }),
            ErrorCode::InvariantViolation);
}

TEST(Config, SerializationRoundTripsByteIdentically) {
  for (const char* name : {"qagi.json", "cagi.json", "custom.json"}) {
    const auto c = parseConfig(kConfigDir + "/" + name);
    const std::string once = serialize(c);
    EXPECT_EQ(serialize(parseConfigText(once)), once) << name;
  }
}

TEST(Config, MissingFileIsIoError) {
  const auto f = [] { (void)parseConfig("/nonexistent/hamagent.json"); };
  EXPECT_EQ(codeOf(f), ErrorCode::Io);
}

TEST(Cli, ValuesListParsing) {
  EXPECT_EQ(cli::parseValues("0.1, 0.2,0.4"), (std::vector<double>{0.1, 0.2, 0.4}));
  EXPECT_EQ(codeOf([] { (void)cli::parseValues("0.1,abc"); }), ErrorCode::InvariantViolation);
}

TEST(Cli, SimulateWritesTrajectoryAndMeta) {
  const auto out = scratch("simulate");
  ASSERT_EQ(runBinary("simulate --config " + kConfigDir + "/qagi.json --out " + out.string()), 0);
  const std::string csv = slurp(out / "traj.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "t,energy_total,energy_sensing,energy_reasoning,energy_learning_x,energy_learning_zz,"
            "vn_entropy_env,offdiag_env_abs,qfi_policy,event_flag");
  EXPECT_EQ(lineCount(csv), 1002u);
  const auto meta = nlohmann::json::parse(slurp(out / "meta.json"));
  EXPECT_EQ(meta.at("version"), kVersion);
  EXPECT_EQ(meta.at("events").size(), 100u);
  fs::remove_all(out);
}

TEST(Cli, SimulateIsReproducibleAndSeedOverrides) {
  const auto a = scratch("seed-a"), b = scratch("seed-b"), c = scratch("seed-c");
  const std::string cfg = " --config " + kConfigDir + "/qagi.json --out ";
  ASSERT_EQ(runBinary("simulate" + cfg + a.string() + " --seed 5"), 0);
  ASSERT_EQ(runBinary("simulate" + cfg + b.string() + " --seed 5"), 0);
  ASSERT_EQ(runBinary("simulate" + cfg + c.string() + " --seed 6"), 0);
  EXPECT_EQ(slurp(a / "traj.csv"), slurp(b / "traj.csv"));
  EXPECT_EQ(slurp(a / "meta.json"), slurp(b / "meta.json"));
  EXPECT_NE(slurp(a / "meta.json"), slurp(c / "meta.json"));
  for (const auto& p : {a, b, c}) fs::remove_all(p);
}

TEST(Cli, JsonFormat) {
  const auto out = scratch("json");
  ASSERT_EQ(runBinary("simulate --format json --config " + kConfigDir + "/custom.json --out " + out.string()), 0);
  const auto doc = nlohmann::json::parse(slurp(out / "traj.json"));
  EXPECT_TRUE(doc.contains("t"));
  fs::remove_all(out);
}

TEST(Cli, SweepWritesSummary) {
  const auto out = scratch("sweep");
  ASSERT_EQ(runBinary("sweep --config " + kConfigDir + "/qagi.json --param kappa --values 0.6,0.2,0.4 --jobs 2 --out " +
                      out.string()),
            0);
  const std::string summary = slurp(out / "summary.csv");
  EXPECT_EQ(lineCount(summary), 4u);
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "param,value,fitted_rate,r_squared,final_offdiag_env_abs,final_energy_total");
  EXPECT_EQ(summary.substr(summary.find('\n') + 1, 10), "kappa,0.2,");
  EXPECT_TRUE(fs::exists(out / "kappa=0.4" / "traj.csv"));
  fs::remove_all(out);
}

TEST(Cli, ReportWritesCommutationMatrix) {
  const auto out = scratch("report");
  ASSERT_EQ(runBinary("report --config " + kConfigDir + "/cagi.json --out " + out.string()), 0);
  const std::string csv = slurp(out / "commutation.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "term,copy,logic,learning,actuator");
  fs::remove_all(out);
}

TEST(Cli, ExitCodes) {
  const auto out = scratch("codes");
  EXPECT_EQ(runBinary("simulate --config /nonexistent.json --out " + out.string()), 4);
  const fs::path bad = out / "bad.json";
  std::ofstream(bad) << R"({"scenario": "qagi-toy", "timing": {"dt": 0}})";
  EXPECT_EQ(runBinary("simulate --config " + bad.string() + " --out " + out.string()), 2);
  EXPECT_EQ(runBinary("launch"), 2);
  EXPECT_EQ(runBinary("sweep --config " + kConfigDir + "/qagi.json --param nope --values 1 --out " + out.string()), 2);
  fs::remove_all(out);
}
