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

#pragma once

// Command-line front end: simulate, sweep, report, verify. Data goes to
// files, diagnostics to the error stream. Exit codes: 0 success, 1 failed
// verification, 2 configuration or usage error, 3 numeric error, 4 I/O error.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hamagent/acceptance.hpp"
#include "hamagent/config.hpp"
#include "hamagent/error.hpp"
#include "hamagent/io.hpp"
#include "hamagent/scenarios.hpp"

namespace hamagent::cli {

enum class Command { Simulate, Sweep, Report, Verify };

struct Invocation {
  Command command = Command::Simulate;
  std::string configPath;
  std::string outDir = ".";
  std::optional<std::uint64_t> seed;
  OutputFormat format = OutputFormat::Csv;
  std::size_t jobs = 1;
  std::string param;
  std::vector<double> values;
};

inline int exitCode(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Numeric: return 3;
    case ErrorCategory::Io: return 4;
  }
  return 3;
}

inline std::vector<double> parseValues(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
      fail(ErrorCode::InvariantViolation, "--values: cannot read '" + item + "' as a number");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

/// Applies one sweep coordinate to a config.
inline void setParameter(ScenarioConfig& c, const std::string& name, double v) {
  if (name == "kappa") {
    c.kappa = v;
  } else if (name == "mu") {
    c.mu = v;
  } else if (name == "g") {
    c.g = v;
  } else if (name == "J") {
    c.J = v;
  } else if (name == "lambda") {
    c.lambda = v;
  } else if (name == "m") {
    c.m = v;
  } else if (name == "dt") {
    c.dt = v;
  } else if (name == "smoothing") {
    c.smoothing = v;
  } else if (name == "dephasing_factor") {
    c.dephasingFactor = v;
  } else if (name == "seed") {
    if (!(v >= 0.0 && v == std::floor(v))) fail(ErrorCode::InvariantViolation, "seed values must be integers >= 0");
    c.seed = std::uint64_t(v);
  } else {
    fail(ErrorCode::InvariantViolation, "--param: unknown sweep parameter '" + name + "'");
  }
}

inline ScenarioConfig loadConfig(const Invocation& inv) {
  if (inv.configPath.empty()) fail(ErrorCode::InvariantViolation, "--config is required");
  if (!std::filesystem::exists(inv.configPath)) fail(ErrorCode::Io, "config '" + inv.configPath + "' not found");
  ScenarioConfig cfg = parseConfig(inv.configPath);
  if (inv.seed) cfg.seed = *inv.seed;
  return cfg;
}

struct SweepRow {
  double value = 0.0;
  double rate = NAN;
  double rSquared = NAN;
  double finalCoherence = NAN;
  double finalEnergy = NAN;
};

inline std::string sweepSummaryCsv(const std::string& param, std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
  std::string out = "param,value,fitted_rate,r_squared,final_offdiag_env_abs,final_energy_total\n";
  for (const auto& r : rows)
    out += param + "," + formatNumber(r.value) + "," + formatNumber(r.rate) + "," + formatNumber(r.rSquared) + "," +
           formatNumber(r.finalCoherence) + "," + formatNumber(r.finalEnergy) + "\n";
  return out;
}

inline int runSweep(const Invocation& inv) {
  const ScenarioConfig base = loadConfig(inv);
  if (inv.param.empty()) fail(ErrorCode::InvariantViolation, "--param is required for sweep");
  if (inv.values.empty()) fail(ErrorCode::InvariantViolation, "--values is required for sweep");
  if (inv.jobs < 1) fail(ErrorCode::InvariantViolation, "--jobs must be >= 1");
  std::vector<ScenarioConfig> points;
  for (double v : inv.values) {
    ScenarioConfig c = base;
    setParameter(c, inv.param, v);
    detail::validateConfig(c);
    points.push_back(c);
  }
  const std::filesystem::path out(inv.outDir);
  ensureDirectory(out);

  std::vector<SweepRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const auto rec = runScenario(points[i]);
        writeRecord(rec, out / (inv.param + "=" + formatNumber(inv.values[i])), inv.format);
        SweepRow& row = rows[i];
        row.value = inv.values[i];
        if (rec.metrics.contains("offdiag_env_abs")) {
          row.finalCoherence = rec.metrics.at("offdiag_env_abs").back();
          try {
            const RateFit fit = fitDecoherenceRate(rec);
            row.rate = fit.rate;
            row.rSquared = fit.rSquared;
          } catch (const Error&) {
            // No usable decay series (for example a constant zero); leave the fit empty.
          }
        }
        if (rec.metrics.contains("energy_total")) row.finalEnergy = rec.metrics.at("energy_total").back();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min(inv.jobs, points.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  writeTextFile(out / "summary.csv", sweepSummaryCsv(inv.param, rows));
  return 0;
}

inline int runCommand(const Invocation& inv, std::ostream& out) {
  switch (inv.command) {
    case Command::Simulate: {
      const auto rec = runScenario(loadConfig(inv));
      writeRecord(rec, inv.outDir, inv.format);
      return 0;
    }
    case Command::Sweep: return runSweep(inv);
    case Command::Report: {
      const std::filesystem::path dir(inv.outDir);
      ensureDirectory(dir);
      writeTextFile(dir / "commutation.csv", commutationCsv(scenarioCommutation(loadConfig(inv))));
      return 0;
    }
    case Command::Verify: {
      bool all = true;
      for (const auto& c : acceptance::criteria()) {
        const auto r = acceptance::run(c);
        out << r.line() << "\n" << std::flush;
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
  }
  return 3;
}

/// Parses argv and runs the command; never throws.
inline int runCli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hamiltonian agent simulator"};
  app.require_subcommand(1);
  Invocation inv;
  std::string format = "csv";
  std::string values;
  std::uint64_t seed = 0;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--config", inv.configPath, "scenario configuration (JSON)")->required();
    sub->add_option("--out", inv.outDir, "output directory");
    sub->add_option("--seed", seed, "override the configured seed");
  };
  auto* simulate = app.add_subcommand("simulate", "run one scenario and write traj.csv and meta.json");
  addCommon(simulate);
  simulate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* sweep = app.add_subcommand("sweep", "run a one-parameter grid and write summary.csv");
  addCommon(sweep);
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--param", inv.param, "parameter to vary")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--jobs", inv.jobs, "concurrent grid points")->check(CLI::PositiveNumber);
  auto* report = app.add_subcommand("report", "write the commutation matrix of the scenario terms");
  addCommon(report);
  app.add_subcommand("verify", "run the acceptance properties");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      inv.command = Command::Simulate;
    } else if (sweep->parsed()) {
      inv.command = Command::Sweep;
      inv.values = parseValues(values);
    } else if (report->parsed()) {
      inv.command = Command::Report;
    } else {
      inv.command = Command::Verify;
    }
    if (app.get_subcommands().front()->count("--seed") > 0) inv.seed = seed;
    inv.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    return runCommand(inv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCode(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hamagent::cli
