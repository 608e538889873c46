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

// Artifact writers: trajectory CSV/JSON, metadata sidecar, commutation and
// sweep summary tables. Numbers are locale-free, shortest round-trip form.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hamagent/config.hpp"
#include "hamagent/error.hpp"
#include "hamagent/scenarios.hpp"

namespace hamagent {

inline std::string formatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string trajectoryCsv(const TrajectoryRecord& rec) {
  rec.check();
  std::string out = "t";
  for (const auto& [name, series] : rec.metrics.columns()) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    out += formatNumber(rec.times[i]);
    for (const auto& [name, series] : rec.metrics.columns()) {
      out += ",";
      out += name == "event_flag" ? std::to_string(int(series[i])) : formatNumber(series[i]);
    }
    out += "\n";
  }
  return out;
}

inline nlohmann::ordered_json commutationJson(const CommutationMatrix& c) {
  nlohmann::ordered_json j;
  j["side"] = c.side == Side::Quantum ? "quantum" : "classical";
  j["measure"] = c.side == Side::Quantum ? "frobenius_commutator" : "abs_poisson_bracket";
  j["names"] = c.names;
  j["values"] = nlohmann::ordered_json::array();
  for (Index i = 0; i < c.values.rows(); ++i) {
    std::vector<double> row;
    for (Index k = 0; k < c.values.cols(); ++k) row.push_back(c.values(i, k));
    j["values"].push_back(row);
  }
  return j;
}

inline std::string metaJson(const TrajectoryRecord& rec) {
  nlohmann::ordered_json j;
  j["version"] = rec.version;
  j["units"] = {{"time", "1/energy (hbar = 1)"}, {"entropy", "nats"}, {"energy", "dimensionless"}};
  j["config"] = toJson(rec.config);
  j["events"] = nlohmann::ordered_json::array();
  for (const auto& e : rec.events)
    j["events"].push_back({{"step", e.step},
                           {"time", e.time},
                           {"kind", e.kind},
                           {"outcome", e.outcome},
                           {"probability", e.probability},
                           {"energy_before", e.energyBefore},
                           {"energy_after", e.energyAfter},
                           {"seed", e.seed}});
  j["commutation"] = commutationJson(rec.commutation);
  return j.dump(2) + "\n";
}

inline std::string trajectoryJson(const TrajectoryRecord& rec) {
  rec.check();
  nlohmann::ordered_json j;
  j["t"] = rec.times;
  for (const auto& [name, series] : rec.metrics.columns()) j[name] = series;
  return j.dump(2) + "\n";
}

inline std::string commutationCsv(const CommutationMatrix& c) {
  std::string out = "term";
  for (const auto& n : c.names) out += "," + n;
  out += "\n";
  for (Index i = 0; i < c.values.rows(); ++i) {
    out += c.names[std::size_t(i)];
    for (Index k = 0; k < c.values.cols(); ++k) out += "," + formatNumber(c.values(i, k));
    out += "\n";
  }
  return out;
}

inline void ensureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec && std::filesystem::is_directory(dir), ErrorCode::Io, "cannot create directory '" + dir.string() + "'");
}

inline void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorCode::Io, "write to '" + path.string() + "' failed");
}

enum class OutputFormat { Csv, Json };

/// traj.csv (or traj.json) plus meta.json in `dir`.
inline void writeRecord(const TrajectoryRecord& rec, const std::filesystem::path& dir, OutputFormat format) {
  ensureDirectory(dir);
  if (format == OutputFormat::Csv) {
    writeTextFile(dir / "traj.csv", trajectoryCsv(rec));
  } else {
    writeTextFile(dir / "traj.json", trajectoryJson(rec));
  }
  writeTextFile(dir / "meta.json", metaJson(rec));
}

}  // namespace hamagent
