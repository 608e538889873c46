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

// Scenario configuration: strict JSON in, validated struct out, and a
// canonical serialization whose re-parse reproduces it byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamagent/error.hpp"
#include "hamagent/generator.hpp"

namespace hamagent {

enum class ScenarioKind { QagiToy, CagiToy, Custom };
enum class ReadoutMode { Projective, Nonselective, Dephasing, None };

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::QagiToy: return "qagi-toy";
    case ScenarioKind::CagiToy: return "cagi-toy";
    case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

inline const char* to_string(ReadoutMode m) {
  switch (m) {
    case ReadoutMode::Projective: return "projective";
    case ReadoutMode::Nonselective: return "nonselective";
    case ReadoutMode::Dephasing: return "dephasing";
    case ReadoutMode::None: return "none";
  }
  return "?";
}

/// One weighted Pauli string, factor 0 leftmost, for custom scenarios.
struct PauliTerm {
  std::string name;
  double coefficient = 0.0;
  std::string pauli;
};

inline const std::vector<std::string>& knownScenarioMetrics() {
  static const std::vector<std::string> names = {"energy", "vn_entropy_env", "offdiag_env_abs", "qfi_policy"};
  return names;
}

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::QagiToy;
  double kappa = 0.5;
  double mu = 1.0;
  double g = 0.3;
  double J = 0.7;
  double lambda = 1.0;
  double m = 1.0;
  std::vector<Pulse> eta;
  double dt = 0.01;
  std::uint64_t steps = 1000;
  std::uint64_t substeps = 10;
  ReadoutMode readout = ReadoutMode::Projective;
  std::uint64_t readoutEvery = 10;
  double dephasingFactor = 1.0;
  double smoothing = 0.05;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics = knownScenarioMetrics();
  std::vector<PauliTerm> terms;

  bool wants(const std::string& metric) const {
    return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
  }
};

namespace detail {

[[noreturn]] inline void invariant(const std::string& field, const std::string& what) {
  fail(ErrorCode::InvariantViolation, field + ": " + what);
}

inline void checkKeys(const nlohmann::json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invariant(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(ErrorCode::UnknownKey, "unknown key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
  }
}

inline double readNumber(const nlohmann::json& obj, const char* key, const std::string& field, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) invariant(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invariant(field, "must be finite");
  return x;
}

inline std::uint64_t readCount(const nlohmann::json& obj, const char* key, const std::string& field,
                               std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    invariant(field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::string readString(const nlohmann::json& obj, const char* key, const std::string& field,
                              std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) invariant(field, "expected a string");
  return v.get<std::string>();
}

inline std::pair<std::size_t, std::size_t> lineColumn(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline void validateConfig(const ScenarioConfig& c) {
  if (!(c.dt > 0.0)) invariant("timing.dt", "must be > 0");
  if (c.steps < 1) invariant("timing.steps", "must be >= 1");
  if (c.substeps < 1) invariant("timing.substeps", "must be >= 1");
  if (!(c.m > 0.0)) invariant("couplings.m", "must be > 0");
  if (!(c.lambda >= 0.0)) invariant("couplings.lambda", "must be >= 0");
  if (!(c.smoothing > 0.0)) invariant("smoothing", "must be > 0");
  if (c.readoutEvery < 1) invariant("readout.every", "must be >= 1");
  if (!(c.dephasingFactor >= 0.0)) invariant("readout.dephasing_factor", "must be >= 0");
  for (std::size_t i = 0; i < c.eta.size(); ++i)
    if (!(c.eta[i].start < c.eta[i].stop))
      invariant("couplings.eta[" + std::to_string(i) + "]", "start must be before stop");
  std::set<std::string> seen;
  for (const auto& name : c.metrics) {
    const auto& known = knownScenarioMetrics();
    if (std::find(known.begin(), known.end(), name) == known.end()) invariant("metrics", "unknown metric '" + name + "'");
    if (!seen.insert(name).second) invariant("metrics", "duplicate metric '" + name + "'");
  }
  if (c.scenario == ScenarioKind::Custom) {
    if (c.terms.empty()) invariant("terms", "custom scenarios need at least one term");
    const std::size_t n = c.terms.front().pauli.size();
    if (n < 2 || n > 10) invariant("terms", "Pauli strings need 2..10 factors");
    std::set<std::string> names;
    for (const auto& t : c.terms) {
      if (t.pauli.size() != n) invariant("terms", "all Pauli strings need the same length");
      if (t.pauli.find_first_not_of("IXYZ") != std::string::npos) invariant("terms", "Pauli letters are I, X, Y, Z");
      if (t.name.empty() || t.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") != std::string::npos)
        invariant("terms", "term names use lowercase letters, digits and '_'");
      if (!names.insert(t.name).second) invariant("terms", "duplicate term name '" + t.name + "'");
    }
    if (c.readout != ReadoutMode::None) invariant("readout.mode", "custom scenarios support only 'none'");
  } else if (!c.terms.empty()) {
    invariant("terms", "only custom scenarios take terms");
  }
}

}  // namespace detail

inline ScenarioConfig parseConfigText(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::lineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    fail(ErrorCode::ParseError, "JSON parse error at line " + std::to_string(line) + ", column " +
                                    std::to_string(col));
  }
  ScenarioConfig c;
  detail::checkKeys(root, "",
                    {"scenario", "couplings", "timing", "readout", "smoothing", "seed", "metrics", "terms"});
  if (!root.contains("scenario")) detail::invariant("scenario", "is required");
  const std::string kind = detail::readString(root, "scenario", "scenario", "");
  if (kind == "qagi-toy") {
    c.scenario = ScenarioKind::QagiToy;
  } else if (kind == "cagi-toy") {
    c.scenario = ScenarioKind::CagiToy;
  } else if (kind == "custom") {
    c.scenario = ScenarioKind::Custom;
  } else {
    detail::invariant("scenario", "must be qagi-toy, cagi-toy or custom");
  }

  if (root.contains("couplings")) {
    const auto& k = root.at("couplings");
    detail::checkKeys(k, "couplings", {"kappa", "mu", "g", "J", "lambda", "m", "eta"});
    c.kappa = detail::readNumber(k, "kappa", "couplings.kappa", c.kappa);
    c.mu = detail::readNumber(k, "mu", "couplings.mu", c.mu);
    c.g = detail::readNumber(k, "g", "couplings.g", c.g);
    c.J = detail::readNumber(k, "J", "couplings.J", c.J);
    c.lambda = detail::readNumber(k, "lambda", "couplings.lambda", c.lambda);
    c.m = detail::readNumber(k, "m", "couplings.m", c.m);
    if (k.contains("eta")) {
      const auto& list = k.at("eta");
      if (!list.is_array()) detail::invariant("couplings.eta", "expected an array of pulses");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string f = "couplings.eta[" + std::to_string(i) + "]";
        detail::checkKeys(list[i], f, {"start", "stop", "amplitude"});
        for (const char* req : {"start", "stop", "amplitude"})
          if (!list[i].contains(req)) detail::invariant(f + "." + req, "is required");
        c.eta.push_back({detail::readNumber(list[i], "start", f + ".start", 0),
                         detail::readNumber(list[i], "stop", f + ".stop", 0),
                         detail::readNumber(list[i], "amplitude", f + ".amplitude", 0)});
      }
    }
  }
  if (root.contains("timing")) {
    const auto& t = root.at("timing");
    detail::checkKeys(t, "timing", {"dt", "steps", "substeps"});
    c.dt = detail::readNumber(t, "dt", "timing.dt", c.dt);
    c.steps = detail::readCount(t, "steps", "timing.steps", c.steps);
    c.substeps = detail::readCount(t, "substeps", "timing.substeps", c.substeps);
  }
  if (root.contains("readout")) {
    const auto& r = root.at("readout");
    detail::checkKeys(r, "readout", {"mode", "every", "dephasing_factor"});
    const std::string mode = detail::readString(r, "mode", "readout.mode", "projective");
    if (mode == "projective") {
      c.readout = ReadoutMode::Projective;
    } else if (mode == "nonselective") {
      c.readout = ReadoutMode::Nonselective;
    } else if (mode == "dephasing") {
      c.readout = ReadoutMode::Dephasing;
    } else if (mode == "none") {
      c.readout = ReadoutMode::None;
    } else {
      detail::invariant("readout.mode", "must be projective, nonselective, dephasing or none");
    }
    c.readoutEvery = detail::readCount(r, "every", "readout.every", c.readoutEvery);
    c.dephasingFactor = detail::readNumber(r, "dephasing_factor", "readout.dephasing_factor", c.dephasingFactor);
  } else if (c.scenario == ScenarioKind::Custom) {
    c.readout = ReadoutMode::None;
  }
  c.smoothing = detail::readNumber(root, "smoothing", "smoothing", c.smoothing);
  c.seed = detail::readCount(root, "seed", "seed", c.seed);
  if (root.contains("metrics")) {
    const auto& m = root.at("metrics");
    if (!m.is_array()) detail::invariant("metrics", "expected an array of names");
    c.metrics.clear();
    for (const auto& x : m) {
      if (!x.is_string()) detail::invariant("metrics", "expected metric names");
      c.metrics.push_back(x.get<std::string>());
    }
  }
  if (root.contains("terms")) {
    const auto& ts = root.at("terms");
    if (!ts.is_array()) detail::invariant("terms", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string f = "terms[" + std::to_string(i) + "]";
      detail::checkKeys(ts[i], f, {"name", "coefficient", "pauli"});
      for (const char* req : {"name", "coefficient", "pauli"})
        if (!ts[i].contains(req)) detail::invariant(f + "." + req, "is required");
      c.terms.push_back({detail::readString(ts[i], "name", f + ".name", ""),
                         detail::readNumber(ts[i], "coefficient", f + ".coefficient", 0),
                         detail::readString(ts[i], "pauli", f + ".pauli", "")});
    }
  }
  detail::validateConfig(c);
  return c;
}

inline std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::Io, "cannot read '" + path + "'");
  return ss.str();
}

inline ScenarioConfig parseConfig(const std::string& path) { return parseConfigText(readTextFile(path)); }

/// Canonical form with every field present, in a fixed key order.
inline nlohmann::ordered_json toJson(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(c.scenario);
  auto& k = j["couplings"];
  k["kappa"] = c.kappa;
  k["mu"] = c.mu;
  k["g"] = c.g;
  k["J"] = c.J;
  k["lambda"] = c.lambda;
  k["m"] = c.m;
  k["eta"] = nlohmann::ordered_json::array();
  for (const auto& p : c.eta) k["eta"].push_back({{"start", p.start}, {"stop", p.stop}, {"amplitude", p.amplitude}});
  j["timing"] = {{"dt", c.dt}, {"steps", c.steps}, {"substeps", c.substeps}};
  j["readout"] = {{"mode", to_string(c.readout)}, {"every", c.readoutEvery}, {"dephasing_factor", c.dephasingFactor}};
  j["smoothing"] = c.smoothing;
  j["seed"] = c.seed;
  j["metrics"] = c.metrics;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : c.terms)
    j["terms"].push_back({{"name", t.name}, {"coefficient", t.coefficient}, {"pauli", t.pauli}});
  return j;
}

inline std::string serialize(const ScenarioConfig& c) { return toJson(c).dump(2) + "\n"; }

}  // namespace hamagent
