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

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hamagent/error.hpp"

namespace hamagent {

/// Named real series kept in insertion order (the order is the CSV column order).
class MetricTable {
 public:
  std::vector<double>& series(const std::string& name) {
    auto it = find(name);
    if (it != columns_.end()) return it->second;
    columns_.emplace_back(name, std::vector<double>{});
    return columns_.back().second;
  }

  const std::vector<double>& at(const std::string& name) const {
    auto it = std::find_if(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
    require(it != columns_.end(), ErrorCode::UnknownMetric, "no series named '" + name + "'");
    return it->second;
  }

  bool contains(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
  }

  void push(const std::string& name, double value) { series(name).push_back(value); }

  const std::vector<std::pair<std::string, std::vector<double>>>& columns() const { return columns_; }

 private:
  std::vector<std::pair<std::string, std::vector<double>>>::iterator find(const std::string& name) {
    return std::find_if(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
  }

  std::vector<std::pair<std::string, std::vector<double>>> columns_;
};

/// Time series of engine states plus derived metrics sampled at the same times.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  MetricTable metrics;
};

}  // namespace hamagent
