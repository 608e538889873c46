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

// Declarative descriptions of the Hamiltonian generators (induction,
// reasoning, recursion, learning, sensing, environment) shared by the
// classical and quantum engines.

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hamagent/error.hpp"
#include "hamagent/tensor.hpp"

namespace hamagent {

enum class GeneratorKind { Induction, Reasoning, Recursion, Learning, Sensing, Environment };
enum class Side { Classical, Quantum };

constexpr std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Induction: return "induction";
    case GeneratorKind::Reasoning: return "reasoning";
    case GeneratorKind::Recursion: return "recursion";
    case GeneratorKind::Learning: return "learning";
    case GeneratorKind::Sensing: return "sensing";
    case GeneratorKind::Environment: return "environment";
  }
  return "?";
}

constexpr std::string_view to_string(Side s) { return s == Side::Classical ? "classical" : "quantum"; }

inline GeneratorKind parseGeneratorKind(std::string_view name) {
  for (auto k : {GeneratorKind::Induction, GeneratorKind::Reasoning, GeneratorKind::Recursion,
                 GeneratorKind::Learning, GeneratorKind::Sensing, GeneratorKind::Environment})
    if (to_string(k) == name) return k;
  fail(ErrorCode::UnknownKind, "no generator kind '" + std::string(name) + "'");
}

/// `q[index] > threshold`, or `q[index] < threshold` when negated.
struct Literal {
  std::size_t index = 0;
  bool negated = false;
  double threshold = 0.5;

  bool holds(double q) const { return negated ? q < threshold : q > threshold; }
};

/// Disjunction of literals; an empty clause is never satisfied.
struct Clause {
  std::vector<Literal> literals;

  bool satisfied(std::span<const double> q) const {
    for (const auto& l : literals)
      if (l.holds(q[l.index])) return true;
    return false;
  }

  std::size_t maxIndex() const {
    std::size_t m = 0;
    for (const auto& l : literals) m = std::max(m, l.index);
    return m;
  }
};

/// Piecewise-constant control pulse active on [start, stop).
struct Pulse {
  double start = 0.0;
  double stop = 0.0;
  double amplitude = 0.0;
};

inline double scheduleValue(const std::vector<Pulse>& pulses, double t) {
  double v = 0.0;
  for (const auto& p : pulses)
    if (t >= p.start && t < p.stop) v += p.amplitude;
  return v;
}

/// Gate sequence, input state and halting projector for a clock construction.
struct HistoryStateSpec {
  std::vector<ComplexMatrix> unitaries;
  ComplexVector initialState;
  ComplexMatrix haltProjector;

  Index dataDim() const { return initialState.size(); }
  std::size_t length() const { return unitaries.size(); }

  void validate() const {
    require(!unitaries.empty(), ErrorCode::InvalidParameter, "history needs at least one gate (L >= 1)");
    const Index d = dataDim();
    require(d >= 1, ErrorCode::InvalidParameter, "empty data space");
    require(std::abs(initialState.norm() - 1.0) <= 1e-10, ErrorCode::InvalidParameter,
            "initial state not normalized");
    for (std::size_t t = 0; t < unitaries.size(); ++t) {
      require(unitaries[t].rows() == d && unitaries[t].cols() == d, ErrorCode::DimensionMismatch,
              "gate " + std::to_string(t) + " does not act on the data space");
      require(isUnitary(unitaries[t]), ErrorCode::NotUnitary, "gate " + std::to_string(t) + " is not unitary");
    }
    require(haltProjector.rows() == d && haltProjector.cols() == d, ErrorCode::DimensionMismatch,
            "halt projector dimension does not match data space");
    require(isProjector(haltProjector), ErrorCode::NotProjector, "halt projector is not a projector");
    require(double(length() + 1) * double(d) <= double(kMaxSolveDim), ErrorCode::DimensionCapExceeded,
            "(L+1) * dataDim exceeds 1024");
  }
};

using ParamValue = std::variant<double, std::vector<double>, std::vector<std::vector<double>>, std::string,
                                ComplexMatrix, std::vector<ComplexMatrix>, std::vector<Clause>,
                                std::vector<Pulse>, HistoryStateSpec>;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Induction;
  Side side = Side::Classical;
  std::map<std::string, ParamValue> params;

  GeneratorSpec& set(const std::string& name, ParamValue v) {
    params.insert_or_assign(name, std::move(v));
    return *this;
  }

  bool has(const std::string& name) const { return params.count(name) != 0; }

  template <class T>
  const T& require(const std::string& name) const {
    auto it = params.find(name);
    hamagent::require(it != params.end(), ErrorCode::MissingParameter,
                      std::string(to_string(kind)) + " generator needs parameter '" + name + "'");
    const T* v = std::get_if<T>(&it->second);
    hamagent::require(v != nullptr, ErrorCode::InvalidParameter, "parameter '" + name + "' has the wrong type");
    return *v;
  }

  template <class T>
  T get(const std::string& name, T fallback) const {
    return has(name) ? require<T>(name) : fallback;
  }
};

}  // namespace hamagent
