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

// Prints one PASS/FAIL line per acceptance property; exits nonzero on any failure.

#include <iostream>

#include "hamagent/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& c : hamagent::acceptance::criteria()) {
    const auto r = hamagent::acceptance::run(c);
    std::cout << r.line() << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all acceptance properties passed" : std::to_string(failed) + " failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
