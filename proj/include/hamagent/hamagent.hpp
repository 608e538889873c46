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

#include "hamagent/acceptance.hpp"
#include "hamagent/channel.hpp"
#include "hamagent/classical.hpp"
#include "hamagent/cli.hpp"
#include "hamagent/config.hpp"
#include "hamagent/error.hpp"
#include "hamagent/generator.hpp"
#include "hamagent/infogeo.hpp"
#include "hamagent/io.hpp"
#include "hamagent/quantum.hpp"
#include "hamagent/rng.hpp"
#include "hamagent/scenarios.hpp"
#include "hamagent/tensor.hpp"
#include "hamagent/trajectory.hpp"
#include "hamagent/version.hpp"
