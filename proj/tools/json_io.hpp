/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// JSON forms of scenarios, verdicts and the property matrix.

#ifndef EMQ_TOOLS_JSON_IO_HPP_
#define EMQ_TOOLS_JSON_IO_HPP_

#include <array>

#include "emq/axioms.hpp"
#include "json.hpp"

namespace emq::cli {

using Json = nlohmann::ordered_json;

Json ScenarioToJson(const Scenario& s);
// Rebuilds a scenario, validating every distribution and the premises.
Scenario ScenarioFromJson(const Json& j);

Json VerdictToJson(const Verdict& v);

Json MatrixToJson(const PropertyMatrix& m);

// The Yes/No grid of a serialized matrix: true where a cell is falsified.
using FalsifiedGrid = std::array<std::array<bool, 8>, 9>;
FalsifiedGrid FalsifiedGridOf(const PropertyMatrix& m);
FalsifiedGrid FalsifiedGridFromJson(const Json& j);

}  // namespace emq::cli

#endif  // EMQ_TOOLS_JSON_IO_HPP_
