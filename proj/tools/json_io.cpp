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

#include "json_io.hpp"

#include <string>

#include "emq/error.hpp"

namespace emq::cli {
namespace {

Json Values(std::span<const double> values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

std::vector<Prevalence> Distributions(const Json& j, const Codeframe& cf) {
  std::vector<Prevalence> out;
  for (const auto& row : j) {
    auto values = row.get<std::vector<double>>();
    ValidatePrevalence(cf, values);
    // Keep the serialized values bit for bit so replays are exact.
    out.push_back(MakePrevalenceUnchecked(cf, std::move(values)));
  }
  return out;
}

}  // namespace

Json ScenarioToJson(const Scenario& s) {
  Json j;
  j["property"] = std::string(PropertyName(s.property));
  j["origin"] = s.origin;
  j["classes"] = s.codeframe.labels();
  j["epsilon"] = s.smoothing.epsilon();
  j["true"] = Json::array();
  for (const auto& p : s.true_dists) j["true"].push_back(Values(p.values()));
  j["pred"] = Json::array();
  for (const auto& p : s.pred_dists) j["pred"].push_back(Values(p.values()));
  j["class_a"] = s.class_a;
  j["class_b"] = s.class_b;
  if (s.property == Property::kIND) j["split"] = s.split;
  return j;
}

Scenario ScenarioFromJson(const Json& j) {
  try {
    Scenario s;
    const auto property = ParseProperty(j.at("property").get<std::string>());
    if (!property) throw Error(ErrorCode::kParseError, "unknown property");
    s.property = *property;
    s.origin = j.value("origin", "");
    s.codeframe = Codeframe(j.at("classes").get<std::vector<std::string>>());
    const double eps = j.at("epsilon").get<double>();
    s.smoothing =
        eps > 0.0 ? SmoothingConfig::FromEpsilon(eps) : SmoothingConfig::None();
    s.true_dists = Distributions(j.at("true"), s.codeframe);
    s.pred_dists = Distributions(j.at("pred"), s.codeframe);
    s.class_a = j.value("class_a", std::size_t{0});
    s.class_b = j.value("class_b", std::size_t{1});
    s.split = j.value("split", std::size_t{0});
    CheckHypothesis(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed scenario: ") + e.what());
  }
}

Json VerdictToJson(const Verdict& v) {
  Json j;
  j["measure"] = std::string(MeasureName(v.measure));
  j["property"] = std::string(PropertyName(v.property));
  j["status"] = v.falsified() ? "Falsified" : "Unfalsified";
  j["budget"] = v.budget;
  j["seed"] = v.seed;
  j["tolerance"] = v.tolerance;
  j["fixed_scenarios_run"] = v.fixed_scenarios_run;
  j["trials_run"] = v.trials_run;
  if (v.counterexample) {
    j["values"] = Values(v.values);
    j["counterexample"] = ScenarioToJson(*v.counterexample);
  }
  return j;
}

Json MatrixToJson(const PropertyMatrix& m) {
  Json j;
  j["budget"] = m.budget;
  j["seed"] = m.seed;
  Json properties = Json::array();
  for (Property p : kMatrixProperties) properties.push_back(std::string(PropertyName(p)));
  j["properties"] = properties;
  Json rows = Json::object();
  for (std::size_t i = 0; i < kMatrixMeasures.size(); ++i) {
    Json row = Json::object();
    for (std::size_t c = 0; c < kMatrixProperties.size(); ++c) {
      row[std::string(PropertyName(kMatrixProperties[c]))] =
          m.cells[i][c].falsified() ? "No" : "Yes";
    }
    rows[std::string(MeasureName(kMatrixMeasures[i]))] = row;
  }
  j["matrix"] = rows;
  Json details = Json::array();
  for (const auto& row : m.cells) {
    for (const auto& cell : row) details.push_back(VerdictToJson(cell));
  }
  j["verdicts"] = details;
  return j;
}

FalsifiedGrid FalsifiedGridOf(const PropertyMatrix& m) {
  FalsifiedGrid grid{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t c = 0; c < grid[i].size(); ++c) grid[i][c] = m.cells[i][c].falsified();
  }
  return grid;
}

FalsifiedGrid FalsifiedGridFromJson(const Json& j) {
  FalsifiedGrid grid{};
  try {
    const auto& rows = j.at("matrix");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& row = rows.at(std::string(MeasureName(kMatrixMeasures[i])));
      for (std::size_t c = 0; c < grid[i].size(); ++c) {
        const auto cell =
            row.at(std::string(PropertyName(kMatrixProperties[c]))).get<std::string>();
        if (cell != "Yes" && cell != "No") {
          throw Error(ErrorCode::kParseError, "matrix cells must be Yes or No");
        }
        grid[i][c] = cell == "No";
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed matrix: ") + e.what());
  }
  return grid;
}

}  // namespace emq::cli
