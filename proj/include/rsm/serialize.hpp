// Copyright 2026 The rsmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rsm/budget.hpp"
#include "rsm/canonical.hpp"
#include "rsm/data_io.hpp"
#include "rsm/regions.hpp"
#include "rsm/regression.hpp"

// JSON documents. Indices inside documents are 1-based; numbers are written
// in shortest round-trip form and NaN as null.
namespace rsm::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json model_to_json(const regression::QuadraticModel& m);

/// Accepts either "interaction_matrix" (B, scaled) or an "interactions" list
/// of {"i", "j", "beta"} regression coefficients, halved off the diagonal.
/// Throws SchemaError on missing or malformed fields.
regression::QuadraticModel model_from_json(const Json& j);

Json fit_report_to_json(const regression::FitReport& r);
Json stepwise_to_json(const regression::StepwiseResult& s,
                      const std::vector<std::string>& names);
Json normality_to_json(const data::NormalityResult& r);
Json transform_to_json(const data::TransformSpec& t);

Json canonical_to_json(const canonical::CanonicalModel& cm);

/// Rebuilds the model from the embedded quadratic model and checks that the
/// stored spectrum matches; throws SchemaError when it does not.
canonical::CanonicalModel canonical_from_json(const Json& j);

Json region_to_json(const regions::ConfidenceRegion& r);
Json magnitude_to_json(const budget::MagnitudeReport& r);
Json crossover_to_json(const budget::CrossoverReport& r);
Json uv_to_json(const budget::UVSystem& uv);
Json trade_to_json(const budget::TradeScenario& s);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// Parses text; throws SchemaError with the parser message on failure.
Json parse(const std::string& text);

}  // namespace rsm::io
