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

#include <Eigen/Dense>

#include "rsm/budget.hpp"
#include "rsm/canonical.hpp"
#include "rsm/regions.hpp"

// Plain-text reports with fixed number formatting.
namespace rsm::report {

/// "0.666881 x3 - 0.235096 x4"; entries below 1e-9 of the largest are dropped.
std::string linear_form(const Eigen::VectorXd& coefficients, const std::vector<std::string>& names,
                        int significant = 6);

/// Spectrum, eigenvectors, stationary point and the canonical equation, with
/// paired eigenvalues written as lambda (z_i^2 - z_j^2).
std::string canonical_summary(const canonical::CanonicalModel& cm);

std::string regions_summary(const std::vector<regions::ConfidenceRegion>& rs);

std::string budget_text(const canonical::CanonicalModel& cm, const budget::MagnitudeReport& mr,
                        const budget::CrossoverReport& cr);

std::string trade_text(const canonical::CanonicalModel& cm, const budget::UVSystem& uv,
                       const budget::TradeScenario& s);

}  // namespace rsm::report
