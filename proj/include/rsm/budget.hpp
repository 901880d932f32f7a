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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rsm/canonical.hpp"

namespace rsm::budget {

struct DirectionBound {
  Eigen::Index index = 0;  // eigen index
  double lambda = 0.0;
  double bound = 0.0;  // sqrt(M / |lambda|)
};

struct NullBound {
  Eigen::Index index = 0;
  double coefficient = 0.0;    // c_k
  std::optional<double> bound;  // M / |c_k|; absent (infinite) when c_k = 0
  std::optional<double> freedom_ratio;  // bound / max quadratic bound
  bool free = false;
};

struct MagnitudeReport {
  double threshold = 0.0;
  double free_factor = 10.0;
  std::vector<DirectionBound> quadratic;
  std::vector<NullBound> null;
  double max_quadratic_bound = 0.0;
};

inline constexpr double kDefaultFreeFactor = 10.0;

/// Throws DomainError for M <= 0, NoNullDirection when B has full rank and
/// NullDirectionInactive when every null coefficient is zero.
MagnitudeReport magnitude_report(const canonical::CanonicalModel& cm, double threshold,
                                 double free_factor = kDefaultFreeFactor);

struct CrossoverEntry {
  Eigen::Index index = 0;
  double lambda = 0.0;
  double m_star = 0.0;  // c^2 / |lambda|
};

struct CrossoverReport {
  Eigen::Index null_index = 0;  // null direction used (largest |c|)
  double coefficient = 0.0;
  std::vector<CrossoverEntry> entries;
  double m_star_min = 0.0;
  double m_star_max = 0.0;
  double shifted_intercept = 0.0;
  /// M* / |Y0'| for the min and max entries.
  double relative_min = 0.0;
  double relative_max = 0.0;
  /// Same ratios against a caller-supplied typical response level.
  std::optional<double> reference_level;
  std::optional<double> reference_relative_min;
  std::optional<double> reference_relative_max;
};

/// Decimal order nearest to log10(value), e.g. -12 for 1.1e-12.
int order_of_magnitude(double value);

CrossoverReport crossover_threshold(const canonical::CanonicalModel& cm,
                                    std::optional<double> reference_level = std::nullopt);

enum class Factor { kU, kV };

std::string to_string(Factor f);

/// One eigenvalue pair (lambda, -lambda): lambda (z+^2 - z-^2) = 4 lambda u v
/// with u = (V+ + V-)'Xh / 2 and v = (V+ - V-)'Xh / 2, or the other way round,
/// so that u is the sparser of the two.
struct UVPair {
  Eigen::Index plus_index = 0;
  Eigen::Index minus_index = 0;
  double lambda = 0.0;
  double coefficient = 0.0;  // 4 lambda
  Eigen::VectorXd u;
  Eigen::VectorXd v;

  const Eigen::VectorXd& factor(Factor f) const { return f == Factor::kU ? u : v; }
};

struct UVSystem {
  std::vector<UVPair> pairs;  // by decreasing lambda
  std::vector<Eigen::Index> null_directions;
  Eigen::MatrixXd null_vectors;  // one column per null direction
};

inline constexpr double kPairTolerance = 1e-8;

/// Throws NotPaired when some nonzero eigenvalue has no negated partner
/// within kPairTolerance relative to max |lambda|.
UVSystem uv_system(const canonical::CanonicalModel& cm);

/// sum over pairs of 4 lambda (u'Xh)(v'Xh) at shifted coordinates Xh = X + h.
double uv_quadratic(const UVSystem& uv, const Eigen::VectorXd& shifted);

struct PinSpec {
  std::size_t pair = 0;  // 0-based index into UVSystem::pairs
  Factor factor = Factor::kU;
};

struct ResidualConstraint {
  std::size_t pair = 0;
  double lambda = 0.0;
  double product_bound = 0.0;  // M / (4 lambda)
  Factor driven_factor = Factor::kU;
  double driven_per_unit = 0.0;  // factor value per unit of the driving variable
  double driven_value = 0.0;     // driven_per_unit * delta
  Factor bounded_factor = Factor::kV;
  Eigen::VectorXd bounded_form;
  double bound = 0.0;  // product_bound / |driven_value|
  bool coupled = false;  // both factors move along the trade line
};

struct FreeCombination {
  std::string name;  // "v1", "z3", ...
  Eigen::VectorXd form;
};

struct TradeScenario {
  double threshold = 0.0;
  PinSpec pin;
  Eigen::VectorXd pinned_form;
  Eigen::Index drive = 0;  // 0-based variable index
  Eigen::Index offset_variable = 0;
  double delta = 0.0;
  double ratio = 0.0;   // offset per unit of drive
  double offset = 0.0;  // ratio * delta
  Eigen::VectorXd direction;  // shifted-coordinate move for the trade
  std::vector<ResidualConstraint> residuals;
  std::vector<FreeCombination> free;
};

/// Pins one factor of one product to zero and moves `drive` by `delta`,
/// offsetting with the variable whose pinned-factor entry is largest (or the
/// given one). Throws NoTradePossible when the pinned factor has fewer than two
/// nonzero entries, SpecError when the drive or offset variable is absent
/// from it or delta is zero, DomainError for M <= 0.
TradeScenario trade_analysis(const canonical::CanonicalModel& cm, const UVSystem& uv,
                             double threshold, PinSpec pin, Eigen::Index drive, double delta,
                             std::optional<Eigen::Index> offset_variable = std::nullopt);

/// Shifted-coordinate point with the trade applied and residual `r`'s bounded
/// form exactly at its bound.
Eigen::VectorXd worked_example(const TradeScenario& s, std::size_t residual = 0);

}  // namespace rsm::budget
