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

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rsm/data_io.hpp"
#include "rsm/linalg.hpp"

namespace rsm::regression {

enum class TermKind { kIntercept = 0, kLinear = 1, kInteraction = 2, kQuadratic = 3 };

/// One column of a second-order design. Indices are 0-based predictor
/// positions; interactions keep i < j, quadratics use i == j.
struct TermSpec {
  TermKind kind = TermKind::kIntercept;
  int i = -1;
  int j = -1;

  static TermSpec intercept() { return {}; }
  static TermSpec linear(int i) { return {TermKind::kLinear, i, -1}; }
  static TermSpec interaction(int i, int j);
  static TermSpec quadratic(int i) { return {TermKind::kQuadratic, i, i}; }

  /// "intercept", "x1", "x1*x3", "x2^2" using the given predictor names.
  std::string label(const std::vector<std::string>& names) const;

  /// Selection order for tie-breaks: intercept, linear terms, then
  /// second-order terms by (i, j).
  std::strong_ordering operator<=>(const TermSpec& other) const;
  bool operator==(const TermSpec& other) const = default;
};

/// Intercept, k linear terms, then every (i <= j) product: 1 + k + k(k+1)/2.
/// Quadratic self-terms can be left out.
std::vector<TermSpec> full_second_order_pool(int predictors, bool include_quadratic = true);

struct Design {
  Eigen::MatrixXd matrix;
  std::vector<TermSpec> terms;
  std::vector<std::string> labels;
};

/// Columns in term order. Throws SpecError on duplicate or out-of-range terms.
Design build_design(const data::Dataset& d, std::span<const TermSpec> terms);

struct FitReport {
  std::vector<TermSpec> terms;
  std::vector<std::string> labels;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;  // NaN when there are no residual degrees of freedom
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  Eigen::VectorXd residuals;
  double sse = 0.0;
  double sst = 0.0;  // centred when the design has an intercept
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  double f_p_value = 1.0;
  std::size_t n = 0;
  int df_model = 0;
  int df_resid = 0;

  bool has_intercept() const;
  /// Coefficient of a term, or nullopt if the term is not in the fit.
  std::optional<double> coefficient(const TermSpec& t) const;
};

inline constexpr double kRankTolerance = 1e-10;

/// Least squares through Householder QR on norm-equilibrated columns.
/// Throws UnderdeterminedError when rows < columns and RankError naming the
/// first column whose residual against the preceding ones is below
/// kRankTolerance times the largest column norm.
FitReport ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
                  std::vector<TermSpec> terms = {}, std::vector<std::string> labels = {});

struct CandidateScore {
  TermSpec term;
  double f_stat = 0.0;
  double p_value = 1.0;
  bool admissible = true;
  std::string note;  // why a candidate was skipped
};

struct StepRecord {
  int step = 0;
  std::optional<TermSpec> entered;
  double f_stat = 0.0;
  double p_value = 0.0;
  std::vector<CandidateScore> candidates;
  FitReport fit;
  std::string note;
};

struct StepwiseResult {
  std::vector<TermSpec> selected;
  std::optional<FitReport> final_fit;
  std::vector<StepRecord> trail;
  std::string stop_reason;
};

struct StepwiseOptions {
  double alpha_enter = 0.01;
  bool hierarchy = false;
  /// A fit whose residual sum of squares is below this fraction of the total
  /// sum of squares is treated as exact and ends the search.
  double exact_fit_ratio = 1e-20;
};

/// Forward selection by partial F. An intercept in the pool is entered
/// unconditionally first. Each step enters the admissible candidate with the
/// largest partial F (equivalently the smallest entry p-value, since every
/// candidate adds one degree of freedom); ties go to the earlier term.
StepwiseResult stepwise_forward(const data::Dataset& d, const Eigen::VectorXd& response,
                                std::span<const TermSpec> pool, const StepwiseOptions& options);

/// Decimal exponents: stored coefficient = physical coefficient * 10^exponent.
struct Scales {
  int linear = 0;
  int interaction = 0;
};

/// Exponent that brings max|value| into [1, 10); 0 for an all-zero input.
int auto_exponent(std::span<const double> values);

/// beta0 + beta'x + x'Bx with B symmetric, B_ij = beta_ij / 2 off the
/// diagonal. Coefficients are stored in scaled units; the intercept shares
/// the linear exponent.
class QuadraticModel {
 public:
  QuadraticModel(double intercept_scaled, Eigen::VectorXd linear_scaled,
                 linalg::SymmetricMatrix interaction_scaled, Scales scales,
                 std::vector<std::string> names);

  Eigen::Index dimension() const noexcept { return linear_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Scales& scales() const noexcept { return scales_; }

  double intercept_scaled() const noexcept { return intercept_; }
  const Eigen::VectorXd& linear_scaled() const noexcept { return linear_; }
  const linalg::SymmetricMatrix& interaction_scaled() const noexcept { return interaction_; }

  double intercept() const;
  Eigen::VectorXd linear() const;
  Eigen::MatrixXd interaction() const;

  /// Matrix form beta0 + beta'x + x'Bx.
  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Term-by-term sum, undoing the halving rule.
  double evaluate_terms(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Sum of |term| over every term of evaluate_terms; the floating-point
  /// magnitude scale of an evaluation.
  double term_magnitude(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  bool has_quadratic_part() const;

 private:
  double intercept_;
  Eigen::VectorXd linear_;
  linalg::SymmetricMatrix interaction_;
  Scales scales_;
  std::vector<std::string> names_;
};

/// Builds the model from a fit holding an intercept plus linear, interaction
/// and quadratic terms. Missing terms are zero. Throws SpecError otherwise.
QuadraticModel assemble_quadratic_model(const FitReport& report, std::vector<std::string> names,
                                        Scales scales);

/// Same, picking each exponent with auto_exponent.
QuadraticModel assemble_quadratic_model(const FitReport& report, std::vector<std::string> names);

/// 10^e as a double, exact for |e| <= 22.
double pow10(int e);

}  // namespace rsm::regression
