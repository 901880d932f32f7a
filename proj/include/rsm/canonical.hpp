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

#include "rsm/linalg.hpp"
#include "rsm/regression.hpp"

namespace rsm::canonical {

enum class Classification {
  kMinimum,
  kMaximum,
  kSaddle,
  kDegenerateMixed,
  kNoQuadraticPart,
};

/// "minimum", "maximum", "saddle", "degenerate-mixed",
/// "degenerate (no quadratic part)".
std::string to_string(Classification c);

/// Sign pattern of an already zero-snapped spectrum.
Classification classify_spectrum(const Eigen::VectorXd& eigenvalues);

enum class Frame { kOriginal, kCanonical };

struct CanonicalPoint {
  Eigen::VectorXd z;
  Frame frame = Frame::kCanonical;
};

/// Y = Y0' + sum_null c_k z_k + sum lambda_k z_k^2 with z = V'(X + h).
///
/// The eigenanalysis runs on the scaled interaction matrix; every accessor
/// below returns physical units.
class CanonicalModel {
 public:
  const regression::QuadraticModel& model() const noexcept { return model_; }
  /// Eigen-system of the scaled interaction matrix.
  const linalg::EigenSystem& scaled_eigen() const noexcept { return eigen_; }

  Eigen::Index dimension() const noexcept { return model_.dimension(); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigen_.eigenvectors; }
  const Eigen::MatrixXd& generalized_inverse() const noexcept { return ginv_; }
  /// h = B^- beta / 2.
  const Eigen::VectorXd& shift() const noexcept { return shift_; }
  /// -h; nullopt when the model has no quadratic part.
  std::optional<Eigen::VectorXd> stationary_point() const;
  /// beta' B^- beta / 4.
  double quadratic_offset() const noexcept { return quadratic_offset_; }
  /// beta0 - beta' B^- beta / 4.
  double shifted_intercept() const noexcept { return shifted_intercept_; }
  /// Eigen indices with a snapped-zero eigenvalue, ascending.
  const std::vector<Eigen::Index>& null_directions() const noexcept { return null_; }
  /// beta' V_k for each entry of null_directions().
  const Eigen::VectorXd& null_coefficients() const noexcept { return null_coef_; }
  Classification classification() const noexcept { return classification_; }
  double zero_tolerance() const noexcept { return eigen_.zero_tolerance; }

  /// Norm of B X_s + beta/2 with its null-space part removed, relative to
  /// ||beta||. Zero up to rounding.
  double gradient_residual() const noexcept { return gradient_residual_; }

 private:
  friend CanonicalModel decompose(const regression::QuadraticModel&, double);
  explicit CanonicalModel(regression::QuadraticModel m) : model_(std::move(m)) {}

  regression::QuadraticModel model_;
  linalg::EigenSystem eigen_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd ginv_;
  Eigen::VectorXd shift_;
  double quadratic_offset_ = 0.0;
  double shifted_intercept_ = 0.0;
  std::vector<Eigen::Index> null_;
  Eigen::VectorXd null_coef_;
  Classification classification_ = Classification::kNoQuadraticPart;
  double gradient_residual_ = 0.0;
};

CanonicalModel decompose(const regression::QuadraticModel& m,
                         double zero_tolerance = linalg::kDefaultZeroTolerance);

struct ParallelSplit {
  double z = 0.0;
  Eigen::VectorXd parallel;
  Eigen::VectorXd perpendicular;
};

/// Split of X along one null direction (the only one by default).
/// Throws NoNullDirection when there is none, SpecError when several exist
/// and none is named or the named index is not null.
ParallelSplit parallel_component(const CanonicalModel& cm, const Eigen::VectorXd& x,
                                 std::optional<Eigen::Index> null_index = std::nullopt);

CanonicalPoint to_canonical(const CanonicalModel& cm, const Eigen::VectorXd& x);
Eigen::VectorXd from_canonical(const CanonicalModel& cm, const CanonicalPoint& p);

/// Response at original-frame point x, computed with the raw polynomial or
/// with the canonical form.
double evaluate(const CanonicalModel& cm, const Eigen::VectorXd& x, Frame frame);

/// Canonical form at a canonical point.
double evaluate_canonical(const CanonicalModel& cm, const Eigen::VectorXd& z);

/// sum |term| of the canonical form at z; rounding scale for comparisons.
double canonical_magnitude(const CanonicalModel& cm, const Eigen::VectorXd& z);

}  // namespace rsm::canonical
