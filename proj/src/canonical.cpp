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

#include "rsm/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsm/error.hpp"

namespace rsm::canonical {

using regression::pow10;

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kMinimum: return "minimum";
    case Classification::kMaximum: return "maximum";
    case Classification::kSaddle: return "saddle";
    case Classification::kDegenerateMixed: return "degenerate-mixed";
    case Classification::kNoQuadraticPart: return "degenerate (no quadratic part)";
  }
  return "?";
}

Classification classify_spectrum(const Eigen::VectorXd& eigenvalues) {
  int pos = 0, neg = 0, zero = 0;
  for (double l : eigenvalues) {
    if (l > 0.0) ++pos;
    else if (l < 0.0) ++neg;
    else ++zero;
  }
  if (pos == 0 && neg == 0) return Classification::kNoQuadraticPart;
  if (zero > 0) return Classification::kDegenerateMixed;
  if (neg == 0) return Classification::kMinimum;
  if (pos == 0) return Classification::kMaximum;
  return Classification::kSaddle;
}

std::optional<Eigen::VectorXd> CanonicalModel::stationary_point() const {
  if (classification_ == Classification::kNoQuadraticPart) return std::nullopt;
  return Eigen::VectorXd(-shift_);
}

CanonicalModel decompose(const regression::QuadraticModel& m, double zero_tolerance) {
  CanonicalModel cm(m);
  cm.eigen_ = linalg::jacobi_eigen(m.interaction_scaled(), zero_tolerance);

  const double qscale = pow10(m.scales().interaction);
  const Eigen::VectorXd beta = m.linear();
  cm.eigenvalues_ = cm.eigen_.eigenvalues / qscale;
  cm.ginv_ = linalg::generalized_inverse(cm.eigen_).entries() * qscale;
  cm.shift_ = 0.5 * cm.ginv_ * beta;
  cm.quadratic_offset_ = 0.25 * beta.dot(cm.ginv_ * beta);
  cm.shifted_intercept_ = m.intercept() - cm.quadratic_offset_;
  cm.classification_ = classify_spectrum(cm.eigenvalues_);

  const Eigen::MatrixXd& v = cm.eigen_.eigenvectors;
  for (Eigen::Index k = 0; k < cm.eigen_.order(); ++k)
    if (cm.eigen_.is_null(k)) cm.null_.push_back(k);
  cm.null_coef_.resize(static_cast<Eigen::Index>(cm.null_.size()));
  for (std::size_t n = 0; n < cm.null_.size(); ++n)
    cm.null_coef_(static_cast<Eigen::Index>(n)) = beta.dot(v.col(cm.null_[n]));

  // B X_s + beta/2 off the null space; B taken from the snapped spectrum.
  const Eigen::VectorXd xs = -cm.shift_;
  Eigen::VectorXd grad = v * (cm.eigenvalues_.asDiagonal() * (v.transpose() * xs)) + 0.5 * beta;
  for (Eigen::Index k : cm.null_) grad -= v.col(k).dot(grad) * v.col(k);
  const double bnorm = beta.norm();
  cm.gradient_residual_ = bnorm > 0.0 ? grad.norm() / bnorm : grad.norm();
  return cm;
}

ParallelSplit parallel_component(const CanonicalModel& cm, const Eigen::VectorXd& x,
                                 std::optional<Eigen::Index> null_index) {
  if (x.size() != cm.dimension()) throw SpecError("point dimension does not match the model");
  const auto& nulls = cm.null_directions();
  if (nulls.empty()) throw NoNullDirection("the interaction matrix has full rank");
  Eigen::Index k;
  if (null_index) {
    if (std::find(nulls.begin(), nulls.end(), *null_index) == nulls.end())
      throw SpecError("eigen index " + std::to_string(*null_index) + " is not a null direction");
    k = *null_index;
  } else {
    if (nulls.size() > 1) throw SpecError("several null directions; name one");
    k = nulls.front();
  }
  const auto vk = cm.eigenvectors().col(k);
  ParallelSplit s;
  s.z = vk.dot(x);
  s.parallel = s.z * vk;
  s.perpendicular = x - s.parallel;
  return s;
}

CanonicalPoint to_canonical(const CanonicalModel& cm, const Eigen::VectorXd& x) {
  if (x.size() != cm.dimension()) throw SpecError("point dimension does not match the model");
  return {cm.eigenvectors().transpose() * (x + cm.shift()), Frame::kCanonical};
}

Eigen::VectorXd from_canonical(const CanonicalModel& cm, const CanonicalPoint& p) {
  if (p.frame != Frame::kCanonical) throw SpecError("point is not in the canonical frame");
  if (p.z.size() != cm.dimension()) throw SpecError("point dimension does not match the model");
  return cm.eigenvectors() * p.z - cm.shift();
}

double evaluate_canonical(const CanonicalModel& cm, const Eigen::VectorXd& z) {
  if (z.size() != cm.dimension()) throw SpecError("point dimension does not match the model");
  double y = cm.shifted_intercept();
  const auto& nulls = cm.null_directions();
  for (std::size_t n = 0; n < nulls.size(); ++n)
    y += cm.null_coefficients()(static_cast<Eigen::Index>(n)) * z(nulls[n]);
  for (Eigen::Index k = 0; k < z.size(); ++k) y += cm.eigenvalues()(k) * z(k) * z(k);
  return y;
}

double canonical_magnitude(const CanonicalModel& cm, const Eigen::VectorXd& z) {
  double m = std::abs(cm.model().intercept()) + std::abs(cm.quadratic_offset());
  const auto& nulls = cm.null_directions();
  for (std::size_t n = 0; n < nulls.size(); ++n)
    m += std::abs(cm.null_coefficients()(static_cast<Eigen::Index>(n)) * z(nulls[n]));
  for (Eigen::Index k = 0; k < z.size(); ++k) m += std::abs(cm.eigenvalues()(k) * z(k) * z(k));
  return m;
}

double evaluate(const CanonicalModel& cm, const Eigen::VectorXd& x, Frame frame) {
  if (frame == Frame::kOriginal) return cm.model().evaluate(x);
  return evaluate_canonical(cm, to_canonical(cm, x).z);
}

}  // namespace rsm::canonical
