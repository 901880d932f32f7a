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

#include "rsm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "rsm/error.hpp"

namespace rsm::linalg {
namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Two-sided rotation zeroing a(p, q); the same rotation is accumulated in v.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& entries, double symmetry_tolerance)
    : symmetry_tolerance_(symmetry_tolerance) {
  if (entries.rows() < 1 || entries.rows() != entries.cols())
    throw InvalidInput("symmetric matrix must be square with order >= 1, got " +
                       std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  entries_ = 0.5 * (entries + entries.transpose());
  asymmetry_ = (entries - entries.transpose()).cwiseAbs().maxCoeff();
}

bool SymmetricMatrix::was_symmetric() const noexcept {
  const double scale = entries_.cwiseAbs().maxCoeff();
  return asymmetry_ <= symmetry_tolerance_ * std::max(scale, std::numeric_limits<double>::min());
}

Eigen::Index EigenSystem::null_count() const {
  return static_cast<Eigen::Index>((eigenvalues.array() == 0.0).count());
}

void orient(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return;
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return;
  // Entries within rounding of the peak count as ties; the lowest index wins.
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-12)) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

EigenSystem jacobi_eigen(const SymmetricMatrix& m, double zero_tolerance) {
  const Eigen::Index n = m.order();
  if (n > kMaxJacobiOrder)
    throw InvalidInput("jacobi_eigen supports order <= " + std::to_string(kMaxJacobiOrder) +
                       ", got " + std::to_string(n));
  if (!m.entries().allFinite()) throw InvalidInput("matrix has non-finite entries");
  if (!(zero_tolerance >= 0.0) || !std::isfinite(zero_tolerance))
    throw InvalidInput("zero_tolerance must be finite and non-negative");

  Eigen::MatrixXd a = m.entries();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  // Sweep down to rounding level; once below `accept`, stop as soon as a
  // sweep no longer shrinks the off-diagonal mass.
  const double target = std::numeric_limits<double>::epsilon() * a.norm();
  const double accept = 1e-12 * a.norm();

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweeps == kMaxJacobiSweeps)
      throw ConvergenceFailure("no convergence after " + std::to_string(kMaxJacobiSweeps) +
                                   " sweeps, off-diagonal norm " + std::to_string(off),
                               off);
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
    const double next = off_diagonal_norm(a);
    if (next <= accept && next >= off) break;
    off = next;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  EigenSystem es;
  es.zero_tolerance = zero_tolerance;
  es.sweeps = sweeps;
  es.eigenvalues.resize(n);
  es.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.eigenvalues(k) = a(order[k], order[k]);
    es.eigenvectors.col(k) = v.col(order[k]);
    orient(es.eigenvectors.col(k));
  }

  const double peak = n > 0 ? es.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (std::abs(es.eigenvalues(k)) <= zero_tolerance * peak) es.eigenvalues(k) = 0.0;
  return es;
}

SymmetricMatrix principal_value_reconstruct(const EigenSystem& es) {
  const Eigen::MatrixXd& v = es.eigenvectors;
  return SymmetricMatrix(v * es.eigenvalues.asDiagonal() * v.transpose());
}

SymmetricMatrix generalized_inverse(const EigenSystem& es) {
  const Eigen::Index n = es.order();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (es.is_null(k)) continue;
    const auto vk = es.eigenvectors.col(k);
    g.noalias() += (1.0 / es.eigenvalues(k)) * vk * vk.transpose();
  }
  return SymmetricMatrix(g);
}

SymmetricMatrix StructuredParams::assemble() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  m(0, 2) = m(2, 0) = a;
  m(1, 2) = m(2, 1) = b;
  m(1, 3) = m(3, 1) = c;
  m(2, 4) = m(4, 2) = d;
  m(3, 4) = m(4, 3) = e;
  return SymmetricMatrix(m);
}

StructuredParams StructuredParams::from_matrix(const SymmetricMatrix& m, double tolerance) {
  if (m.order() != 5) throw DegenerateStructure("structured form needs a 5x5 matrix");
  StructuredParams p{m(0, 2), m(1, 2), m(1, 3), m(2, 4), m(3, 4)};
  const Eigen::MatrixXd rest = m.entries() - p.assemble().entries();
  const double scale = m.entries().cwiseAbs().maxCoeff();
  if (rest.cwiseAbs().maxCoeff() > tolerance * scale)
    throw DegenerateStructure("matrix has entries outside the structured sparsity pattern");
  return p;
}

std::array<double, 5> structured_eigenvalues(const StructuredParams& p) {
  for (double x : {p.a, p.b, p.c, p.d, p.e})
    if (!std::isfinite(x)) throw InvalidInput("structured parameters must be finite");

  // With G = C'C for the 3x2 coupling block C, s^2 = tr G and p^2 = det G, so
  // s^4 - 4 p^2 = (G11 - G22)^2 + 4 G12^2, which avoids the cancellation of
  // the textbook difference.
  const double g11 = p.a * p.a + p.b * p.b + p.d * p.d;
  const double g22 = p.c * p.c + p.e * p.e;
  const double g12 = p.b * p.c + p.d * p.e;
  const double s2 = p.s2();
  const double disc = (g11 - g22) * (g11 - g22) + 4.0 * g12 * g12;

  const double big = 0.5 * (s2 + std::sqrt(disc));
  // l1^2 l2^2 = p^2; dividing avoids s^2 - sqrt(disc).
  const double small = big > 0.0 ? p.p2() / big : 0.0;
  const double l1 = std::sqrt(big);
  const double l2 = std::sqrt(std::max(small, 0.0));
  return {l1, l2, 0.0, -l2, -l1};
}

Eigen::VectorXd structured_null_vector(const StructuredParams& p) {
  if (p.a == 0.0 || p.c == 0.0)
    throw DegenerateStructure("closed-form null vector needs a != 0 and c != 0");
  Eigen::VectorXd v(5);
  v << (p.b * p.e - p.c * p.d) / (p.a * p.c), -p.e / p.c, 0.0, 0.0, 1.0;
  v /= v.norm();
  orient(v);
  return v;
}

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

}  // namespace rsm::linalg
