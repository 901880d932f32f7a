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

#include <array>

#include <Eigen/Dense>

namespace rsm::linalg {

inline constexpr double kDefaultZeroTolerance = 1e-8;
inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr Eigen::Index kMaxJacobiOrder = 64;

/// Dense real symmetric matrix. Construction averages the input with its
/// transpose so that entries(i, j) == entries(j, i) holds bit-for-bit; the
/// largest discrepancy removed is kept in `asymmetry()`.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Eigen::MatrixXd& entries, double symmetry_tolerance = 1e-12);

  Eigen::Index order() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// max |m(i,j) - m(j,i)| of the raw input.
  double asymmetry() const noexcept { return asymmetry_; }
  double symmetry_tolerance() const noexcept { return symmetry_tolerance_; }
  /// Whether the raw input was symmetric up to the declared tolerance
  /// (relative to its largest entry).
  bool was_symmetric() const noexcept;

 private:
  Eigen::MatrixXd entries_;
  double asymmetry_ = 0.0;
  double symmetry_tolerance_ = 1e-12;
};

/// Eigenvalues sorted descending, eigenvector k in column k.
///
/// Orientation: in every eigenvector the entry of largest magnitude is
/// positive (first such index on ties). Eigenvalues within
/// zero_tolerance * max|lambda| of zero are stored as exactly 0.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double zero_tolerance = kDefaultZeroTolerance;
  int sweeps = 0;

  Eigen::Index order() const noexcept { return eigenvalues.size(); }
  bool is_null(Eigen::Index k) const { return eigenvalues(k) == 0.0; }
  Eigen::Index null_count() const;
};

/// Cyclic Jacobi rotations. Throws InvalidInput for non-finite entries or
/// order above kMaxJacobiOrder, ConvergenceFailure after kMaxJacobiSweeps.
EigenSystem jacobi_eigen(const SymmetricMatrix& m,
                         double zero_tolerance = kDefaultZeroTolerance);

/// Sum over k of lambda_k V_k V_k'.
SymmetricMatrix principal_value_reconstruct(const EigenSystem& es);

/// Spectral generalized inverse: sum of lambda_k^-1 V_k V_k' over the
/// eigenvalues that are not snapped to zero.
SymmetricMatrix generalized_inverse(const EigenSystem& es);

/// The five free entries of the 5x5 interaction pattern
///
///   [ 0 0 a 0 0 ]
///   [ 0 0 b c 0 ]
///   [ a b 0 0 d ]
///   [ 0 c 0 0 e ]
///   [ 0 0 d e 0 ]
///
/// which couples {x3, x4} only to {x1, x2, x5}. Such a matrix has spectrum
/// (l1, l2, 0, -l2, -l1).
struct StructuredParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;

  double s2() const noexcept { return a * a + b * b + c * c + d * d + e * e; }
  double p2() const noexcept {
    const double m = b * e - c * d;
    return a * a * (c * c + e * e) + m * m;
  }

  SymmetricMatrix assemble() const;
  /// Reads a, b, c, d, e back from a 5x5 matrix; throws DegenerateStructure
  /// when entries outside the pattern exceed `tolerance` * max|entry|.
  static StructuredParams from_matrix(const SymmetricMatrix& m, double tolerance = 1e-12);
};

/// (l1, l2, 0, -l2, -l1) from the closed form. Throws InvalidInput on
/// non-finite parameters.
std::array<double, 5> structured_eigenvalues(const StructuredParams& p);

/// Unit null vector ((be - cd)/(ac), -e/c, 0, 0, 1) / norm, oriented by the
/// EigenSystem convention. Throws DegenerateStructure when a or c is zero.
Eigen::VectorXd structured_null_vector(const StructuredParams& p);

/// Applies the orientation convention in place.
void orient(Eigen::Ref<Eigen::VectorXd> v);

/// ||a - b||_F / max(||b||_F, tiny).
double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace rsm::linalg
