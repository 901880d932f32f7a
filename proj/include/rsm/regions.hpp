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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rsm/canonical.hpp"

// Two-variable regions |l_i z_i^2 + l_j z_j^2| <= M in canonical coordinates.
namespace rsm::regions {

enum class RegionKind { kElliptic, kHyperbolic, kStripI, kStripJ, kFullPlane };

/// "elliptic", "hyperbolic", "strip_i", "strip_j", "full_plane".
std::string to_string(RegionKind k);

enum class Extremum { kNone, kMinimum, kMaximum };

std::string to_string(Extremum e);

struct ConfidenceRegion {
  Eigen::Index i = 0;  // 0-based eigen indices
  Eigen::Index j = 1;
  double threshold = 0.0;
  RegionKind kind = RegionKind::kFullPlane;
  double lambda_i = 0.0;
  double lambda_j = 0.0;
  std::optional<double> semiaxis_i;  // sqrt(M / |lambda|), absent for a zero eigenvalue
  std::optional<double> semiaxis_j;
  Extremum extremum = Extremum::kNone;  // elliptic only
};

/// Region for two given eigenvalues. Throws DomainError unless M > 0 and finite.
ConfidenceRegion make_region(Eigen::Index i, Eigen::Index j, double lambda_i, double lambda_j,
                             double threshold);

/// Throws SpecError for equal or out-of-range indices, DomainError for M <= 0.
ConfidenceRegion classify_pair(const canonical::CanonicalModel& cm, Eigen::Index i,
                               Eigen::Index j, double threshold);

/// All i < j pairs in order (0,1), (0,2), ..., (k-2,k-1).
std::vector<ConfidenceRegion> classify_all(const canonical::CanonicalModel& cm, double threshold);

/// |l_i z_i^2 + l_j z_j^2| <= M, with rounding slack proportional to the
/// magnitude of the two terms.
bool contains(const ConfidenceRegion& r, double zi, double zj);

/// |l_i z_i^2 + l_j z_j^2|.
double quadratic_level(const ConfidenceRegion& r, double zi, double zj);

/// Parameter window for unbounded kinds: half-length L of an unbounded
/// coordinate and the hyperbolic parameter range t in [-T, T].
struct Window {
  std::optional<double> half_length;
  std::optional<double> t_max;
};

/// L = 3 max(semiaxes) (1 for the full plane) and T = asinh(3).
Window default_window(const ConfidenceRegion& r);

/// Grid sizes. Elliptic: radii x angles. Hyperbolic: radii x parameters, per
/// family. Strip and full plane: first x second coordinate.
struct GridCounts {
  int first = 10;
  int second = 36;
};

using Point = Eigen::Vector2d;

/// Points of the region on a parametric grid. Hyperbolic sampling uses both
/// families (cosh, sinh) and (sinh, cosh) so the whole intersection is
/// covered. Throws ParameterError for non-positive counts or when an
/// unbounded kind lacks a window.
std::vector<Point> sample_region(const ConfidenceRegion& r, GridCounts counts,
                                 const Window& window);

struct Polyline {
  std::string label;
  std::vector<Point> points;
  bool closed = false;
};

inline constexpr int kDefaultCurveSamples = 256;

/// Elliptic: one closed curve. Hyperbolic: four branches. Strip: two lines.
/// Full plane: none.
std::vector<Polyline> boundary_curves(const ConfidenceRegion& r,
                                      int samples_per_curve = kDefaultCurveSamples,
                                      const Window& window = {});

/// "1-2" for the 0-based pair (0, 1).
std::string pair_label(const ConfidenceRegion& r);

/// Rows `pair,i,j,kind,z_i,z_j` with 1-based indices.
void write_points_csv(std::ostream& out, const ConfidenceRegion& r,
                      const std::vector<Point>& points, bool header = true);

/// Standalone SVG drawing of the boundary curves and sample points. Byte
/// output depends only on the inputs.
std::string render_svg(const ConfidenceRegion& r, const std::vector<Polyline>& curves,
                       const std::vector<Point>& points, const Window& window);

}  // namespace rsm::regions
