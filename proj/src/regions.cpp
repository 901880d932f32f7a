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

#include "rsm/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rsm/error.hpp"
#include "rsm/numfmt.hpp"

namespace rsm::regions {
namespace {

constexpr double kContainsSlack = 1e-12;
constexpr double kPi = std::numbers::pi;

double linspace(double lo, double hi, int count, int k) {
  if (count == 1) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

double require_length(const Window& w) {
  if (!w.half_length) throw ParameterError("unbounded region needs a half-length window");
  if (!(*w.half_length > 0.0) || !std::isfinite(*w.half_length))
    throw ParameterError("window half-length must be positive");
  return *w.half_length;
}

double require_t(const Window& w) {
  if (!w.t_max) throw ParameterError("hyperbolic region needs a parameter window");
  if (!(*w.t_max > 0.0) || !std::isfinite(*w.t_max))
    throw ParameterError("parameter window must be positive");
  return *w.t_max;
}

// Plot half-extents along (z_i, z_j).
std::pair<double, double> extents(const ConfidenceRegion& r, const Window& w) {
  switch (r.kind) {
    case RegionKind::kElliptic: return {1.15 * *r.semiaxis_i, 1.15 * *r.semiaxis_j};
    case RegionKind::kHyperbolic: {
      const double c = std::cosh(require_t(w));
      return {1.15 * c * *r.semiaxis_i, 1.15 * c * *r.semiaxis_j};
    }
    case RegionKind::kStripI: return {1.5 * *r.semiaxis_i, require_length(w)};
    case RegionKind::kStripJ: return {require_length(w), 1.5 * *r.semiaxis_j};
    case RegionKind::kFullPlane: {
      const double l = require_length(w);
      return {l, l};
    }
  }
  return {1.0, 1.0};
}

}  // namespace

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::kElliptic: return "elliptic";
    case RegionKind::kHyperbolic: return "hyperbolic";
    case RegionKind::kStripI: return "strip_i";
    case RegionKind::kStripJ: return "strip_j";
    case RegionKind::kFullPlane: return "full_plane";
  }
  return "?";
}

std::string to_string(Extremum e) {
  switch (e) {
    case Extremum::kNone: return "none";
    case Extremum::kMinimum: return "minimum";
    case Extremum::kMaximum: return "maximum";
  }
  return "?";
}

ConfidenceRegion make_region(Eigen::Index i, Eigen::Index j, double lambda_i, double lambda_j,
                             double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw DomainError("threshold M must be positive and finite, got " + fmt::shortest(threshold));
  if (!std::isfinite(lambda_i) || !std::isfinite(lambda_j))
    throw InvalidInput("eigenvalues must be finite");
  ConfidenceRegion r;
  r.i = i;
  r.j = j;
  r.threshold = threshold;
  r.lambda_i = lambda_i;
  r.lambda_j = lambda_j;
  if (lambda_i != 0.0) r.semiaxis_i = std::sqrt(threshold / std::abs(lambda_i));
  if (lambda_j != 0.0) r.semiaxis_j = std::sqrt(threshold / std::abs(lambda_j));

  const double product = lambda_i * lambda_j;
  if (product > 0.0) {
    r.kind = RegionKind::kElliptic;
    r.extremum = lambda_i > 0.0 ? Extremum::kMinimum : Extremum::kMaximum;
  } else if (product < 0.0) {
    r.kind = RegionKind::kHyperbolic;
  } else if (lambda_i != 0.0) {
    r.kind = RegionKind::kStripI;
  } else if (lambda_j != 0.0) {
    r.kind = RegionKind::kStripJ;
  } else {
    r.kind = RegionKind::kFullPlane;
  }
  return r;
}

ConfidenceRegion classify_pair(const canonical::CanonicalModel& cm, Eigen::Index i,
                               Eigen::Index j, double threshold) {
  const Eigen::Index k = cm.dimension();
  if (i < 0 || j < 0 || i >= k || j >= k)
    throw SpecError("pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                    ") is outside 1.." + std::to_string(k));
  if (i == j) throw SpecError("pair indices must differ");
  return make_region(i, j, cm.eigenvalues()(i), cm.eigenvalues()(j), threshold);
}

std::vector<ConfidenceRegion> classify_all(const canonical::CanonicalModel& cm, double threshold) {
  std::vector<ConfidenceRegion> out;
  for (Eigen::Index i = 0; i < cm.dimension(); ++i)
    for (Eigen::Index j = i + 1; j < cm.dimension(); ++j)
      out.push_back(classify_pair(cm, i, j, threshold));
  return out;
}

double quadratic_level(const ConfidenceRegion& r, double zi, double zj) {
  return std::abs(r.lambda_i * zi * zi + r.lambda_j * zj * zj);
}

bool contains(const ConfidenceRegion& r, double zi, double zj) {
  if (r.kind == RegionKind::kFullPlane) return true;
  const double scale = std::abs(r.lambda_i) * zi * zi + std::abs(r.lambda_j) * zj * zj;
  return quadratic_level(r, zi, zj) <= r.threshold + kContainsSlack * scale;
}

Window default_window(const ConfidenceRegion& r) {
  double largest = 0.0;
  if (r.semiaxis_i) largest = std::max(largest, *r.semiaxis_i);
  if (r.semiaxis_j) largest = std::max(largest, *r.semiaxis_j);
  Window w;
  w.half_length = largest > 0.0 ? 3.0 * largest : 1.0;
  w.t_max = std::asinh(3.0);
  return w;
}

std::vector<Point> sample_region(const ConfidenceRegion& r, GridCounts counts,
                                 const Window& window) {
  if (counts.first < 1 || counts.second < 1) throw ParameterError("grid counts must be positive");
  std::vector<Point> out;
  switch (r.kind) {
    case RegionKind::kElliptic: {
      const double ai = *r.semiaxis_i, aj = *r.semiaxis_j;
      for (int a = 0; a < counts.first; ++a) {
        const double rho = counts.first == 1 ? 1.0 : linspace(0.0, 1.0, counts.first, a);
        for (int b = 0; b < counts.second; ++b) {
          const double theta = 2.0 * kPi * b / counts.second;
          out.emplace_back(ai * rho * std::cos(theta), aj * rho * std::sin(theta));
        }
      }
      break;
    }
    case RegionKind::kHyperbolic: {
      const double t_max = require_t(window);
      const double ai = *r.semiaxis_i, aj = *r.semiaxis_j;
      for (int family = 0; family < 2; ++family) {
        for (int a = 0; a < counts.first; ++a) {
          const double rho = linspace(-1.0, 1.0, counts.first, a);
          for (int b = 0; b < counts.second; ++b) {
            const double t = linspace(-t_max, t_max, counts.second, b);
            const double ch = std::cosh(t), sh = std::sinh(t);
            if (family == 0) out.emplace_back(ai * rho * ch, aj * rho * sh);
            else out.emplace_back(ai * rho * sh, aj * rho * ch);
          }
        }
      }
      break;
    }
    case RegionKind::kStripI:
    case RegionKind::kStripJ: {
      const double l = require_length(window);
      const bool along_i = r.kind == RegionKind::kStripI;
      const double bound = along_i ? *r.semiaxis_i : *r.semiaxis_j;
      for (int a = 0; a < counts.first; ++a) {
        const double bounded = linspace(-bound, bound, counts.first, a);
        for (int b = 0; b < counts.second; ++b) {
          const double free = linspace(-l, l, counts.second, b);
          if (along_i) out.emplace_back(bounded, free);
          else out.emplace_back(free, bounded);
        }
      }
      break;
    }
    case RegionKind::kFullPlane: {
      const double l = require_length(window);
      for (int a = 0; a < counts.first; ++a)
        for (int b = 0; b < counts.second; ++b)
          out.emplace_back(linspace(-l, l, counts.first, a), linspace(-l, l, counts.second, b));
      break;
    }
  }
  return out;
}

std::vector<Polyline> boundary_curves(const ConfidenceRegion& r, int samples_per_curve,
                                      const Window& window) {
  if (samples_per_curve < 2) throw ParameterError("a curve needs at least two samples");
  const int n = samples_per_curve;
  std::vector<Polyline> out;
  switch (r.kind) {
    case RegionKind::kElliptic: {
      Polyline p{"ellipse", {}, true};
      for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * kPi * k / n;
        p.points.emplace_back(*r.semiaxis_i * std::cos(theta), *r.semiaxis_j * std::sin(theta));
      }
      out.push_back(std::move(p));
      break;
    }
    case RegionKind::kHyperbolic: {
      const double t_max = require_t(window);
      const double ai = *r.semiaxis_i, aj = *r.semiaxis_j;
      Polyline ip{"z_i+", {}, false}, im{"z_i-", {}, false};
      Polyline jp{"z_j+", {}, false}, jm{"z_j-", {}, false};
      for (int k = 0; k < n; ++k) {
        const double t = linspace(-t_max, t_max, n, k);
        const double ch = std::cosh(t), sh = std::sinh(t);
        ip.points.emplace_back(ai * ch, aj * sh);
        im.points.emplace_back(-ai * ch, aj * sh);
        jp.points.emplace_back(ai * sh, aj * ch);
        jm.points.emplace_back(ai * sh, -aj * ch);
      }
      out = {std::move(ip), std::move(im), std::move(jp), std::move(jm)};
      break;
    }
    case RegionKind::kStripI:
    case RegionKind::kStripJ: {
      const double l = require_length(window);
      const bool along_i = r.kind == RegionKind::kStripI;
      const double bound = along_i ? *r.semiaxis_i : *r.semiaxis_j;
      for (double sign : {1.0, -1.0}) {
        Polyline p{sign > 0 ? "upper" : "lower", {}, false};
        for (int k = 0; k < n; ++k) {
          const double free = linspace(-l, l, n, k);
          if (along_i) p.points.emplace_back(sign * bound, free);
          else p.points.emplace_back(free, sign * bound);
        }
        out.push_back(std::move(p));
      }
      break;
    }
    case RegionKind::kFullPlane: break;
  }
  return out;
}

std::string pair_label(const ConfidenceRegion& r) {
  return std::to_string(r.i + 1) + "-" + std::to_string(r.j + 1);
}

void write_points_csv(std::ostream& out, const ConfidenceRegion& r,
                      const std::vector<Point>& points, bool header) {
  if (header) out << "pair,i,j,kind,z_i,z_j\n";
  const std::string prefix = pair_label(r) + "," + std::to_string(r.i + 1) + "," +
                             std::to_string(r.j + 1) + "," + to_string(r.kind) + ",";
  for (const Point& p : points)
    out << prefix << fmt::shortest(p.x()) << "," << fmt::shortest(p.y()) << "\n";
}

std::string render_svg(const ConfidenceRegion& r, const std::vector<Polyline>& curves,
                       const std::vector<Point>& points, const Window& window) {
  constexpr double kSize = 480.0;
  constexpr double kMargin = 56.0;
  constexpr double kHalf = (kSize - 2.0 * kMargin) / 2.0;
  constexpr double kCentre = kSize / 2.0;
  const auto [ei, ej] = extents(r, window);

  auto px = [&](double x) { return fmt::fixed(kCentre + x / ei * kHalf, 2); };
  auto py = [&](double y) { return fmt::fixed(kCentre - y / ej * kHalf, 2); };
  const bool clip = r.kind == RegionKind::kHyperbolic;

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
       "viewBox=\"0 0 480 480\">\n";
  s << "<title>region " << pair_label(r) << " " << to_string(r.kind) << "</title>\n";
  s << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt::fixed(kMargin, 2) << "\" y=\""
    << fmt::fixed(kMargin, 2) << "\" width=\"" << fmt::fixed(2 * kHalf, 2) << "\" height=\""
    << fmt::fixed(2 * kHalf, 2) << "\"/></clipPath></defs>\n";
  s << "<rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"#ffffff\"/>\n";
  s << "<rect x=\"" << fmt::fixed(kMargin, 2) << "\" y=\"" << fmt::fixed(kMargin, 2)
    << "\" width=\"" << fmt::fixed(2 * kHalf, 2) << "\" height=\"" << fmt::fixed(2 * kHalf, 2)
    << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  s << "<line x1=\"" << px(-ei) << "\" y1=\"" << py(0) << "\" x2=\"" << px(ei) << "\" y2=\""
    << py(0) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(-ej) << "\" x2=\"" << px(0) << "\" y2=\""
    << py(ej) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  s << "<g clip-path=\"url(#plot)\" fill=\"#4477aa\" fill-opacity=\"0.35\">\n";
  for (const Point& p : points) {
    if (clip && (std::abs(p.x()) > ei || std::abs(p.y()) > ej)) continue;
    s << "<circle cx=\"" << px(p.x()) << "\" cy=\"" << py(p.y()) << "\" r=\"1.2\"/>\n";
  }
  s << "</g>\n";

  static const char* kColours[] = {"#cc3311", "#009988", "#ee7733", "#33bbee"};
  s << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& line = curves[c];
    s << "<" << (line.closed ? "polygon" : "polyline") << " stroke=\"" << kColours[c % 4]
      << "\" points=\"";
    for (std::size_t k = 0; k < line.points.size(); ++k) {
      if (k) s << ' ';
      s << px(line.points[k].x()) << ',' << py(line.points[k].y());
    }
    s << "\"/>\n";
  }
  s << "</g>\n";

  const std::string zi = "z" + std::to_string(r.i + 1);
  const std::string zj = "z" + std::to_string(r.j + 1);
  s << "<g font-family=\"monospace\" font-size=\"11\" fill=\"#222222\">\n";
  s << "<text x=\"" << fmt::fixed(kSize - kMargin, 2) << "\" y=\""
    << fmt::fixed(kSize - kMargin + 16, 2) << "\" text-anchor=\"end\">" << zi << " in ["
    << fmt::sci(-ei, 3) << ", " << fmt::sci(ei, 3) << "]</text>\n";
  s << "<text x=\"" << fmt::fixed(kMargin, 2) << "\" y=\"" << fmt::fixed(kMargin - 8, 2)
    << "\">" << zj << " in [" << fmt::sci(-ej, 3) << ", " << fmt::sci(ej, 3) << "]</text>\n";
  s << "<text x=\"" << fmt::fixed(kMargin, 2) << "\" y=\"20.00\">" << to_string(r.kind)
    << " region (" << zi << ", " << zj << "), M = " << fmt::sci(r.threshold, 3)
    << "</text>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace rsm::regions
