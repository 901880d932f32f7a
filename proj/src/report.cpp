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

#include "rsm/report.hpp"

#include <cmath>
#include <sstream>

#include "rsm/error.hpp"
#include "rsm/numfmt.hpp"

namespace rsm::report {
namespace {

std::string num(double v, int significant = 6) { return fmt::sci(v, significant); }

std::string g6(double v) {
  if (v == 0.0) return "0";
  return fmt::shortest(*fmt::parse_double(fmt::sci(v, 6)));
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    const double peak = v.cwiseAbs().maxCoeff();
    s += std::abs(v(k)) <= 1e-9 * peak ? "0" : g6(v(k));
  }
  return s + ")";
}

std::string z(Eigen::Index k) { return "z" + std::to_string(k + 1); }

}  // namespace

std::string linear_form(const Eigen::VectorXd& coefficients, const std::vector<std::string>& names,
                        int significant) {
  const double peak = coefficients.cwiseAbs().maxCoeff();
  std::string s;
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    const double c = coefficients(k);
    if (peak == 0.0 || std::abs(c) <= 1e-9 * peak) continue;
    const std::string mag = fmt::shortest(*fmt::parse_double(fmt::sci(std::abs(c), significant)));
    const std::string& name = names[static_cast<std::size_t>(k)];
    if (s.empty()) s = (c < 0 ? "-" : "") + mag + " " + name;
    else s += (c < 0 ? " - " : " + ") + mag + " " + name;
  }
  return s.empty() ? "0" : s;
}

std::string canonical_summary(const canonical::CanonicalModel& cm) {
  const auto& m = cm.model();
  const int eb = m.scales().linear;
  const int eq = m.scales().interaction;
  std::ostringstream s;
  s << "canonical analysis\n";
  s << "variables:";
  for (const auto& n : m.names()) s << ' ' << n;
  s << "\nclassification: " << canonical::to_string(cm.classification()) << "\n";
  s << "eigenvalues:\n";
  for (Eigen::Index k = 0; k < cm.dimension(); ++k)
    s << "  lambda" << k + 1 << " = " << fmt::scaled(cm.eigenvalues()(k), eq, 6) << "\n";
  s << "eigenvectors:\n";
  for (Eigen::Index k = 0; k < cm.dimension(); ++k)
    s << "  V" << k + 1 << " = " << vector_text(cm.eigenvectors().col(k)) << "\n";
  const auto xs = cm.stationary_point();
  s << "stationary point: " << (xs ? vector_text(*xs) : "undefined (no quadratic part)") << "\n";
  s << "intercept beta0 = " << fmt::scaled(m.intercept(), eb, 6) << "\n";
  s << "shifted intercept Y0' = " << fmt::scaled(cm.shifted_intercept(), eb, 6) << "\n";
  for (std::size_t n = 0; n < cm.null_directions().size(); ++n) {
    const Eigen::Index k = cm.null_directions()[n];
    s << "null direction " << z(k) << " = "
      << linear_form(cm.eigenvectors().col(k), m.names()) << ", c" << k + 1 << " = "
      << fmt::scaled(cm.null_coefficients()(static_cast<Eigen::Index>(n)), eb, 5) << "\n";
  }

  // Canonical equation, pairing (lambda, -lambda) where the spectrum allows.
  s << "canonical form:\n  Y = Y0'";
  for (std::size_t n = 0; n < cm.null_directions().size(); ++n) {
    const double c = cm.null_coefficients()(static_cast<Eigen::Index>(n));
    s << (c < 0 ? " - " : " + ") << "(" << fmt::scaled(std::abs(c), eb, 5) << ") "
      << z(cm.null_directions()[n]);
  }
  bool paired = false;
  if (cm.classification() != canonical::Classification::kNoQuadraticPart) {
    try {
      const auto uv = budget::uv_system(cm);
      for (const auto& p : uv.pairs)
        s << " + " << fmt::scaled(p.lambda, eq, 6) << " (" << z(p.plus_index) << "^2 - "
          << z(p.minus_index) << "^2)";
      paired = true;
    } catch (const NotPaired&) {
    }
  }
  if (!paired) {
    for (Eigen::Index k = 0; k < cm.dimension(); ++k) {
      const double l = cm.eigenvalues()(k);
      if (l == 0.0) continue;
      s << (l < 0 ? " - " : " + ") << fmt::scaled(std::abs(l), eq, 6) << " " << z(k) << "^2";
    }
  }
  s << "\n";
  return s.str();
}

std::string regions_summary(const std::vector<regions::ConfidenceRegion>& rs) {
  std::ostringstream s;
  s << "confidence regions\n";
  for (const auto& r : rs) {
    s << "  (" << z(r.i) << ", " << z(r.j) << ") " << regions::to_string(r.kind);
    if (r.kind == regions::RegionKind::kElliptic) s << " [" << regions::to_string(r.extremum) << "]";
    s << ", M = " << num(r.threshold, 3);
    if (r.semiaxis_i) s << ", a" << r.i + 1 << " = " << num(*r.semiaxis_i, 4);
    if (r.semiaxis_j) s << ", a" << r.j + 1 << " = " << num(*r.semiaxis_j, 4);
    s << "\n";
  }
  return s.str();
}

std::string budget_text(const canonical::CanonicalModel& cm, const budget::MagnitudeReport& mr,
                        const budget::CrossoverReport& cr) {
  const int eb = cm.model().scales().linear;
  const int eq = cm.model().scales().interaction;
  std::ostringstream s;
  s << "magnitude report, M = " << num(mr.threshold, 3) << "\n";
  for (const auto& b : mr.quadratic)
    s << "  " << z(b.index) << ": lambda = " << fmt::scaled(b.lambda, eq, 6) << ", |"
      << z(b.index) << "| <~ " << num(b.bound, 4) << " (order 10^"
      << budget::order_of_magnitude(b.bound) << ")\n";
  for (const auto& b : mr.null) {
    s << "  " << z(b.index) << ": c = " << fmt::scaled(b.coefficient, eb, 5) << ", |"
      << z(b.index) << "| <~ ";
    if (!b.bound) {
      s << "unbounded (inactive)\n";
      continue;
    }
    s << num(*b.bound, 4) << " (order 10^" << budget::order_of_magnitude(*b.bound) << ")";
    if (b.freedom_ratio) s << ", ratio to largest quadratic bound " << num(*b.freedom_ratio, 4);
    s << (b.free ? ", free" : ", not free") << " (factor " << g6(mr.free_factor) << ")\n";
  }
  s << "crossover thresholds for " << z(cr.null_index) << ", M*_k = c^2 / |lambda_k|\n";
  for (const auto& e : cr.entries)
    s << "  M*_" << e.index + 1 << " = " << num(e.m_star, 4) << "\n";
  s << "  min M* = " << num(cr.m_star_min, 4) << " (order 10^"
    << budget::order_of_magnitude(cr.m_star_min) << "), max M* = " << num(cr.m_star_max, 4)
    << " (order 10^" << budget::order_of_magnitude(cr.m_star_max) << ")\n";
  s << "  relative to |Y0'| = " << num(std::abs(cr.shifted_intercept), 4) << ": "
    << num(cr.relative_min, 4) << " .. " << num(cr.relative_max, 4) << "\n";
  if (cr.reference_level)
    s << "  relative to reference level " << num(*cr.reference_level, 4) << ": "
      << num(*cr.reference_relative_min, 4) << " .. " << num(*cr.reference_relative_max, 4)
      << "\n";
  return s.str();
}

std::string trade_text(const canonical::CanonicalModel& cm, const budget::UVSystem& uv,
                       const budget::TradeScenario& t) {
  const auto& names = cm.model().names();
  const int eq = cm.model().scales().interaction;
  auto var = [&](Eigen::Index k) { return names[static_cast<std::size_t>(k)]; };
  const std::string pinned =
      budget::to_string(t.pin.factor) + std::to_string(t.pin.pair + 1);
  std::ostringstream s;
  s << "trade analysis, M = " << num(t.threshold, 3) << "\n";
  s << "products:\n";
  for (std::size_t p = 0; p < uv.pairs.size(); ++p) {
    const auto& pr = uv.pairs[p];
    s << "  4 lambda" << pr.plus_index + 1 << " u" << p + 1 << " v" << p + 1 << ", 4 lambda = "
      << fmt::scaled(pr.coefficient, eq, 6) << "\n";
    s << "    u" << p + 1 << " = " << linear_form(pr.u, names) << "\n";
    s << "    v" << p + 1 << " = " << linear_form(pr.v, names) << "\n";
  }
  s << "pinned: " << pinned << " = " << linear_form(t.pinned_form, names) << " = 0\n";
  s << "drive: " << var(t.drive) << " by " << g6(t.delta) << "\n";
  s << "offset: " << var(t.offset_variable) << " by " << g6(t.offset) << " (ratio " << g6(t.ratio)
    << " per unit of " << var(t.drive) << ")\n";
  for (const auto& r : t.residuals) {
    const std::string p = std::to_string(r.pair + 1);
    const std::string driven = budget::to_string(r.driven_factor) + p;
    const std::string bounded = budget::to_string(r.bounded_factor) + p;
    s << "residual constraint on product " << p << ":\n";
    s << "  |u" << p << " v" << p << "| <= M / (4 lambda) = " << num(r.product_bound, 5) << "\n";
    s << "  " << driven << " = " << g6(r.driven_per_unit) << " " << var(t.drive) << " = "
      << g6(r.driven_value) << "\n";
    s << "  |" << bounded << "| = |" << linear_form(r.bounded_form, names) << "| <= "
      << num(r.bound, 5) << "\n";
    if (r.coupled) s << "  note: both factors move along the trade line\n";
  }
  s << "free combinations:\n";
  for (const auto& f : t.free) s << "  " << f.name << " = " << linear_form(f.form, names) << "\n";
  return s.str();
}

}  // namespace rsm::report
