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

#include "rsm/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsm/error.hpp"
#include "rsm/numfmt.hpp"

namespace rsm::budget {
namespace {

constexpr double kEntryTolerance = 1e-9;

void check_threshold(double m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("threshold M must be positive and finite, got " + fmt::shortest(m));
}

bool is_nonzero(const Eigen::VectorXd& f, Eigen::Index k) {
  return std::abs(f(k)) > kEntryTolerance * f.cwiseAbs().maxCoeff();
}

int support(const Eigen::VectorXd& f) {
  int n = 0;
  for (Eigen::Index k = 0; k < f.size(); ++k) n += is_nonzero(f, k) ? 1 : 0;
  return n;
}

// Projection of a unit move along `direction` onto `form`, with entries below
// rounding level treated as zero.
double along(const Eigen::VectorXd& form, const Eigen::VectorXd& direction) {
  const double value = form.dot(direction);
  const double scale = form.cwiseAbs().dot(direction.cwiseAbs());
  return std::abs(value) <= kEntryTolerance * scale ? 0.0 : value;
}

}  // namespace

MagnitudeReport magnitude_report(const canonical::CanonicalModel& cm, double threshold,
                                 double free_factor) {
  check_threshold(threshold);
  if (!(free_factor > 0.0)) throw ParameterError("free factor must be positive");
  if (cm.null_directions().empty())
    throw NoNullDirection("the interaction matrix has no null direction");

  MagnitudeReport r;
  r.threshold = threshold;
  r.free_factor = free_factor;
  for (Eigen::Index k = 0; k < cm.dimension(); ++k) {
    const double l = cm.eigenvalues()(k);
    if (l == 0.0) continue;
    r.quadratic.push_back({k, l, std::sqrt(threshold / std::abs(l))});
    r.max_quadratic_bound = std::max(r.max_quadratic_bound, r.quadratic.back().bound);
  }

  bool active = false;
  for (std::size_t n = 0; n < cm.null_directions().size(); ++n) {
    NullBound nb;
    nb.index = cm.null_directions()[n];
    nb.coefficient = cm.null_coefficients()(static_cast<Eigen::Index>(n));
    if (nb.coefficient != 0.0) {
      active = true;
      nb.bound = threshold / std::abs(nb.coefficient);
      if (r.max_quadratic_bound > 0.0) {
        nb.freedom_ratio = *nb.bound / r.max_quadratic_bound;
        nb.free = *nb.freedom_ratio > free_factor;
      } else {
        nb.free = true;
      }
    }
    r.null.push_back(nb);
  }
  if (!active)
    throw NullDirectionInactive("every null-direction coefficient is zero; its bound is infinite");
  return r;
}

int order_of_magnitude(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("order of a non-positive value");
  return static_cast<int>(std::lround(std::log10(value)));
}

CrossoverReport crossover_threshold(const canonical::CanonicalModel& cm,
                                    std::optional<double> reference_level) {
  if (cm.null_directions().empty())
    throw NoNullDirection("the interaction matrix has no null direction");
  const Eigen::VectorXd& c = cm.null_coefficients();
  Eigen::Index pick = 0;
  c.cwiseAbs().maxCoeff(&pick);
  if (c(pick) == 0.0)
    throw NullDirectionInactive("every null-direction coefficient is zero; no crossover exists");
  if (reference_level && !(*reference_level != 0.0 && std::isfinite(*reference_level)))
    throw DomainError("reference level must be finite and nonzero");

  CrossoverReport r;
  r.null_index = cm.null_directions()[static_cast<std::size_t>(pick)];
  r.coefficient = c(pick);
  r.shifted_intercept = cm.shifted_intercept();
  const double c2 = r.coefficient * r.coefficient;
  r.m_star_min = std::numeric_limits<double>::infinity();
  r.m_star_max = 0.0;
  for (Eigen::Index k = 0; k < cm.dimension(); ++k) {
    const double l = cm.eigenvalues()(k);
    if (l == 0.0) continue;
    const double m = c2 / std::abs(l);
    r.entries.push_back({k, l, m});
    r.m_star_min = std::min(r.m_star_min, m);
    r.m_star_max = std::max(r.m_star_max, m);
  }
  if (r.entries.empty()) throw DegenerateStructure("no quadratic direction to cross over with");
  const double y0 = std::abs(r.shifted_intercept);
  if (y0 > 0.0) {
    r.relative_min = r.m_star_min / y0;
    r.relative_max = r.m_star_max / y0;
  } else {
    r.relative_min = r.relative_max = std::numeric_limits<double>::infinity();
  }
  if (reference_level) {
    r.reference_level = *reference_level;
    r.reference_relative_min = r.m_star_min / std::abs(*reference_level);
    r.reference_relative_max = r.m_star_max / std::abs(*reference_level);
  }
  return r;
}

std::string to_string(Factor f) { return f == Factor::kU ? "u" : "v"; }

UVSystem uv_system(const canonical::CanonicalModel& cm) {
  const Eigen::VectorXd& l = cm.eigenvalues();
  const Eigen::MatrixXd& vecs = cm.eigenvectors();
  const Eigen::Index n = l.size();
  const double peak = l.cwiseAbs().maxCoeff();

  UVSystem uv;
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (l(k) > 0.0) pos.push_back(k);
    else if (l(k) < 0.0) neg.push_back(k);
    else uv.null_directions.push_back(k);
  }
  // Descending order: largest positive pairs with most negative (the end).
  std::reverse(neg.begin(), neg.end());
  if (pos.size() != neg.size())
    throw NotPaired(std::to_string(pos.size()) + " positive and " + std::to_string(neg.size()) +
                    " negative eigenvalues");
  for (std::size_t p = 0; p < pos.size(); ++p) {
    const double lp = l(pos[p]);
    const double lm = l(neg[p]);
    if (std::abs(lp + lm) > kPairTolerance * peak)
      throw NotPaired("eigenvalue " + fmt::sci(lp, 6) + " has no partner (nearest " +
                      fmt::sci(lm, 6) + ")");
    UVPair pair;
    pair.plus_index = pos[p];
    pair.minus_index = neg[p];
    pair.lambda = lp;
    pair.coefficient = 4.0 * lp;
    Eigen::VectorXd s = 0.5 * (vecs.col(pos[p]) + vecs.col(neg[p]));
    Eigen::VectorXd d = 0.5 * (vecs.col(pos[p]) - vecs.col(neg[p]));
    if (support(d) < support(s)) std::swap(s, d);
    Eigen::Index big = 0;
    s.cwiseAbs().maxCoeff(&big);
    if (s(big) < 0.0) {
      s = -s;
      d = -d;
    }
    pair.u = std::move(s);
    pair.v = std::move(d);
    uv.pairs.push_back(std::move(pair));
  }
  uv.null_vectors.resize(n, static_cast<Eigen::Index>(uv.null_directions.size()));
  for (std::size_t k = 0; k < uv.null_directions.size(); ++k)
    uv.null_vectors.col(static_cast<Eigen::Index>(k)) = vecs.col(uv.null_directions[k]);
  return uv;
}

double uv_quadratic(const UVSystem& uv, const Eigen::VectorXd& shifted) {
  double y = 0.0;
  for (const UVPair& p : uv.pairs) y += p.coefficient * p.u.dot(shifted) * p.v.dot(shifted);
  return y;
}

TradeScenario trade_analysis(const canonical::CanonicalModel& cm, const UVSystem& uv,
                             double threshold, PinSpec pin, Eigen::Index drive, double delta,
                             std::optional<Eigen::Index> offset_variable) {
  check_threshold(threshold);
  if (delta == 0.0 || !std::isfinite(delta)) throw SpecError("increment must be finite and nonzero");
  if (pin.pair >= uv.pairs.size())
    throw SpecError("product " + std::to_string(pin.pair + 1) + " does not exist");
  const Eigen::Index k = cm.dimension();
  if (drive < 0 || drive >= k)
    throw SpecError("variable " + std::to_string(drive + 1) + " does not exist");

  const UVPair& pinned = uv.pairs[pin.pair];
  const Eigen::VectorXd& f = pinned.factor(pin.factor);
  const std::string pinned_name = to_string(pin.factor) + std::to_string(pin.pair + 1);
  if (support(f) < 2)
    throw NoTradePossible(pinned_name + " involves a single variable; nothing can offset it");
  if (!is_nonzero(f, drive))
    throw SpecError("variable x" + std::to_string(drive + 1) + " does not enter " + pinned_name);

  Eigen::Index off = -1;
  if (offset_variable) {
    off = *offset_variable;
    if (off < 0 || off >= k || off == drive || !is_nonzero(f, off))
      throw SpecError("variable x" + std::to_string(off + 1) + " cannot offset within " +
                      pinned_name);
  } else {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j == drive || !is_nonzero(f, j)) continue;
      if (off < 0 || std::abs(f(j)) > std::abs(f(off))) off = j;
    }
  }

  TradeScenario s;
  s.threshold = threshold;
  s.pin = pin;
  s.pinned_form = f;
  s.drive = drive;
  s.offset_variable = off;
  s.delta = delta;
  s.ratio = -f(drive) / f(off);
  s.offset = s.ratio * delta;
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(k);
  unit(drive) = 1.0;
  unit(off) = s.ratio;
  s.direction = delta * unit;

  const Factor other = pin.factor == Factor::kU ? Factor::kV : Factor::kU;
  s.free.push_back({to_string(other) + std::to_string(pin.pair + 1), pinned.factor(other)});
  for (std::size_t n = 0; n < uv.null_directions.size(); ++n)
    s.free.push_back({"z" + std::to_string(uv.null_directions[n] + 1),
                      uv.null_vectors.col(static_cast<Eigen::Index>(n))});

  for (std::size_t p = 0; p < uv.pairs.size(); ++p) {
    if (p == pin.pair) continue;
    const UVPair& pair = uv.pairs[p];
    const double au = along(pair.u, unit);
    const double av = along(pair.v, unit);
    if (au == 0.0 && av == 0.0) {
      s.free.push_back({"u" + std::to_string(p + 1) + "*v" + std::to_string(p + 1), pair.u});
      continue;
    }
    ResidualConstraint rc;
    rc.pair = p;
    rc.lambda = pair.lambda;
    rc.product_bound = threshold / pair.coefficient;
    rc.driven_factor = std::abs(au) >= std::abs(av) ? Factor::kU : Factor::kV;
    rc.bounded_factor = rc.driven_factor == Factor::kU ? Factor::kV : Factor::kU;
    rc.coupled = au != 0.0 && av != 0.0;
    rc.driven_per_unit = rc.driven_factor == Factor::kU ? au : av;
    rc.driven_value = rc.driven_per_unit * delta;
    rc.bounded_form = pair.factor(rc.bounded_factor);
    rc.bound = rc.product_bound / std::abs(rc.driven_value);
    s.residuals.push_back(std::move(rc));
  }
  return s;
}

Eigen::VectorXd worked_example(const TradeScenario& s, std::size_t residual) {
  Eigen::VectorXd x = s.direction;
  if (residual >= s.residuals.size()) return x;
  const ResidualConstraint& rc = s.residuals[residual];
  const Eigen::VectorXd& g = rc.bounded_form;
  return x + (rc.bound - g.dot(x)) / g.squaredNorm() * g;
}

}  // namespace rsm::budget
