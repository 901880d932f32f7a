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

#include "rsm/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rsm/error.hpp"
#include "rsm/stats.hpp"

namespace rsm::regression {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int kind_rank(TermKind k) {
  switch (k) {
    case TermKind::kIntercept: return 0;
    case TermKind::kLinear: return 1;
    case TermKind::kInteraction:
    case TermKind::kQuadratic: return 2;
  }
  return 3;
}

void check_term(const TermSpec& t, int predictors) {
  auto in_range = [&](int v) { return v >= 0 && v < predictors; };
  switch (t.kind) {
    case TermKind::kIntercept: return;
    case TermKind::kLinear:
      if (!in_range(t.i)) break;
      return;
    case TermKind::kInteraction:
      if (!in_range(t.i) || !in_range(t.j) || t.i >= t.j) break;
      return;
    case TermKind::kQuadratic:
      if (!in_range(t.i) || t.j != t.i) break;
      return;
  }
  throw SpecError("term (" + std::to_string(static_cast<int>(t.kind)) + ", " +
                  std::to_string(t.i) + ", " + std::to_string(t.j) +
                  ") is invalid for " + std::to_string(predictors) + " predictors");
}

std::vector<std::string> default_names(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

// Parents of a second-order term; empty for intercept and linear terms.
std::vector<TermSpec> parents(const TermSpec& t) {
  if (t.kind == TermKind::kInteraction) return {TermSpec::linear(t.i), TermSpec::linear(t.j)};
  if (t.kind == TermKind::kQuadratic) return {TermSpec::linear(t.i)};
  return {};
}

}  // namespace

double pow10(int e) {
  double r = 1.0;
  for (int k = 0; k < std::abs(e); ++k) r *= 10.0;
  return e >= 0 ? r : 1.0 / r;
}

TermSpec TermSpec::interaction(int i, int j) {
  if (i == j) return quadratic(i);
  if (i > j) std::swap(i, j);
  return {TermKind::kInteraction, i, j};
}

std::string TermSpec::label(const std::vector<std::string>& names) const {
  auto name = [&](int k) {
    return k >= 0 && static_cast<std::size_t>(k) < names.size() ? names[static_cast<std::size_t>(k)]
                                                                : "x" + std::to_string(k + 1);
  };
  switch (kind) {
    case TermKind::kIntercept: return "intercept";
    case TermKind::kLinear: return name(i);
    case TermKind::kInteraction: return name(i) + "*" + name(j);
    case TermKind::kQuadratic: return name(i) + "^2";
  }
  return "?";
}

std::strong_ordering TermSpec::operator<=>(const TermSpec& other) const {
  if (auto c = kind_rank(kind) <=> kind_rank(other.kind); c != 0) return c;
  if (auto c = i <=> other.i; c != 0) return c;
  return j <=> other.j;
}

std::vector<TermSpec> full_second_order_pool(int predictors, bool include_quadratic) {
  std::vector<TermSpec> pool{TermSpec::intercept()};
  for (int i = 0; i < predictors; ++i) pool.push_back(TermSpec::linear(i));
  for (int i = 0; i < predictors; ++i) {
    if (include_quadratic) pool.push_back(TermSpec::quadratic(i));
    for (int j = i + 1; j < predictors; ++j) pool.push_back(TermSpec::interaction(i, j));
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

Design build_design(const data::Dataset& d, std::span<const TermSpec> terms) {
  const int k = static_cast<int>(d.predictor_count());
  std::set<TermSpec> seen;
  for (const auto& t : terms) {
    check_term(t, k);
    if (!seen.insert(t).second)
      throw SpecError("duplicate term '" + t.label(d.predictor_names()) + "'");
  }

  const auto n = static_cast<Eigen::Index>(d.size());
  const Eigen::MatrixXd& x = d.predictors();
  Design out;
  out.matrix.resize(n, static_cast<Eigen::Index>(terms.size()));
  for (std::size_t c = 0; c < terms.size(); ++c) {
    const TermSpec& t = terms[c];
    auto col = out.matrix.col(static_cast<Eigen::Index>(c));
    switch (t.kind) {
      case TermKind::kIntercept: col.setOnes(); break;
      case TermKind::kLinear: col = x.col(t.i); break;
      case TermKind::kInteraction:
      case TermKind::kQuadratic: col = x.col(t.i).cwiseProduct(x.col(t.j)); break;
    }
    out.terms.push_back(t);
    out.labels.push_back(t.label(d.predictor_names()));
  }
  return out;
}

bool FitReport::has_intercept() const {
  return std::find(terms.begin(), terms.end(), TermSpec::intercept()) != terms.end();
}

std::optional<double> FitReport::coefficient(const TermSpec& t) const {
  const auto it = std::find(terms.begin(), terms.end(), t);
  if (it == terms.end()) return std::nullopt;
  return coefficients(it - terms.begin());
}

FitReport ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
                  std::vector<TermSpec> terms, std::vector<std::string> labels) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (response.size() != n) throw SpecError("response length does not match design rows");
  if (p == 0) throw SpecError("design has no columns");
  if (n < p)
    throw UnderdeterminedError(std::to_string(n) + " rows for " + std::to_string(p) + " columns");
  if (!design.allFinite() || !response.allFinite())
    throw InvalidInput("design or response has non-finite values");
  if (terms.empty()) {
    for (Eigen::Index c = 0; c < p; ++c) terms.push_back(TermSpec::linear(static_cast<int>(c)));
  }
  if (labels.empty()) {
    const auto names = default_names(static_cast<int>(p));
    for (const auto& t : terms) labels.push_back(t.label(names));
  }

  auto column_label = [&](Eigen::Index c) {
    return static_cast<std::size_t>(c) < labels.size() ? labels[static_cast<std::size_t>(c)]
                                                       : std::to_string(c);
  };

  const Eigen::VectorXd norms = design.colwise().norm();
  const double largest = norms.maxCoeff();
  for (Eigen::Index c = 0; c < p; ++c)
    if (norms(c) <= kRankTolerance * largest || norms(c) == 0.0)
      throw RankError("column '" + column_label(c) + "' is zero", static_cast<std::size_t>(c));

  const Eigen::MatrixXd scaled = design * norms.cwiseInverse().asDiagonal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < p; ++c) {
    // |R_cc| is the residual of the unit-norm column c against columns < c.
    if (std::abs(r(c, c)) * norms(c) <= kRankTolerance * largest)
      throw RankError("column '" + column_label(c) + "' depends on the preceding columns",
                      static_cast<std::size_t>(c));
  }

  const Eigen::VectorXd qty = (qr.householderQ().transpose() * response).head(p);
  const auto rt = r.triangularView<Eigen::Upper>();
  const Eigen::VectorXd scaled_coef = rt.solve(qty);

  FitReport rep;
  rep.terms = std::move(terms);
  rep.labels = std::move(labels);
  rep.n = static_cast<std::size_t>(n);
  rep.coefficients = scaled_coef.cwiseQuotient(norms);
  rep.residuals = response - design * rep.coefficients;
  rep.sse = rep.residuals.squaredNorm();

  const bool intercept = rep.has_intercept();
  if (intercept) {
    const double mean = response.mean();
    rep.sst = (response.array() - mean).square().sum();
  } else {
    rep.sst = response.squaredNorm();
  }
  rep.df_resid = static_cast<int>(n - p);
  rep.df_model = static_cast<int>(p) - (intercept ? 1 : 0);

  if (rep.sst > 0.0) {
    rep.r2 = std::clamp(1.0 - rep.sse / rep.sst, 0.0, 1.0);
  } else {
    rep.r2 = rep.sse > 0.0 ? 0.0 : 1.0;
  }

  rep.std_errors = Eigen::VectorXd::Constant(p, kNaN);
  rep.t_stats = Eigen::VectorXd::Constant(p, kNaN);
  rep.p_values = Eigen::VectorXd::Constant(p, kNaN);
  rep.adj_r2 = kNaN;
  rep.f_stat = kNaN;
  rep.f_p_value = kNaN;
  if (rep.df_resid > 0) {
    const double df = rep.df_resid;
    const double sigma2 = rep.sse / df;
    // diag((R'R)^-1) = squared row norms of R^-1.
    const Eigen::MatrixXd rinv = rt.solve(Eigen::MatrixXd::Identity(p, p));
    for (Eigen::Index c = 0; c < p; ++c) {
      rep.std_errors(c) = std::sqrt(sigma2 * rinv.row(c).squaredNorm()) / norms(c);
      if (rep.std_errors(c) > 0.0) {
        rep.t_stats(c) = rep.coefficients(c) / rep.std_errors(c);
        rep.p_values(c) = stats::t_two_sided_p(rep.t_stats(c), df);
      } else {
        rep.t_stats(c) = rep.coefficients(c) == 0.0 ? 0.0
                                                    : std::copysign(
                                                          std::numeric_limits<double>::infinity(),
                                                          rep.coefficients(c));
        rep.p_values(c) = rep.coefficients(c) == 0.0 ? 1.0 : 0.0;
      }
    }
    const double denom = intercept ? static_cast<double>(n - 1) : static_cast<double>(n);
    rep.adj_r2 = std::min(rep.r2, 1.0 - (1.0 - rep.r2) * denom / df);
    if (rep.df_model > 0) {
      const double ssr = std::max(rep.sst - rep.sse, 0.0);
      if (rep.sse > 0.0) {
        rep.f_stat = (ssr / rep.df_model) / sigma2;
        rep.f_p_value = stats::f_upper_p(rep.f_stat, rep.df_model, df);
      } else {
        rep.f_stat = std::numeric_limits<double>::infinity();
        rep.f_p_value = 0.0;
      }
    } else {
      rep.f_stat = 0.0;
      rep.f_p_value = 1.0;
    }
  }
  return rep;
}

StepwiseResult stepwise_forward(const data::Dataset& d, const Eigen::VectorXd& response,
                                std::span<const TermSpec> pool, const StepwiseOptions& options) {
  if (pool.empty()) throw SpecError("stepwise pool is empty");
  if (!(options.alpha_enter > 0.0 && options.alpha_enter < 1.0))
    throw SpecError("alpha_enter must lie in (0, 1)");
  if (static_cast<std::size_t>(response.size()) != d.size())
    throw SpecError("response length does not match the dataset");

  std::vector<TermSpec> candidates(pool.begin(), pool.end());
  std::sort(candidates.begin(), candidates.end());
  if (std::adjacent_find(candidates.begin(), candidates.end()) != candidates.end())
    throw SpecError("stepwise pool has duplicate terms");
  for (const auto& t : candidates) check_term(t, static_cast<int>(d.predictor_count()));

  const auto n = static_cast<double>(d.size());
  StepwiseResult result;

  auto fit_terms = [&](const std::vector<TermSpec>& terms) {
    const Design design = build_design(d, terms);
    return ols_fit(design.matrix, response, design.terms, design.labels);
  };

  double sse = response.squaredNorm();
  double total = sse;
  int step = 0;

  auto intercept_it = std::find(candidates.begin(), candidates.end(), TermSpec::intercept());
  if (intercept_it != candidates.end()) {
    candidates.erase(intercept_it);
    result.selected.push_back(TermSpec::intercept());
    StepRecord rec;
    rec.step = step++;
    rec.entered = TermSpec::intercept();
    rec.fit = fit_terms(result.selected);
    rec.note = "intercept entered unconditionally";
    sse = rec.fit.sse;
    total = rec.fit.sst;
    result.final_fit = rec.fit;
    result.trail.push_back(std::move(rec));
  }
  const double exact_threshold = options.exact_fit_ratio * (total > 0.0 ? total : 1.0);

  while (true) {
    if (!result.selected.empty() && sse <= exact_threshold) {
      result.stop_reason = "exact fit";
      break;
    }
    if (candidates.empty()) {
      result.stop_reason = "pool exhausted";
      break;
    }

    StepRecord rec;
    rec.step = step;
    std::optional<std::size_t> best;
    FitReport best_fit;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      CandidateScore score;
      score.term = candidates[c];
      if (options.hierarchy) {
        for (const auto& parent : parents(candidates[c])) {
          if (std::find(result.selected.begin(), result.selected.end(), parent) ==
              result.selected.end()) {
            score.admissible = false;
            score.note = "parent " + parent.label(d.predictor_names()) + " not selected";
          }
        }
      }
      const double df_new = n - static_cast<double>(result.selected.size() + 1);
      if (score.admissible && df_new < 1.0) {
        score.admissible = false;
        score.note = "no residual degrees of freedom";
      }
      if (score.admissible) {
        std::vector<TermSpec> trial = result.selected;
        trial.push_back(candidates[c]);
        try {
          FitReport fit = fit_terms(trial);
          const double drop = std::max(sse - fit.sse, 0.0);
          if (fit.sse > 0.0) {
            score.f_stat = drop / (fit.sse / df_new);
            score.p_value = stats::f_upper_p(score.f_stat, 1.0, df_new);
          } else {
            score.f_stat = std::numeric_limits<double>::infinity();
            score.p_value = 0.0;
          }
          if (!best || score.f_stat > rec.candidates[*best].f_stat) {
            best = c;
            best_fit = std::move(fit);
          }
        } catch (const RankError&) {
          score.admissible = false;
          score.note = "collinear with selected terms";
        }
      }
      rec.candidates.push_back(std::move(score));
    }

    if (!best) {
      result.stop_reason = "no admissible candidate";
      rec.note = result.stop_reason;
      result.trail.push_back(std::move(rec));
      break;
    }
    const CandidateScore& winner = rec.candidates[*best];
    if (!(winner.p_value < options.alpha_enter)) {
      result.stop_reason = "best candidate " + winner.term.label(d.predictor_names()) +
                           " above alpha_enter";
      rec.note = result.stop_reason;
      result.trail.push_back(std::move(rec));
      break;
    }
    rec.entered = winner.term;
    rec.f_stat = winner.f_stat;
    rec.p_value = winner.p_value;
    rec.fit = best_fit;
    sse = best_fit.sse;
    result.selected.push_back(winner.term);
    result.final_fit = best_fit;
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(*best));
    result.trail.push_back(std::move(rec));
    ++step;
  }
  return result;
}

int auto_exponent(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0 || !std::isfinite(peak)) return 0;
  return -static_cast<int>(std::floor(std::log10(peak)));
}

QuadraticModel::QuadraticModel(double intercept_scaled, Eigen::VectorXd linear_scaled,
                               linalg::SymmetricMatrix interaction_scaled, Scales scales,
                               std::vector<std::string> names)
    : intercept_(intercept_scaled),
      linear_(std::move(linear_scaled)),
      interaction_(std::move(interaction_scaled)),
      scales_(scales),
      names_(std::move(names)) {
  const Eigen::Index k = linear_.size();
  if (k < 1) throw SpecError("model needs at least one variable");
  if (interaction_.order() != k) throw SpecError("interaction matrix order does not match");
  if (names_.empty()) names_ = default_names(static_cast<int>(k));
  if (static_cast<Eigen::Index>(names_.size()) != k)
    throw SpecError("variable name count does not match the model dimension");
  if (!std::isfinite(intercept_) || !linear_.allFinite() || !interaction_.entries().allFinite())
    throw InvalidInput("model coefficients must be finite");

  // The matrix and term-by-term forms must agree; probe at fixed points.
  data::SplitMix64 rng(0x5eed);
  for (int probe = 0; probe < 10; ++probe) {
    Eigen::VectorXd x(k);
    for (Eigen::Index i = 0; i < k; ++i) x(i) = 2.0 * rng.uniform() - 1.0;
    const double a = evaluate(x);
    const double b = evaluate_terms(x);
    const double scale = std::max(term_magnitude(x), std::numeric_limits<double>::min());
    if (std::abs(a - b) > 1e-12 * scale)
      throw SpecError("matrix and term-by-term model evaluations disagree");
  }
}

double QuadraticModel::intercept() const { return intercept_ / pow10(scales_.linear); }
Eigen::VectorXd QuadraticModel::linear() const { return linear_ / pow10(scales_.linear); }
Eigen::MatrixXd QuadraticModel::interaction() const {
  return interaction_.entries() / pow10(scales_.interaction);
}

double QuadraticModel::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dimension()) throw SpecError("point dimension does not match the model");
  const double lin = linear_.dot(x) / pow10(scales_.linear);
  const double quad = x.dot(interaction_.entries() * x) / pow10(scales_.interaction);
  return intercept() + lin + quad;
}

double QuadraticModel::evaluate_terms(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dimension()) throw SpecError("point dimension does not match the model");
  const double lscale = pow10(scales_.linear);
  const double qscale = pow10(scales_.interaction);
  double y = intercept();
  for (Eigen::Index i = 0; i < x.size(); ++i) y += linear_(i) / lscale * x(i);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y += interaction_(i, i) / qscale * x(i) * x(i);
    for (Eigen::Index j = i + 1; j < x.size(); ++j)
      y += 2.0 * interaction_(i, j) / qscale * x(i) * x(j);
  }
  return y;
}

double QuadraticModel::term_magnitude(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const double lscale = pow10(scales_.linear);
  const double qscale = pow10(scales_.interaction);
  double m = std::abs(intercept());
  for (Eigen::Index i = 0; i < x.size(); ++i) m += std::abs(linear_(i) / lscale * x(i));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      m += std::abs(interaction_(i, j) / qscale * x(i) * x(j));
  return m;
}

bool QuadraticModel::has_quadratic_part() const {
  return interaction_.entries().cwiseAbs().maxCoeff() > 0.0;
}

QuadraticModel assemble_quadratic_model(const FitReport& report, std::vector<std::string> names,
                                        Scales scales) {
  if (!report.has_intercept()) throw SpecError("fit report has no intercept");
  const auto k = static_cast<Eigen::Index>(names.size());
  if (k < 1) throw SpecError("no variable names");
  const double lscale = pow10(scales.linear);
  const double qscale = pow10(scales.interaction);

  double intercept = 0.0;
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t c = 0; c < report.terms.size(); ++c) {
    const TermSpec& t = report.terms[c];
    const double beta = report.coefficients(static_cast<Eigen::Index>(c));
    check_term(t, static_cast<int>(k));
    switch (t.kind) {
      case TermKind::kIntercept: intercept = beta * lscale; break;
      case TermKind::kLinear: linear(t.i) = beta * lscale; break;
      case TermKind::kInteraction:
        b(t.i, t.j) = b(t.j, t.i) = 0.5 * beta * qscale;
        break;
      case TermKind::kQuadratic: b(t.i, t.i) = beta * qscale; break;
    }
  }
  return QuadraticModel(intercept, std::move(linear), linalg::SymmetricMatrix(b), scales,
                        std::move(names));
}

QuadraticModel assemble_quadratic_model(const FitReport& report, std::vector<std::string> names) {
  std::vector<double> lin;
  std::vector<double> quad;
  for (std::size_t c = 0; c < report.terms.size(); ++c) {
    const double beta = report.coefficients(static_cast<Eigen::Index>(c));
    switch (report.terms[c].kind) {
      case TermKind::kIntercept: break;
      case TermKind::kLinear: lin.push_back(beta); break;
      case TermKind::kInteraction: quad.push_back(0.5 * beta); break;
      case TermKind::kQuadratic: quad.push_back(beta); break;
    }
  }
  return assemble_quadratic_model(report, std::move(names),
                                  Scales{auto_exponent(lin), auto_exponent(quad)});
}

}  // namespace rsm::regression
