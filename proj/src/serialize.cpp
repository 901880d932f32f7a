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

#include "rsm/serialize.hpp"

#include <algorithm>
#include <cmath>

#include "rsm/error.hpp"

namespace rsm::io {
namespace {

Json vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json mat(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec(m.row(r).transpose()));
  return rows;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string("'") + what + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(std::string("'") + what + "' must be finite");
  return v;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

Eigen::VectorXd read_vec(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string("'") + what + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = number(j[k], what);
  return v;
}

void check_format(const Json& j, const std::string& format) {
  if (!j.is_object()) throw SchemaError("document is not a JSON object");
  const Json& f = field(j, "format");
  if (!f.is_string() || f.get<std::string>() != format)
    throw SchemaError("expected format '" + format + "'");
  if (integer(field(j, "version"), "version") != kFormatVersion)
    throw SchemaError("unsupported " + format + " version");
}

std::string kind_name(regression::TermKind k) {
  switch (k) {
    case regression::TermKind::kIntercept: return "intercept";
    case regression::TermKind::kLinear: return "linear";
    case regression::TermKind::kInteraction: return "interaction";
    case regression::TermKind::kQuadratic: return "quadratic";
  }
  return "?";
}

Json term_json(const regression::TermSpec& t, const std::string& label) {
  Json j{{"term", label}, {"kind", kind_name(t.kind)}};
  if (t.i >= 0) j["i"] = t.i + 1;
  if (t.j >= 0 && t.kind != regression::TermKind::kLinear) j["j"] = t.j + 1;
  return j;
}

Json index_list(const std::vector<Eigen::Index>& idx) {
  Json a = Json::array();
  for (Eigen::Index k : idx) a.push_back(k + 1);
  return a;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Json model_to_json(const regression::QuadraticModel& m) {
  Json j;
  j["format"] = "rsmkit.quadratic_model";
  j["version"] = kFormatVersion;
  j["variables"] = m.names();
  j["scale"] = {{"linear_exponent", m.scales().linear},
                {"interaction_exponent", m.scales().interaction}};
  j["intercept"] = m.intercept_scaled();
  j["linear"] = vec(m.linear_scaled());
  j["interaction_matrix"] = mat(m.interaction_scaled().entries());
  return j;
}

regression::QuadraticModel model_from_json(const Json& j) {
  check_format(j, "rsmkit.quadratic_model");
  const Json& vars = field(j, "variables");
  if (!vars.is_array() || vars.empty()) throw SchemaError("'variables' must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) throw SchemaError("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  const auto k = static_cast<Eigen::Index>(names.size());
  const Json& scale = field(j, "scale");
  regression::Scales scales{integer(field(scale, "linear_exponent"), "linear_exponent"),
                            integer(field(scale, "interaction_exponent"), "interaction_exponent")};
  const double intercept = number(field(j, "intercept"), "intercept");
  Eigen::VectorXd linear = read_vec(field(j, "linear"), "linear");
  if (linear.size() != k) throw SchemaError("'linear' length does not match 'variables'");

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
  const bool has_matrix = j.contains("interaction_matrix");
  const bool has_list = j.contains("interactions");
  if (has_matrix == has_list)
    throw SchemaError("give exactly one of 'interaction_matrix' and 'interactions'");
  if (has_matrix) {
    const Json& rows = j.at("interaction_matrix");
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != k)
      throw SchemaError("'interaction_matrix' must have one row per variable");
    for (Eigen::Index r = 0; r < k; ++r) {
      const Eigen::VectorXd row = read_vec(rows[static_cast<std::size_t>(r)], "interaction_matrix");
      if (row.size() != k) throw SchemaError("'interaction_matrix' must be square");
      b.row(r) = row.transpose();
    }
    const double peak = b.cwiseAbs().maxCoeff();
    if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * peak)
      throw SchemaError("'interaction_matrix' is not symmetric");
  } else {
    const Json& list = j.at("interactions");
    if (!list.is_array()) throw SchemaError("'interactions' must be an array");
    for (const auto& e : list) {
      const int a = integer(field(e, "i"), "i");
      const int c = integer(field(e, "j"), "j");
      const double beta = number(field(e, "beta"), "beta");
      if (a < 1 || c < 1 || a > k || c > k)
        throw SchemaError("interaction index out of range");
      const Eigen::Index p = std::min(a, c) - 1, q = std::max(a, c) - 1;
      if (b(p, q) != 0.0) throw SchemaError("interaction listed twice");
      if (p == q) b(p, p) = beta;
      else b(p, q) = b(q, p) = 0.5 * beta;
    }
  }
  return regression::QuadraticModel(intercept, std::move(linear), linalg::SymmetricMatrix(b),
                                    scales, std::move(names));
}

Json fit_report_to_json(const regression::FitReport& r) {
  Json j;
  j["format"] = "rsmkit.fit_report";
  j["version"] = kFormatVersion;
  j["n"] = r.n;
  j["df_model"] = r.df_model;
  j["df_resid"] = r.df_resid;
  j["sse"] = r.sse;
  j["sst"] = r.sst;
  j["r2"] = r.r2;
  j["adj_r2"] = r.adj_r2;
  j["f_stat"] = r.f_stat;
  j["f_p_value"] = r.f_p_value;
  Json terms = Json::array();
  for (std::size_t c = 0; c < r.terms.size(); ++c) {
    const auto e = static_cast<Eigen::Index>(c);
    Json t = term_json(r.terms[c], r.labels[c]);
    t["coefficient"] = r.coefficients(e);
    t["std_error"] = r.std_errors(e);
    t["t"] = r.t_stats(e);
    t["p"] = r.p_values(e);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json stepwise_to_json(const regression::StepwiseResult& s,
                      const std::vector<std::string>& names) {
  Json j;
  Json selected = Json::array();
  for (const auto& t : s.selected) selected.push_back(t.label(names));
  j["selected"] = std::move(selected);
  j["stop_reason"] = s.stop_reason;
  Json trail = Json::array();
  for (const auto& rec : s.trail) {
    Json step;
    step["step"] = rec.step;
    step["entered"] = rec.entered ? Json(rec.entered->label(names)) : Json(nullptr);
    if (rec.entered && rec.entered->kind != regression::TermKind::kIntercept) {
      step["f_stat"] = rec.f_stat;
      step["p_value"] = rec.p_value;
    }
    if (!rec.note.empty()) step["note"] = rec.note;
    Json cands = Json::array();
    for (const auto& c : rec.candidates) {
      Json cj{{"term", c.term.label(names)}, {"admissible", c.admissible}};
      if (c.admissible) {
        cj["f_stat"] = c.f_stat;
        cj["p_value"] = c.p_value;
      } else {
        cj["note"] = c.note;
      }
      cands.push_back(std::move(cj));
    }
    step["candidates"] = std::move(cands);
    trail.push_back(std::move(step));
  }
  j["trail"] = std::move(trail);
  return j;
}

Json normality_to_json(const data::NormalityResult& r) {
  return {{"test", "anderson-darling"}, {"statistic", r.statistic}, {"corrected", r.corrected},
          {"p_value", r.p_value},       {"alpha", r.alpha},         {"reject", r.reject}};
}

Json transform_to_json(const data::TransformSpec& t) {
  return {{"applied", t.applied},
          {"convention", t.convention == data::BoxCoxConvention::kPower ? "power" : "shifted"},
          {"exponent", t.exponent}};
}

Json canonical_to_json(const canonical::CanonicalModel& cm) {
  Json j;
  j["format"] = "rsmkit.canonical_model";
  j["version"] = kFormatVersion;
  j["zero_tolerance"] = cm.zero_tolerance();
  j["model"] = model_to_json(cm.model());
  j["classification"] = canonical::to_string(cm.classification());
  j["eigenvalues"] = vec(cm.eigenvalues());
  j["eigenvalues_scaled"] = vec(cm.scaled_eigen().eigenvalues);
  Json vecs = Json::array();
  for (Eigen::Index k = 0; k < cm.dimension(); ++k) vecs.push_back(vec(cm.eigenvectors().col(k)));
  j["eigenvectors"] = std::move(vecs);
  j["jacobi_sweeps"] = cm.scaled_eigen().sweeps;
  j["generalized_inverse"] = mat(cm.generalized_inverse());
  j["shift"] = vec(cm.shift());
  const auto xs = cm.stationary_point();
  j["stationary_point"] = xs ? vec(*xs) : Json(nullptr);
  j["intercept"] = cm.model().intercept();
  j["quadratic_offset"] = cm.quadratic_offset();
  j["shifted_intercept"] = cm.shifted_intercept();
  j["null_directions"] = index_list(cm.null_directions());
  j["null_coefficients"] = vec(cm.null_coefficients());
  j["gradient_residual"] = cm.gradient_residual();
  return j;
}

canonical::CanonicalModel canonical_from_json(const Json& j) {
  check_format(j, "rsmkit.canonical_model");
  const double tol = number(field(j, "zero_tolerance"), "zero_tolerance");
  if (!(tol >= 0.0)) throw SchemaError("'zero_tolerance' must be non-negative");
  auto cm = canonical::decompose(model_from_json(field(j, "model")), tol);
  const Eigen::VectorXd stored = read_vec(field(j, "eigenvalues"), "eigenvalues");
  if (stored.size() != cm.dimension())
    throw SchemaError("stored spectrum does not match the embedded model");
  const double peak = std::max(cm.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
  if ((stored - cm.eigenvalues()).cwiseAbs().maxCoeff() > 1e-12 * peak)
    throw SchemaError("stored spectrum does not match the embedded model");
  return cm;
}

Json region_to_json(const regions::ConfidenceRegion& r) {
  Json j;
  j["pair"] = regions::pair_label(r);
  j["i"] = r.i + 1;
  j["j"] = r.j + 1;
  j["kind"] = regions::to_string(r.kind);
  j["threshold"] = r.threshold;
  j["lambda_i"] = r.lambda_i;
  j["lambda_j"] = r.lambda_j;
  j["semiaxis_i"] = optional_number(r.semiaxis_i);
  j["semiaxis_j"] = optional_number(r.semiaxis_j);
  if (r.kind == regions::RegionKind::kElliptic) j["extremum"] = regions::to_string(r.extremum);
  return j;
}

Json magnitude_to_json(const budget::MagnitudeReport& r) {
  Json j;
  j["threshold"] = r.threshold;
  j["free_factor"] = r.free_factor;
  Json q = Json::array();
  for (const auto& b : r.quadratic)
    q.push_back({{"index", b.index + 1}, {"lambda", b.lambda}, {"bound", b.bound}});
  j["quadratic"] = std::move(q);
  j["max_quadratic_bound"] = r.max_quadratic_bound;
  Json n = Json::array();
  for (const auto& b : r.null)
    n.push_back({{"index", b.index + 1},
                 {"coefficient", b.coefficient},
                 {"bound", optional_number(b.bound)},
                 {"freedom_ratio", optional_number(b.freedom_ratio)},
                 {"free", b.free}});
  j["null"] = std::move(n);
  return j;
}

Json crossover_to_json(const budget::CrossoverReport& r) {
  Json j;
  j["null_index"] = r.null_index + 1;
  j["coefficient"] = r.coefficient;
  Json e = Json::array();
  for (const auto& x : r.entries)
    e.push_back({{"index", x.index + 1}, {"lambda", x.lambda}, {"m_star", x.m_star}});
  j["entries"] = std::move(e);
  j["m_star_min"] = r.m_star_min;
  j["m_star_max"] = r.m_star_max;
  j["order_min"] = budget::order_of_magnitude(r.m_star_min);
  j["order_max"] = budget::order_of_magnitude(r.m_star_max);
  j["shifted_intercept"] = r.shifted_intercept;
  j["relative_min"] = r.relative_min;
  j["relative_max"] = r.relative_max;
  if (r.reference_level) {
    j["reference_level"] = *r.reference_level;
    j["reference_relative_min"] = *r.reference_relative_min;
    j["reference_relative_max"] = *r.reference_relative_max;
  }
  return j;
}

Json uv_to_json(const budget::UVSystem& uv) {
  Json j;
  Json pairs = Json::array();
  for (const auto& p : uv.pairs)
    pairs.push_back({{"plus_index", p.plus_index + 1},
                     {"minus_index", p.minus_index + 1},
                     {"lambda", p.lambda},
                     {"coefficient", p.coefficient},
                     {"u", vec(p.u)},
                     {"v", vec(p.v)}});
  j["pairs"] = std::move(pairs);
  j["null_directions"] = index_list(uv.null_directions);
  return j;
}

Json trade_to_json(const budget::TradeScenario& s) {
  Json j;
  j["threshold"] = s.threshold;
  j["pin"] = {{"product", s.pin.pair + 1}, {"factor", budget::to_string(s.pin.factor)}};
  j["pinned_form"] = vec(s.pinned_form);
  j["drive"] = s.drive + 1;
  j["offset_variable"] = s.offset_variable + 1;
  j["delta"] = s.delta;
  j["ratio"] = s.ratio;
  j["offset"] = s.offset;
  j["direction"] = vec(s.direction);
  Json res = Json::array();
  for (const auto& r : s.residuals)
    res.push_back({{"product", r.pair + 1},
                   {"lambda", r.lambda},
                   {"product_bound", r.product_bound},
                   {"driven_factor", budget::to_string(r.driven_factor)},
                   {"driven_per_unit", r.driven_per_unit},
                   {"driven_value", r.driven_value},
                   {"bounded_factor", budget::to_string(r.bounded_factor)},
                   {"bounded_form", vec(r.bounded_form)},
                   {"bound", r.bound},
                   {"coupled", r.coupled}});
  j["residuals"] = std::move(res);
  Json free = Json::array();
  for (const auto& f : s.free) free.push_back({{"name", f.name}, {"form", vec(f.form)}});
  j["free"] = std::move(free);
  return j;
}

}  // namespace rsm::io
