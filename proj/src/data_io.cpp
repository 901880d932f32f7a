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

#include "rsm/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "rsm/error.hpp"
#include "rsm/numfmt.hpp"
#include "rsm/stats.hpp"

namespace rsm::data {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_lines(const std::vector<std::size_t>& lines) {
  std::string s;
  for (std::size_t i = 0; i < lines.size(); ++i) s += (i ? ", " : "") + std::to_string(lines[i]);
  return s;
}

double sample_variance_centered(std::span<const double> w) {
  const double n = static_cast<double>(w.size());
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : w) ss += (v - mean) * (v - mean);
  return ss / n;
}

}  // namespace

// ---------------------------------------------------------------- Dataset

Dataset::Dataset(std::vector<std::int64_t> years, std::vector<double> response,
                 std::vector<std::string> predictor_names, Eigen::MatrixXd predictors,
                 std::string source, std::string year_column, std::string response_column)
    : years_(std::move(years)),
      response_(std::move(response)),
      names_(std::move(predictor_names)),
      predictors_(std::move(predictors)),
      source_(std::move(source)),
      year_column_(std::move(year_column)),
      response_column_(std::move(response_column)) {
  const std::size_t n = response_.size();
  if (n < 3) throw SchemaError("dataset needs at least 3 rows, got " + std::to_string(n));
  if (years_.size() != n || static_cast<std::size_t>(predictors_.rows()) != n)
    throw SchemaError("columns have different lengths");
  if (static_cast<std::size_t>(predictors_.cols()) != names_.size())
    throw SchemaError("predictor name count does not match predictor columns");
  std::set<std::string> seen{year_column_, response_column_};
  if (seen.size() != 2) throw SchemaError("year and response columns share a name");
  for (const auto& name : names_) {
    if (name.empty()) throw SchemaError("empty predictor name");
    if (!seen.insert(name).second) throw SchemaError("duplicate column name '" + name + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(response_[i] > 0.0) || !std::isfinite(response_[i]))
      throw DomainError("response must be finite and positive (row " + std::to_string(i + 1) +
                        ")");
  }
  if (!predictors_.allFinite()) throw DomainError("predictors must be finite");
}

std::size_t Dataset::column_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw SchemaError("unknown predictor column '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.years_ == b.years_ && a.response_ == b.response_ && a.names_ == b.names_ &&
         a.predictors_.rows() == b.predictors_.rows() &&
         a.predictors_.cols() == b.predictors_.cols() && a.predictors_ == b.predictors_ &&
         a.source_ == b.source_ && a.year_column_ == b.year_column_ &&
         a.response_column_ == b.response_column_;
}

// ---------------------------------------------------------------- CSV

Dataset load_dataset(std::istream& in, const CsvSchema& schema, std::string source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  bool header_seen = false;

  struct Row {
    std::size_t line;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      constexpr std::string_view kSource = "# source:";
      if (!header_seen && source.empty() && t.rfind(kSource, 0) == 0)
        source = trim(std::string_view(t).substr(kSource.size()));
      continue;
    }
    if (!header_seen) {
      header = split(t, ',');
      header_seen = true;
      continue;
    }
    rows.push_back({line_no, split(t, ',')});
  }
  if (!header_seen) throw SchemaError("input has no header row");

  auto find_col = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t year_col = find_col(schema.year_column);
  const std::size_t resp_col = find_col(schema.response_column);

  std::vector<std::string> names = schema.predictors;
  if (names.empty()) {
    for (const auto& h : header)
      if (h != schema.year_column && h != schema.response_column) names.push_back(h);
  }
  if (names.empty()) throw SchemaError("no predictor columns");
  std::vector<std::size_t> pred_cols;
  for (const auto& name : names) pred_cols.push_back(find_col(name));

  // Rows with missing cells are rejected as a group so the message lists all of them.
  std::vector<std::size_t> incomplete;
  for (const auto& row : rows) {
    bool missing = row.cells.size() != header.size();
    for (std::size_t c = 0; !missing && c < row.cells.size(); ++c) missing = row.cells[c].empty();
    if (missing) incomplete.push_back(row.line);
  }
  if (!incomplete.empty())
    throw ParseError("rows with missing values on lines " + join_lines(incomplete),
                     incomplete.front(), "");

  const std::size_t n = rows.size();
  std::vector<std::int64_t> years(n);
  std::vector<double> response(n);
  Eigen::MatrixXd preds(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(names.size()));

  auto number = [&](const Row& row, std::size_t col) {
    const auto v = fmt::parse_double(row.cells[col]);
    if (!v || !std::isfinite(*v))
      throw ParseError("non-numeric cell '" + row.cells[col] + "' at line " +
                           std::to_string(row.line) + ", column " + header[col],
                       row.line, header[col]);
    return *v;
  };

  for (std::size_t r = 0; r < n; ++r) {
    const Row& row = rows[r];
    const std::string& ycell = row.cells[year_col];
    std::int64_t year = 0;
    const auto res = std::from_chars(ycell.data(), ycell.data() + ycell.size(), year);
    if (res.ec != std::errc{} || res.ptr != ycell.data() + ycell.size())
      throw ParseError("non-integer year '" + ycell + "' at line " + std::to_string(row.line),
                       row.line, header[year_col]);
    years[r] = year;
    response[r] = number(row, resp_col);
    if (!(response[r] > 0.0))
      throw DomainError("non-positive response at line " + std::to_string(row.line), row.line);
    for (std::size_t k = 0; k < pred_cols.size(); ++k)
      preds(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = number(row, pred_cols[k]);
  }

  return Dataset(std::move(years), std::move(response), std::move(names), std::move(preds),
                 std::move(source), schema.year_column, schema.response_column);
}

void write_dataset(const Dataset& d, std::ostream& out) {
  if (!d.source().empty()) out << "# source: " << d.source() << '\n';
  out << d.year_column() << ',' << d.response_column();
  for (const auto& name : d.predictor_names()) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < d.size(); ++r) {
    out << d.years()[r] << ',' << fmt::shortest(d.response()[r]);
    for (Eigen::Index k = 0; k < d.predictors().cols(); ++k)
      out << ',' << fmt::shortest(d.predictors()(static_cast<Eigen::Index>(r), k));
    out << '\n';
  }
}

Dataset map_variables(const Dataset& d, const std::vector<std::string>& mapping) {
  if (mapping.empty()) throw SchemaError("variable mapping is empty");
  Eigen::MatrixXd preds(static_cast<Eigen::Index>(d.size()),
                        static_cast<Eigen::Index>(mapping.size()));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < mapping.size(); ++k) {
    preds.col(static_cast<Eigen::Index>(k)) =
        d.predictors().col(static_cast<Eigen::Index>(d.column_index(mapping[k])));
    names.push_back("x" + std::to_string(k + 1));
  }
  return Dataset(d.years(), d.response(), std::move(names), std::move(preds), d.source(),
                 d.year_column(), d.response_column());
}

// ---------------------------------------------------------------- Box-Cox

std::vector<double> box_cox(std::span<const double> series, const TransformSpec& spec) {
  const double lambda = spec.exponent;
  if (!std::isfinite(lambda)) throw InvalidInput("Box-Cox exponent must be finite");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = series[i];
    if (!(y > 0.0) || !std::isfinite(y))
      throw DomainError("Box-Cox needs positive values (element " + std::to_string(i) + ")");
    if (spec.convention == BoxCoxConvention::kPower) {
      out[i] = std::pow(y, lambda);
    } else {
      out[i] = lambda == 0.0 ? std::log(y) : std::expm1(lambda * std::log(y)) / lambda;
    }
  }
  return out;
}

std::vector<double> inverse_box_cox(std::span<const double> values, const TransformSpec& spec) {
  const double lambda = spec.exponent;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (spec.convention == BoxCoxConvention::kPower) {
      if (lambda == 0.0) throw DomainError("power transform with exponent 0 is not invertible");
      if (!(v > 0.0))
        throw DomainError("inverse power transform needs positive values (element " +
                          std::to_string(i) + ")");
      out[i] = std::pow(v, 1.0 / lambda);
    } else if (lambda == 0.0) {
      out[i] = std::exp(v);
    } else {
      const double base = lambda * v + 1.0;
      if (!(base > 0.0))
        throw DomainError("inverse shifted transform out of domain (element " +
                          std::to_string(i) + ")");
      out[i] = std::exp(std::log1p(lambda * v) / lambda);
    }
  }
  return out;
}

std::vector<double> Grid::points() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || hi < lo)
    throw InvalidInput("grid needs finite lo <= hi and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = lo + static_cast<double>(i) * step;
    if (std::abs(v) < 1e-9 * step) v = 0.0;  // land exactly on the log transform
    pts[i] = v;
  }
  return pts;
}

double box_cox_log_likelihood(std::span<const double> series, double exponent) {
  const std::size_t n = series.size();
  std::vector<double> logs(n);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(series[i] > 0.0)) throw DomainError("Box-Cox needs positive values");
    logs[i] = std::log(series[i]);
    m += logs[i];
  }
  m /= static_cast<double>(n);

  // Centering the logs at their mean (the log geometric mean) turns the
  // likelihood into -n/2 log var(w) - n m with
  // w = expm1(lambda (log y - m)) / lambda, which stays accurate for large
  // |lambda| and for lambda near 0.
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double centered = logs[i] - m;
    w[i] = exponent == 0.0 ? centered : std::expm1(exponent * centered) / exponent;
  }
  const double var = sample_variance_centered(w);
  if (!(var > 0.0)) throw DegenerateData("transformed series has zero variance");
  return -0.5 * static_cast<double>(n) * std::log(var) - static_cast<double>(n) * m;
}

BoxCoxFit box_cox_mle(std::span<const double> series, const Grid& grid) {
  if (series.size() < 8) throw InvalidInput("box_cox_mle needs at least 8 values");
  if (std::all_of(series.begin(), series.end(), [&](double v) { return v == series[0]; }))
    throw DegenerateData("constant series");

  BoxCoxFit fit;
  fit.grid = grid.points();
  fit.trace.reserve(fit.grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < fit.grid.size(); ++i) {
    fit.trace.push_back(box_cox_log_likelihood(series, fit.grid[i]));
    const double cur = fit.trace[i];
    const double top = fit.trace[best];
    if (cur > top || (cur == top && std::abs(fit.grid[i]) < std::abs(fit.grid[best]))) best = i;
  }
  fit.exponent = fit.grid[best];
  fit.log_likelihood = fit.trace[best];
  return fit;
}

// ---------------------------------------------------------------- normality

NormalityResult normality_test(std::span<const double> series, double alpha) {
  const std::size_t n = series.size();
  if (n < 8) throw InvalidInput("normality_test needs at least 8 values");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");

  std::vector<double> x(series.begin(), series.end());
  std::sort(x.begin(), x.end());
  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= nd;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (nd - 1.0));
  if (!(sd > 0.0)) throw DegenerateData("series has zero variance");

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = stats::normal_cdf((x[i] - mean) / sd);
    // log(1 - F(z)) = log F(-z) keeps precision in the upper tail.
    const double log_upper = std::log(stats::normal_cdf(-(x[n - 1 - i] - mean) / sd));
    sum += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + log_upper);
  }

  NormalityResult r;
  r.alpha = alpha;
  r.statistic = -nd - sum / nd;
  r.corrected = r.statistic * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
  const double a = r.corrected;
  if (a >= 0.6) {
    r.p_value = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
  } else if (a >= 0.34) {
    r.p_value = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
  } else if (a >= 0.2) {
    r.p_value = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
  } else {
    r.p_value = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.reject = r.p_value < alpha;
  return r;
}

// ---------------------------------------------------------------- synthetic

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double SyntheticConfig::model_value(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double y = intercept + linear.dot(x);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i; j < x.size(); ++j) y += second_order(i, j) * x(i) * x(j);
  return y;
}

Dataset generate_synthetic(const SyntheticConfig& config) {
  const std::size_t k = config.predictor_names.size();
  const auto ki = static_cast<Eigen::Index>(k);
  if (config.n < 3) throw GenerationError("synthetic dataset needs n >= 3, got " +
                                          std::to_string(config.n));
  if (k == 0) throw GenerationError("no predictors configured");
  if (config.ranges.size() != k || config.linear.size() != ki ||
      config.second_order.rows() != ki || config.second_order.cols() != ki)
    throw GenerationError("coefficient or range dimensions do not match the predictor count");
  if (!(config.noise_sd >= 0.0)) throw GenerationError("noise_sd must be >= 0");

  SplitMix64 rng(config.seed);
  const auto n = static_cast<Eigen::Index>(config.n);
  Eigen::MatrixXd preds(n, ki);
  std::vector<double> transformed(config.n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < ki; ++c) {
      const auto [lo, hi] = config.ranges[static_cast<std::size_t>(c)];
      preds(r, c) = lo + (hi - lo) * rng.uniform();
    }
    double y = config.model_value(preds.row(r).transpose());
    if (config.noise_sd > 0.0) y += config.noise_sd * rng.normal();
    transformed[static_cast<std::size_t>(r)] = y;
  }

  std::vector<double> response(config.n);
  for (std::size_t r = 0; r < config.n; ++r) {
    if (!config.transform.applied) {
      response[r] = transformed[r];
    } else {
      try {
        response[r] =
            inverse_box_cox(std::span<const double>(&transformed[r], 1), config.transform)[0];
      } catch (const DomainError&) {
        throw GenerationError("model value " + fmt::shortest(transformed[r]) + " at row " +
                              std::to_string(r + 1) + " is outside the inverse transform domain");
      }
    }
    if (!(response[r] > 0.0) || !std::isfinite(response[r]))
      throw GenerationError("row " + std::to_string(r + 1) + " produced a non-positive response");
  }

  std::vector<std::int64_t> years(config.n);
  for (std::size_t r = 0; r < config.n; ++r)
    years[r] = config.first_year + static_cast<std::int64_t>(r);

  return Dataset(std::move(years), std::move(response), config.predictor_names, std::move(preds),
                 "synthetic seed=" + std::to_string(config.seed), config.year_column,
                 config.response_column);
}

SyntheticConfig parse_synthetic_config(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key = value at line " + std::to_string(line_no), line_no, "");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (!kv.emplace(key, std::make_pair(trim(std::string_view(t).substr(eq + 1)), line_no)).second)
      throw ParseError("duplicate key '" + key + "' at line " + std::to_string(line_no), line_no,
                       key);
  }

  auto num = [&](const std::string& key, const std::string& value) {
    const auto v = fmt::parse_double(value);
    if (!v) throw ParseError("key '" + key + "' needs a number", kv.at(key).second, key);
    return *v;
  };
  auto integer = [&](const std::string& key) -> std::int64_t {
    const std::string& value = kv.at(key).first;
    std::int64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
      throw ParseError("key '" + key + "' needs an integer", kv.at(key).second, key);
    return out;
  };

  SyntheticConfig cfg;
  if (!kv.count("names")) throw SchemaError("synthetic config needs a 'names' key");
  cfg.predictor_names = split(kv.at("names").first, ',');
  const std::size_t k = cfg.predictor_names.size();
  const auto ki = static_cast<Eigen::Index>(k);
  cfg.linear = Eigen::VectorXd::Zero(ki);
  cfg.second_order = Eigen::MatrixXd::Zero(ki, ki);
  cfg.ranges.assign(k, {0.0, 1.0});

  auto name_index = [&](const std::string& key, const std::string& name) {
    const auto it = std::find(cfg.predictor_names.begin(), cfg.predictor_names.end(), name);
    if (it == cfg.predictor_names.end())
      throw SchemaError("key '" + key + "' refers to unknown predictor '" + name + "'");
    return static_cast<Eigen::Index>(it - cfg.predictor_names.begin());
  };

  for (const auto& [key, entry] : kv) {
    const std::string& value = entry.first;
    if (key == "names") {
      continue;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(integer(key));
    } else if (key == "n") {
      const auto n = integer(key);
      if (n < 0) throw ParseError("n must be >= 0", entry.second, key);
      cfg.n = static_cast<std::size_t>(n);
    } else if (key == "noise_sd") {
      cfg.noise_sd = num(key, value);
    } else if (key == "first_year") {
      cfg.first_year = integer(key);
    } else if (key == "exponent") {
      cfg.transform.exponent = num(key, value);
    } else if (key == "convention") {
      if (value == "power") cfg.transform.convention = BoxCoxConvention::kPower;
      else if (value == "shifted") cfg.transform.convention = BoxCoxConvention::kShiftedPower;
      else throw ParseError("convention must be 'power' or 'shifted'", entry.second, key);
    } else if (key == "year_column") {
      cfg.year_column = value;
    } else if (key == "response_column") {
      cfg.response_column = value;
    } else if (key == "intercept") {
      cfg.intercept = num(key, value);
    } else if (key.rfind("coef.", 0) == 0) {
      const std::string term = key.substr(5);
      const double c = num(key, value);
      if (const auto star = term.find('*'); star != std::string::npos) {
        auto i = name_index(key, term.substr(0, star));
        auto j = name_index(key, term.substr(star + 1));
        if (i == j) throw SchemaError("use '" + term.substr(0, star) + "^2' for squares");
        if (i > j) std::swap(i, j);
        cfg.second_order(i, j) = c;
      } else if (term.size() > 2 && term.compare(term.size() - 2, 2, "^2") == 0) {
        const auto i = name_index(key, term.substr(0, term.size() - 2));
        cfg.second_order(i, i) = c;
      } else {
        cfg.linear(name_index(key, term)) = c;
      }
    } else if (key.rfind("range.", 0) == 0) {
      const auto i = name_index(key, key.substr(6));
      const auto parts = split(value, ',');
      if (parts.size() != 2) throw ParseError("range needs 'lo, hi'", entry.second, key);
      const double lo = num(key, parts[0]);
      const double hi = num(key, parts[1]);
      if (!(lo <= hi)) throw ParseError("range needs lo <= hi", entry.second, key);
      cfg.ranges[static_cast<std::size_t>(i)] = {lo, hi};
    } else {
      throw ParseError("unknown key '" + key + "'", entry.second, key);
    }
  }
  return cfg;
}

}  // namespace rsm::data
