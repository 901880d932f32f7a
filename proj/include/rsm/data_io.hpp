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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rsm::data {

/// Yearly response series with named predictor columns. Immutable once built;
/// the constructor enforces equal column lengths (>= 3), a strictly positive
/// response and unique column names.
class Dataset {
 public:
  Dataset(std::vector<std::int64_t> years, std::vector<double> response,
          std::vector<std::string> predictor_names, Eigen::MatrixXd predictors,
          std::string source = {}, std::string year_column = "year",
          std::string response_column = "co2");

  std::size_t size() const noexcept { return response_.size(); }
  std::size_t predictor_count() const noexcept { return names_.size(); }

  const std::vector<std::int64_t>& years() const noexcept { return years_; }
  const std::vector<double>& response() const noexcept { return response_; }
  const std::vector<std::string>& predictor_names() const noexcept { return names_; }
  const Eigen::MatrixXd& predictors() const noexcept { return predictors_; }
  const std::string& source() const noexcept { return source_; }
  const std::string& year_column() const noexcept { return year_column_; }
  const std::string& response_column() const noexcept { return response_column_; }

  /// Index of a predictor column; throws SchemaError when absent.
  std::size_t column_index(const std::string& name) const;

  friend bool operator==(const Dataset&, const Dataset&);

 private:
  std::vector<std::int64_t> years_;
  std::vector<double> response_;
  std::vector<std::string> names_;
  Eigen::MatrixXd predictors_;
  std::string source_;
  std::string year_column_;
  std::string response_column_;
};

/// Which CSV columns to read. An empty predictor list means "every column
/// other than the year and response columns, in file order".
struct CsvSchema {
  std::string year_column = "year";
  std::string response_column = "co2";
  std::vector<std::string> predictors;
};

/// Reads a headered CSV. Lines starting with '#' are skipped, except that a
/// leading "# source: ..." line sets the dataset's source label.
Dataset load_dataset(std::istream& in, const CsvSchema& schema, std::string source = {});

/// Writes the dataset in the format load_dataset reads, numbers in shortest
/// round-trip form, so that load(write(d)) == d bit for bit.
void write_dataset(const Dataset& d, std::ostream& out);

/// Keeps the listed predictors in order and renames them x1..xk.
Dataset map_variables(const Dataset& d, const std::vector<std::string>& mapping);

enum class BoxCoxConvention { kPower, kShiftedPower };

/// y -> y^lambda (power) or y -> (y^lambda - 1) / lambda, ln y at 0 (shifted).
struct TransformSpec {
  double exponent = 1.0;
  BoxCoxConvention convention = BoxCoxConvention::kPower;
  bool applied = false;
};

std::vector<double> box_cox(std::span<const double> series, const TransformSpec& spec);
std::vector<double> inverse_box_cox(std::span<const double> values, const TransformSpec& spec);

struct Grid {
  double lo = -5.0;
  double hi = 5.0;
  double step = 0.001;

  std::vector<double> points() const;
};

struct BoxCoxFit {
  double exponent = 0.0;
  double log_likelihood = 0.0;
  std::vector<double> grid;
  std::vector<double> trace;  // profile log-likelihood at each grid point
};

/// Grid maximizer of the shifted-power profile log-likelihood. Ties go to the
/// smallest |lambda|. Throws DegenerateData for constant series.
BoxCoxFit box_cox_mle(std::span<const double> series, const Grid& grid = {});

/// Shifted-power profile log-likelihood at one exponent.
double box_cox_log_likelihood(std::span<const double> series, double exponent);

struct NormalityResult {
  double statistic = 0.0;   // A^2
  double corrected = 0.0;   // A^2 (1 + 0.75/n + 2.25/n^2)
  double p_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
};

/// Anderson-Darling test against a normal with estimated mean and variance.
NormalityResult normality_test(std::span<const double> series, double alpha = 0.05);

/// Deterministic stand-in data: predictors uniform on per-column ranges, the
/// transformed response equals the quadratic truth plus Gaussian noise.
struct SyntheticConfig {
  std::uint64_t seed = 1;
  std::size_t n = 50;
  double noise_sd = 0.0;
  std::int64_t first_year = 1959;
  TransformSpec transform{-2.376, BoxCoxConvention::kPower, true};
  std::string year_column = "year";
  std::string response_column = "co2";
  std::vector<std::string> predictor_names;
  std::vector<std::pair<double, double>> ranges;
  double intercept = 0.0;
  Eigen::VectorXd linear;
  /// Upper-triangular: (i, j) with i < j is the coefficient of x_i x_j,
  /// (i, i) the coefficient of x_i^2.
  Eigen::MatrixXd second_order;

  /// Value of the truth at x, before noise and inverse transform.
  double model_value(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

Dataset generate_synthetic(const SyntheticConfig& config);

/// Key-value config: `key = value`, '#' comments. Keys: seed, n, noise_sd,
/// first_year, exponent, convention (power|shifted), names (comma list),
/// year_column, response_column, intercept, coef.<term>, range.<name> = lo,hi.
/// Terms are written `x1`, `x1*x3` or `x2^2` using the declared names.
SyntheticConfig parse_synthetic_config(std::istream& in);

/// SplitMix64 with hand-rolled uniform/normal draws, so generated bytes do not
/// depend on the standard library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rsm::data
