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


#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "rsm/data_io.hpp"
#include "rsm/error.hpp"

namespace rsm::data {
namespace {

const char* kCsv =
    "# source: test series\n"
    "year,co2,gas,liquid\n"
    "2000,370.5,1.5,2\n"
    "# mid comment\n"
    "2001,371.25,1.75,2.5\n"
    "2002,372,2,3.125\n";

Dataset load(const std::string& text, CsvSchema schema = {}) {
  std::istringstream in(text);
  return load_dataset(in, schema);
}

TEST(Csv, LoadsColumnsAndSource) {
  const Dataset d = load(kCsv);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.source(), "test series");
  EXPECT_EQ(d.predictor_names(), (std::vector<std::string>{"gas", "liquid"}));
  EXPECT_EQ(d.years()[2], 2002);
  EXPECT_EQ(d.response()[1], 371.25);
  EXPECT_EQ(d.predictors()(2, 1), 3.125);
}

TEST(Csv, WriteLoadRoundTripIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  Eigen::MatrixXd p(20, 3);
  std::vector<double> y(20);
  std::vector<std::int64_t> years(20);
  for (int r = 0; r < 20; ++r) {
    for (int c = 0; c < 3; ++c) p(r, c) = u(rng) / 7.0;
    y[r] = 300.0 + std::abs(u(rng)) / 3.0;
    years[r] = 1990 + r;
  }
  const Dataset d(years, y, {"a", "b", "c"}, p, "rt");
  std::ostringstream out;
  write_dataset(d, out);
  EXPECT_EQ(load(out.str()), d);
}

TEST(Csv, SelectsNamedPredictors) {
  CsvSchema s;
  s.predictors = {"liquid"};
  const Dataset d = load(kCsv, s);
  EXPECT_EQ(d.predictor_count(), 1u);
  EXPECT_EQ(d.predictors()(0, 0), 2.0);
}

TEST(Csv, ReportsBadCellWithLine) {
  try {
    load("year,co2,a\n2000,1,2\n2001,abc,3\n2002,1,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), "co2");
  }
}

TEST(Csv, ListsAllIncompleteRows) {
  try {
    load("year,co2,a\n2000,1,\n2001,2,3\n2002,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("2, 4"), std::string::npos) << e.what();
  }
}

TEST(Csv, SchemaErrors) {
  EXPECT_THROW(load(""), SchemaError);
  EXPECT_THROW(load("year,ppm,a\n1,1,1\n2,1,1\n3,1,1\n"), SchemaError);
  EXPECT_THROW(load("year,co2\n1,1\n2,1\n3,1\n"), SchemaError);
  EXPECT_THROW(load("year,co2,a\n1,1,1\n2,1,1\n"), SchemaError);
  EXPECT_THROW(load("year,co2,a,a\n1,1,1,1\n2,1,1,1\n3,1,1,1\n"), SchemaError);
  EXPECT_THROW(load("year,co2,a\n1,-1,1\n2,1,1\n3,1,1\n"), DomainError);
  EXPECT_THROW(load("year,co2,a\n1.5,1,1\n2,1,1\n3,1,1\n"), ParseError);
}

TEST(MapVariables, RenamesInOrder) {
  const Dataset d = map_variables(load(kCsv), {"liquid", "gas"});
  EXPECT_EQ(d.predictor_names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(d.predictors()(0, 0), 2.0);
  EXPECT_EQ(d.predictors()(0, 1), 1.5);
  EXPECT_THROW(map_variables(load(kCsv), {"coal"}), SchemaError);
}

TEST(BoxCox, Conventions) {
  const std::vector<double> y{0.5, 2.0, 10.0};
  const auto p = box_cox(y, {-2.0, BoxCoxConvention::kPower, true});
  EXPECT_DOUBLE_EQ(p[1], 0.25);
  const auto s = box_cox(y, {2.0, BoxCoxConvention::kShiftedPower, true});
  EXPECT_DOUBLE_EQ(s[2], (100.0 - 1.0) / 2.0);
  const auto l = box_cox(y, {0.0, BoxCoxConvention::kShiftedPower, true});
  EXPECT_DOUBLE_EQ(l[0], std::log(0.5));
}

TEST(BoxCox, InverseRoundTrip) {
  const std::vector<double> y{280.0, 315.5, 387.25};
  for (auto conv : {BoxCoxConvention::kPower, BoxCoxConvention::kShiftedPower}) {
    for (double lambda : {-2.376, -0.5, 0.3, 1.0}) {
      const TransformSpec t{lambda, conv, true};
      const auto back = inverse_box_cox(box_cox(y, t), t);
      for (std::size_t i = 0; i < y.size(); ++i) {
        // The shifted inverse recovers y^lambda from 1 + lambda v, which
        // cancels when y^lambda is small.
        const double cond = conv == BoxCoxConvention::kPower ? 1.0 : std::max(1.0, std::pow(y[i], -lambda));
        EXPECT_NEAR(back[i], y[i], 1e-13 * cond * y[i]);
      }
    }
  }
  const TransformSpec log{0.0, BoxCoxConvention::kShiftedPower, true};
  EXPECT_NEAR(inverse_box_cox(box_cox(y, log), log)[1], 315.5, 1e-12);
}

TEST(BoxCox, DomainErrors) {
  const std::vector<double> bad{1.0, 0.0};
  EXPECT_THROW(box_cox(bad, {1.0, BoxCoxConvention::kPower, true}), DomainError);
  const std::vector<double> neg{-1.0};
  EXPECT_THROW(inverse_box_cox(neg, {-2.0, BoxCoxConvention::kPower, true}), DomainError);
  EXPECT_THROW(inverse_box_cox(neg, {2.0, BoxCoxConvention::kShiftedPower, true}), DomainError);
  const std::vector<double> one{1.0};
  EXPECT_THROW(inverse_box_cox(one, {0.0, BoxCoxConvention::kPower, true}), DomainError);
}

// Textbook profile likelihood: -n/2 log(sigma^2) + (lambda - 1) sum log y,
// with sigma^2 the ML variance of (y^lambda - 1) / lambda.
double brute_force_likelihood(const std::vector<double>& y, double lambda) {
  const auto n = static_cast<long double>(y.size());
  long double mean = 0, sum_log = 0;
  std::vector<long double> w;
  for (double v : y) {
    const long double t = lambda == 0.0 ? std::log((long double)v)
                                        : (std::pow((long double)v, (long double)lambda) - 1) / lambda;
    w.push_back(t);
    mean += t;
    sum_log += std::log((long double)v);
  }
  mean /= n;
  long double ss = 0;
  for (auto t : w) ss += (t - mean) * (t - mean);
  return static_cast<double>(-n / 2 * std::log(ss / n) + (lambda - 1) * sum_log);
}

std::vector<double> skewed_series(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.2);
  std::vector<double> y;
  for (int i = 0; i < n; ++i) y.push_back(std::exp(1.5 + g(rng)));
  return y;
}

TEST(BoxCoxMle, LikelihoodMatchesBruteForce) {
  const auto y = skewed_series(5, 40);
  for (double lambda : {-3.0, -1.0, -0.25, 0.0, 0.5, 2.0}) {
    const double ref = brute_force_likelihood(y, lambda);
    EXPECT_NEAR(box_cox_log_likelihood(y, lambda), ref, 1e-9 * std::abs(ref));
  }
}

TEST(BoxCoxMle, GridMaximizerMatchesBruteForceScan) {
  const auto y = skewed_series(6, 60);
  const BoxCoxFit fit = box_cox_mle(y, {-3.0, 3.0, 0.01});
  double best = -std::numeric_limits<double>::infinity(), arg = 0;
  for (int k = 0; k <= 600; ++k) {
    const double lambda = -3.0 + 0.01 * k;
    const double v = brute_force_likelihood(y, std::abs(lambda) < 1e-12 ? 0.0 : lambda);
    if (v > best) best = v, arg = lambda;
  }
  EXPECT_NEAR(fit.exponent, arg, 1e-9);
  EXPECT_EQ(fit.grid.size(), 601u);
  EXPECT_EQ(fit.trace.size(), 601u);
}

TEST(BoxCoxMle, LognormalDataPrefersLog) {
  const auto y = skewed_series(7, 400);
  EXPECT_NEAR(box_cox_mle(y, {-2.0, 2.0, 0.01}).exponent, 0.0, 0.5);
}

TEST(BoxCoxMle, Errors) {
  EXPECT_THROW(box_cox_mle(std::vector<double>(10, 4.0)), DegenerateData);
  EXPECT_THROW(box_cox_mle(std::vector<double>{1, 2, 3}), InvalidInput);
  EXPECT_THROW((Grid{1.0, 0.0, 0.1}.points()), InvalidInput);
}

TEST(Grid, HitsZeroExactly) {
  const auto pts = Grid{-1.0, 1.0, 0.1}.points();
  EXPECT_EQ(pts.size(), 21u);
  EXPECT_EQ(pts[10], 0.0);
}

TEST(Normality, MatchesIndependentStatistic) {
  // Statistic from an independent implementation for this sample.
  const std::vector<double> x{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 3.9, 4.1, 3.0, 2.2, 6.3};
  const NormalityResult r = normality_test(x);
  EXPECT_NEAR(r.statistic, 0.29286086754788343, 1e-12);
  const double n = 12.0;
  EXPECT_DOUBLE_EQ(r.corrected, r.statistic * (1 + 0.75 / n + 2.25 / (n * n)));
  EXPECT_FALSE(r.reject);
}

// A^2 = -n - (1/n) sum (2i - 1) [log F(x_(i)) + log(1 - F(x_(n+1-i)))].
double ad_reference(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double m = 0, ss = 0;
  for (double v : x) m += v;
  m /= n;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / (n - 1));
  auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double s = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const double lo = cdf((x[i - 1] - m) / sd);
    const double hi = cdf((x[x.size() - i] - m) / sd);
    s += (2.0 * i - 1) * (std::log(lo) + std::log1p(-hi));
  }
  return -n - s / n;
}

TEST(Normality, AgreesWithDirectSum) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x;
    for (int i = 0; i < 30; ++i) x.push_back(trial % 2 ? g(rng) : std::exp(g(rng)));
    EXPECT_NEAR(normality_test(x).statistic, ad_reference(x), 1e-10);
  }
}

TEST(Normality, RejectsSkewedData) {
  std::vector<double> x;
  for (int i = 1; i <= 60; ++i) x.push_back(std::exp(0.1 * i * i / 10.0));
  const NormalityResult r = normality_test(x, 0.05);
  EXPECT_TRUE(r.reject);
  EXPECT_LT(r.p_value, 0.05);
}

TEST(Normality, Errors) {
  EXPECT_THROW(normality_test(std::vector<double>(10, 1.0)), DegenerateData);
  EXPECT_THROW(normality_test(std::vector<double>{1, 2}), InvalidInput);
  EXPECT_THROW(normality_test(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}, 1.5), InvalidInput);
}

TEST(SplitMix64, KnownSequence) {
  // Reference values of the SplitMix64 generator for seed 0.
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
}

TEST(SplitMix64, NormalMoments) {
  SplitMix64 r(9);
  double m = 0, m2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    m += z;
    m2 += z * z;
  }
  EXPECT_NEAR(m / n, 0.0, 0.01);
  EXPECT_NEAR(m2 / n, 1.0, 0.01);
}

const char* kSynth =
    "seed = 4\n"
    "n = 12\n"
    "names = a, b\n"
    "exponent = -1\n"
    "intercept = 0.01\n"
    "coef.a = 1e-4\n"
    "coef.a*b = 2e-6\n"
    "coef.b^2 = -1e-6\n"
    "range.a = -1, 1\n"
    "range.b = 0, 2\n";

TEST(Synthetic, ParsesConfig) {
  std::istringstream in(kSynth);
  const SyntheticConfig c = parse_synthetic_config(in);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(c.n, 12u);
  EXPECT_EQ(c.linear(0), 1e-4);
  EXPECT_EQ(c.second_order(0, 1), 2e-6);
  EXPECT_EQ(c.second_order(1, 1), -1e-6);
  EXPECT_EQ(c.ranges[1].second, 2.0);
  EXPECT_TRUE(c.transform.applied);
}

TEST(Synthetic, DeterministicAndExact) {
  std::istringstream in(kSynth);
  const SyntheticConfig c = parse_synthetic_config(in);
  const Dataset a = generate_synthetic(c);
  const Dataset b = generate_synthetic(c);
  EXPECT_EQ(a, b);
  const auto t = box_cox(a.response(), c.transform);
  for (std::size_t r = 0; r < a.size(); ++r) {
    const double truth = c.model_value(a.predictors().row(static_cast<Eigen::Index>(r)).transpose());
    EXPECT_NEAR(t[r], truth, 1e-14 * std::abs(truth));
    EXPECT_GE(a.predictors()(static_cast<Eigen::Index>(r), 1), 0.0);
  }
  SyntheticConfig other = c;
  other.seed = 5;
  EXPECT_FALSE(generate_synthetic(other) == a);
}

TEST(Synthetic, ConfigErrors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_synthetic_config(in);
  };
  EXPECT_THROW(parse("seed = 1\n"), SchemaError);
  EXPECT_THROW(parse("names = a\nseed = x\n"), ParseError);
  EXPECT_THROW(parse("names = a\ncoef.q = 1\n"), SchemaError);
  EXPECT_THROW(parse("names = a\nnoline\n"), ParseError);
  EXPECT_THROW(parse("names = a\nseed = 1\nseed = 2\n"), ParseError);
  EXPECT_THROW(parse("names = a\nrange.a = 2, 1\n"), ParseError);
  SyntheticConfig c = parse("names = a\nn = 2\n");
  EXPECT_THROW(generate_synthetic(c), GenerationError);
  c = parse("names = a\nexponent = -1\nintercept = -1\n");
  EXPECT_THROW(generate_synthetic(c), GenerationError);
}

}  // namespace
}  // namespace rsm::data
