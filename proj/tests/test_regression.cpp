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


#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rsm/data_io.hpp"
#include "rsm/error.hpp"
#include "rsm/regression.hpp"
#include "rsm/stats.hpp"

namespace rsm::regression {
namespace {

data::Dataset uniform_dataset(std::uint64_t seed, int n, int k) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd p(n, k);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < k; ++c) p(r, c) = u(rng);
  std::vector<std::int64_t> years(n);
  for (int r = 0; r < n; ++r) years[r] = 1959 + r;
  std::vector<std::string> names;
  for (int c = 0; c < k; ++c) names.push_back("x" + std::to_string(c + 1));
  return data::Dataset(years, std::vector<double>(n, 1.0), names, p);
}

TEST(TermSpec, LabelsAndOrdering) {
  const std::vector<std::string> names{"gas", "oil", "cement"};
  EXPECT_EQ(TermSpec::intercept().label(names), "intercept");
  EXPECT_EQ(TermSpec::linear(1).label(names), "oil");
  EXPECT_EQ(TermSpec::interaction(2, 0).label(names), "gas*cement");
  EXPECT_EQ(TermSpec::quadratic(1).label(names), "oil^2");
  EXPECT_EQ(TermSpec::interaction(1, 1), TermSpec::quadratic(1));
  EXPECT_LT(TermSpec::intercept(), TermSpec::linear(0));
  EXPECT_LT(TermSpec::linear(2), TermSpec::quadratic(0));
  EXPECT_LT(TermSpec::quadratic(0), TermSpec::interaction(0, 1));
}

TEST(Pool, SizeAndOrder) {
  const auto pool = full_second_order_pool(5);
  EXPECT_EQ(pool.size(), 21u);
  EXPECT_TRUE(std::is_sorted(pool.begin(), pool.end()));
  EXPECT_EQ(full_second_order_pool(5, false).size(), 16u);
}

TEST(Design, ColumnsAndErrors) {
  const auto d = uniform_dataset(1, 6, 2);
  const std::vector<TermSpec> terms{TermSpec::intercept(), TermSpec::interaction(0, 1),
                                    TermSpec::quadratic(1)};
  const Design des = build_design(d, terms);
  EXPECT_EQ(des.matrix(3, 0), 1.0);
  EXPECT_EQ(des.matrix(3, 1), d.predictors()(3, 0) * d.predictors()(3, 1));
  EXPECT_EQ(des.labels[2], "x2^2");
  const std::vector<TermSpec> dup{TermSpec::linear(0), TermSpec::linear(0)};
  EXPECT_THROW(build_design(d, dup), SpecError);
  const std::vector<TermSpec> bad{TermSpec::linear(4)};
  EXPECT_THROW(build_design(d, bad), SpecError);
}

TEST(Ols, MatchesSvdOracle) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 20 + trial, p = 1 + trial % 6;
    Eigen::MatrixXd x(n, p);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < p; ++c) x(r, c) = g(rng) * std::pow(10.0, c - 2);
    x.col(0).setOnes();
    Eigen::VectorXd y(n);
    for (int r = 0; r < n; ++r) y(r) = g(rng);
    std::vector<TermSpec> terms{TermSpec::intercept()};
    for (int c = 1; c < p; ++c) terms.push_back(TermSpec::linear(c - 1));
    const FitReport f = ols_fit(x, y, terms);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd beta = svd.solve(y);
    EXPECT_LE((f.coefficients - beta).norm(), 1e-10 * beta.norm());

    const double sse = (y - x * beta).squaredNorm();
    EXPECT_NEAR(f.sse, sse, 1e-10 * sse);
    const double sst = (y.array() - y.mean()).square().sum();
    EXPECT_NEAR(f.r2, 1.0 - sse / sst, 1e-10);
    EXPECT_EQ(f.df_resid, n - p);

    const Eigen::MatrixXd cov = (x.transpose() * x).inverse() * (sse / (n - p));
    for (int c = 0; c < p; ++c) {
      EXPECT_NEAR(f.std_errors(c), std::sqrt(cov(c, c)), 1e-8 * std::sqrt(cov(c, c)));
      const double t = beta(c) / std::sqrt(cov(c, c));
      EXPECT_NEAR(f.p_values(c), stats::t_two_sided_p(t, n - p), 1e-8);
    }
    if (p > 1) {
      const double fstat = ((sst - sse) / (p - 1)) / (sse / (n - p));
      EXPECT_NEAR(f.f_stat, fstat, 1e-8 * fstat);
    }
  }
}

TEST(Ols, ExactFitHasNoResidualStatistics) {
  Eigen::MatrixXd x(2, 2);
  x << 1, 0, 1, 1;
  Eigen::VectorXd y(2);
  y << 3, 5;
  const FitReport f = ols_fit(x, y, {TermSpec::intercept(), TermSpec::linear(0)});
  EXPECT_NEAR(f.coefficients(1), 2.0, 1e-14);
  EXPECT_EQ(f.df_resid, 0);
  EXPECT_TRUE(std::isnan(f.std_errors(0)));
  EXPECT_TRUE(std::isnan(f.f_stat));
  EXPECT_EQ(f.r2, 1.0);
}

TEST(Ols, RankAndShapeErrors) {
  Eigen::MatrixXd x(5, 3);
  x << 1, 2, 3, 1, 4, 5, 1, 6, 7, 1, 8, 9, 1, 1, 2;
  x.col(2) = x.col(0) + x.col(1);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(5, 1, 5);
  try {
    ols_fit(x, y);
    FAIL();
  } catch (const RankError& e) {
    EXPECT_EQ(e.column(), 2u);
  }
  Eigen::MatrixXd z = Eigen::MatrixXd::Ones(5, 2);
  z.col(1).setZero();
  EXPECT_THROW(ols_fit(z, y), RankError);
  EXPECT_THROW(ols_fit(Eigen::MatrixXd::Ones(2, 3), Eigen::VectorXd::Ones(2)),
               UnderdeterminedError);
  EXPECT_THROW(ols_fit(Eigen::MatrixXd::Ones(5, 1), Eigen::VectorXd::Ones(4)), SpecError);
}

TEST(Ols, Coefficient) {
  const auto d = uniform_dataset(3, 10, 2);
  Eigen::VectorXd y = 2.0 + 3.0 * d.predictors().col(1).array();
  const std::vector<TermSpec> terms{TermSpec::intercept(), TermSpec::linear(1)};
  const Design des = build_design(d, terms);
  const FitReport f = ols_fit(des.matrix, y, des.terms, des.labels);
  EXPECT_NEAR(*f.coefficient(TermSpec::linear(1)), 3.0, 1e-13);
  EXPECT_FALSE(f.coefficient(TermSpec::linear(0)).has_value());
}

TEST(Stepwise, RecoversNoiselessSupport) {
  const auto d = uniform_dataset(4, 40, 3);
  const auto& x = d.predictors();
  const Eigen::VectorXd y = (1.0 + 2.0 * x.col(0).array() - 0.5 * x.col(1).array() * x.col(2).array() +
                             0.25 * x.col(2).array().square())
                                .matrix();
  const auto pool = full_second_order_pool(3);
  const StepwiseResult r = stepwise_forward(d, y, pool, {});
  std::vector<TermSpec> sel = r.selected;
  std::sort(sel.begin(), sel.end());
  const std::vector<TermSpec> want{TermSpec::intercept(), TermSpec::linear(0),
                                   TermSpec::interaction(1, 2), TermSpec::quadratic(2)};
  EXPECT_EQ(sel, want);
  EXPECT_EQ(r.stop_reason, "exact fit");
  EXPECT_NEAR(*r.final_fit->coefficient(TermSpec::interaction(1, 2)), -0.5, 1e-12);
  EXPECT_EQ(r.trail.front().note, "intercept entered unconditionally");
}

TEST(Stepwise, StopsOnPureNoise) {
  const auto d = uniform_dataset(5, 30, 2);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  Eigen::VectorXd y(30);
  for (int r = 0; r < 30; ++r) y(r) = g(rng);
  const std::vector<TermSpec> pool{TermSpec::intercept(), TermSpec::linear(0),
                                   TermSpec::linear(1)};
  const StepwiseResult r = stepwise_forward(d, y, pool, {});
  EXPECT_EQ(r.selected.size(), 1u);
  EXPECT_NE(r.stop_reason.find("above alpha_enter"), std::string::npos);
  // Partial F of each candidate is the single-column F test.
  for (const auto& c : r.trail.back().candidates) {
    const std::vector<TermSpec> terms{TermSpec::intercept(), c.term};
    const Design des = build_design(d, terms);
    EXPECT_NEAR(c.f_stat, ols_fit(des.matrix, y, des.terms).f_stat, 1e-9 * (1.0 + c.f_stat));
  }
}

TEST(Stepwise, HierarchyBlocksOrphanTerms) {
  const auto d = uniform_dataset(7, 40, 2);
  const Eigen::VectorXd y =
      (5.0 + d.predictors().col(0).array() * d.predictors().col(1).array()).matrix();
  StepwiseOptions o;
  o.hierarchy = true;
  const StepwiseResult r = stepwise_forward(d, y, full_second_order_pool(2), o);
  const auto& first = r.trail.at(1);
  for (const auto& c : first.candidates) {
    if (c.term.kind == TermKind::kInteraction) {
      EXPECT_FALSE(c.admissible);
      EXPECT_NE(c.note.find("not selected"), std::string::npos);
    }
  }
  const StepwiseResult free = stepwise_forward(d, y, full_second_order_pool(2), {});
  EXPECT_EQ(free.selected.at(1), TermSpec::interaction(0, 1));
}

TEST(Stepwise, SkipsCollinearCandidates) {
  auto d = uniform_dataset(8, 20, 2);
  Eigen::MatrixXd p = d.predictors();
  p.col(1) = 2.0 * p.col(0);
  const data::Dataset dd(d.years(), d.response(), d.predictor_names(), p);
  const Eigen::VectorXd y = (1.0 + 3.0 * p.col(0).array()).matrix() +
                            1e-3 * Eigen::VectorXd::LinSpaced(20, -1, 1).array().sin().matrix();
  const std::vector<TermSpec> pool{TermSpec::intercept(), TermSpec::linear(0),
                                   TermSpec::linear(1)};
  const StepwiseResult r = stepwise_forward(dd, y, pool, {});
  ASSERT_EQ(r.trail.size(), 3u);
  EXPECT_EQ(r.stop_reason, "no admissible candidate");
  EXPECT_FALSE(r.trail[2].candidates.at(0).admissible);
  EXPECT_EQ(r.trail[2].candidates.at(0).note, "collinear with selected terms");
}

TEST(Stepwise, Errors) {
  const auto d = uniform_dataset(9, 10, 2);
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(10);
  EXPECT_THROW(stepwise_forward(d, y, {}, {}), SpecError);
  StepwiseOptions o;
  o.alpha_enter = 1.5;
  EXPECT_THROW(stepwise_forward(d, y, full_second_order_pool(2), o), SpecError);
  EXPECT_THROW(stepwise_forward(d, Eigen::VectorXd::Ones(3), full_second_order_pool(2), {}),
               SpecError);
}

TEST(Scales, AutoExponentAndPow10) {
  const std::vector<double> v{-2.107e-19, 58.22e-19};
  EXPECT_EQ(auto_exponent(v), 18);
  const std::vector<double> w{-1939e-17, 6922e-17};
  EXPECT_EQ(auto_exponent(w), 14);
  const std::vector<double> zero{0.0};
  EXPECT_EQ(auto_exponent(zero), 0);
  EXPECT_EQ(pow10(17), 1e17);
  EXPECT_EQ(pow10(-19), 1e-19);
  EXPECT_EQ(pow10(0), 1.0);
}

TEST(QuadraticModel, HalvingRuleAndForms) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
  b(0, 1) = b(1, 0) = 1.5;
  b(1, 1) = -2.0;
  const QuadraticModel m(4.0, Eigen::Vector2d(1.0, -1.0), linalg::SymmetricMatrix(b), {1, 2}, {});
  EXPECT_EQ(m.names(), (std::vector<std::string>{"x1", "x2"}));
  const Eigen::Vector2d x(2.0, 3.0);
  // beta12 = 2 * B12 = 3, beta22 = -2; scales 10^1 and 10^2.
  const double expect = 0.4 + 0.1 * 2.0 - 0.1 * 3.0 + (3.0 * 2.0 * 3.0 - 2.0 * 9.0) / 100.0;
  EXPECT_NEAR(m.evaluate(x), expect, 1e-15);
  EXPECT_NEAR(m.evaluate_terms(x), expect, 1e-15);
  EXPECT_TRUE(m.has_quadratic_part());
  EXPECT_THROW(m.evaluate(Eigen::Vector3d::Zero()), SpecError);
}

TEST(QuadraticModel, Validation) {
  const linalg::SymmetricMatrix b(Eigen::MatrixXd::Zero(2, 2));
  EXPECT_THROW(QuadraticModel(0.0, Eigen::Vector3d::Zero(), b, {}, {}), SpecError);
  EXPECT_THROW(QuadraticModel(0.0, Eigen::Vector2d::Zero(), b, {}, {"a"}), SpecError);
  EXPECT_THROW(QuadraticModel(NAN, Eigen::Vector2d::Zero(), b, {}, {}), InvalidInput);
  EXPECT_FALSE(QuadraticModel(0.0, Eigen::Vector2d::Zero(), b, {}, {}).has_quadratic_part());
}

TEST(QuadraticModel, AssembledFromFit) {
  const auto d = uniform_dataset(10, 30, 2);
  const auto& x = d.predictors();
  const Eigen::VectorXd y = (3e-9 + 2e-9 * x.col(0).array() +
                             4e-9 * x.col(0).array() * x.col(1).array() -
                             1e-9 * x.col(1).array().square())
                                .matrix();
  const std::vector<TermSpec> terms{TermSpec::intercept(), TermSpec::linear(0),
                                    TermSpec::interaction(0, 1), TermSpec::quadratic(1)};
  const Design des = build_design(d, terms);
  const FitReport f = ols_fit(des.matrix, y, des.terms);
  const QuadraticModel m = assemble_quadratic_model(f, {"x1", "x2"}, {9, 10});
  EXPECT_NEAR(m.linear_scaled()(0), 2.0, 1e-12);
  EXPECT_NEAR(m.interaction_scaled()(0, 1), 20.0, 1e-11);
  EXPECT_NEAR(m.interaction_scaled()(1, 1), -10.0, 1e-11);
  EXPECT_NEAR(m.intercept_scaled(), 3.0, 1e-12);
  const QuadraticModel a = assemble_quadratic_model(f, {"x1", "x2"});
  EXPECT_EQ(a.scales().linear, 9);
  EXPECT_EQ(a.scales().interaction, 9);
  for (int r = 0; r < 30; ++r)
    EXPECT_NEAR(m.evaluate(x.row(r).transpose()), y(r), 1e-12 * std::abs(y(r)) + 1e-24);
  EXPECT_THROW(assemble_quadratic_model(f, {"x1"}, {0, 0}), SpecError);
}

}  // namespace
}  // namespace rsm::regression
