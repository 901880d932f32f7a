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


#include <clocale>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "rsm/numfmt.hpp"

namespace rsm::fmt {
namespace {

TEST(Shortest, RoundTrips) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const double v = u(rng) * std::pow(10.0, (t % 60) - 30);
    EXPECT_EQ(*parse_double(shortest(v)), v);
  }
  EXPECT_EQ(shortest(0.1), "0.1");
  EXPECT_EQ(shortest(1e-19), "1e-19");
}

TEST(Formats, FixedLayouts) {
  EXPECT_EQ(sci(3.10277e-18, 3), "3.10e-18");
  EXPECT_EQ(fixed(2.5, 2), "2.50");
  EXPECT_EQ(scaled(4.0, 0, 3), "4");
  EXPECT_EQ(scaled(31.0277e-19, 19, 6), "31.0277 x 10^-19");
  EXPECT_EQ(scaled(-186.42e-17, 17, 5), "-186.42 x 10^-17");
}

TEST(Formats, IgnoreLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "locale missing";
  EXPECT_EQ(fixed(2.5, 2), "2.50");
  EXPECT_EQ(*parse_double("2.5"), 2.5);
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(Parse, Strict) {
  EXPECT_EQ(*parse_double(" 1.5e3 "), 1500.0);
  EXPECT_EQ(*parse_double("-0.25"), -0.25);
  EXPECT_FALSE(parse_double("").has_value());
  EXPECT_FALSE(parse_double("1.5x").has_value());
  EXPECT_FALSE(parse_double("abc").has_value());
  EXPECT_FALSE(parse_double("1,5").has_value());
}

}  // namespace
}  // namespace rsm::fmt
