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

#include "rsm/numfmt.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace rsm::fmt {
namespace {

std::string to_chars_or_die(double value, std::chars_format format, int precision) {
  std::array<char, 64> buf{};
  auto res = precision < 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), value, format)
                           : std::to_chars(buf.data(), buf.data() + buf.size(), value, format,
                                           precision);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string shortest(double value) {
  if (value == 0.0) return "0";  // collapses -0 as well
  return to_chars_or_die(value, std::chars_format::general, -1);
}

std::string sci(double value, int significant) {
  if (value == 0.0) value = 0.0;
  return to_chars_or_die(value, std::chars_format::scientific, significant - 1);
}

std::string fixed(double value, int decimals) {
  std::string s = to_chars_or_die(value, std::chars_format::fixed, decimals);
  // "-0.000" reads badly in reports
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string scaled(double value, int exponent, int significant) {
  double power = 1.0;
  for (int k = 0; k < std::abs(exponent); ++k) power *= 10.0;
  const double mantissa = exponent >= 0 ? value * power : value / power;
  std::string m = to_chars_or_die(mantissa, std::chars_format::general, significant);
  if (m == "-0") m = "0";
  if (exponent == 0) return m;
  return m + " x 10^" + std::to_string(-exponent);
}

std::optional<double> parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double out = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) return std::nullopt;
  return out;
}

}  // namespace rsm::fmt
