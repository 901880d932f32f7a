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

#include <optional>
#include <string>
#include <string_view>

// Locale-independent number formatting. Every text artifact the library
// writes goes through these so that outputs are byte-stable.
namespace rsm::fmt {

/// Shortest decimal string that parses back to exactly `value`.
std::string shortest(double value);

/// `significant` significant digits in scientific notation, e.g. "3.10e-18".
std::string sci(double value, int significant);

/// Fixed notation with `decimals` digits after the point.
std::string fixed(double value, int decimals);

/// value * 10^exponent followed by the matching power, e.g.
/// scaled(3.10277e-18, 19, 6) == "31.0277 x 10^-19".
std::string scaled(double value, int exponent, int significant);

/// Strict parse of a full token (surrounding blanks allowed). Returns nullopt
/// on any trailing garbage or on an empty token.
std::optional<double> parse_double(std::string_view token);

}  // namespace rsm::fmt
