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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsm {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorCategory {
  kInput,      // malformed data, bad arguments, unsupported requests
  kNumerical,  // convergence failures, rank problems, degenerate spectra
};

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what, ErrorCategory category)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), category_(category) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string kind_;
  ErrorCategory category_;
};

#define RSM_DEFINE_ERROR(Name, Category)                                   \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what, Category) {} \
  }

RSM_DEFINE_ERROR(InvalidInput, ErrorCategory::kInput);
RSM_DEFINE_ERROR(DegenerateStructure, ErrorCategory::kNumerical);
RSM_DEFINE_ERROR(SchemaError, ErrorCategory::kInput);
RSM_DEFINE_ERROR(DegenerateData, ErrorCategory::kInput);
RSM_DEFINE_ERROR(GenerationError, ErrorCategory::kInput);
RSM_DEFINE_ERROR(SpecError, ErrorCategory::kInput);
RSM_DEFINE_ERROR(UnderdeterminedError, ErrorCategory::kInput);
RSM_DEFINE_ERROR(NoNullDirection, ErrorCategory::kNumerical);
RSM_DEFINE_ERROR(ParameterError, ErrorCategory::kInput);
RSM_DEFINE_ERROR(NullDirectionInactive, ErrorCategory::kNumerical);
RSM_DEFINE_ERROR(NotPaired, ErrorCategory::kNumerical);
RSM_DEFINE_ERROR(NoTradePossible, ErrorCategory::kNumerical);

#undef RSM_DEFINE_ERROR

/// Jacobi sweeps exhausted before the off-diagonal mass fell below tolerance.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double residual)
      : Error("ConvergenceFailure", what, ErrorCategory::kNumerical), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A design column is (numerically) a combination of the columns before it.
class RankError : public Error {
 public:
  RankError(const std::string& what, std::size_t column)
      : Error("RankError", what, ErrorCategory::kNumerical), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Cell that failed to parse; line numbers are 1-based and count the header.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string column)
      : Error("ParseError", what, ErrorCategory::kInput), line_(line), column_(std::move(column)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

/// Value outside the domain of a transform. `line` is 0 when not tied to a file row.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::size_t line = 0)
      : Error("DomainError", what, ErrorCategory::kInput), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rsm
