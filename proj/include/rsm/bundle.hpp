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

#include <filesystem>
#include <functional>
#include <map>
#include <string>

namespace rsm::io {

/// A set of files that appear in the output directory all at once or not at
/// all. Everything is first written to a staging directory next to the
/// target and then renamed into place.
class OutputBundle {
 public:
  explicit OutputBundle(std::filesystem::path directory) : dir_(std::move(directory)) {}

  /// Adds or replaces a file; names are relative and may not contain "..".
  void add(const std::string& name, std::string contents);
  const std::map<std::string, std::string>& files() const noexcept { return files_; }
  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// Throws InvalidInput when a file cannot be written; no target file is
  /// touched in that case and the staging directory is removed.
  void commit() const;

  /// Test hook run before each staged write with the file name. Throwing
  /// from it simulates an I/O failure.
  static void set_fault_hook(std::function<void(const std::string&)> hook);

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> files_;
};

/// Whole-file read; throws InvalidInput naming the path on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace rsm::io
