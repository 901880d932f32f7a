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

#include "rsm/bundle.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "rsm/error.hpp"

namespace rsm::io {
namespace fs = std::filesystem;
namespace {

std::function<void(const std::string&)>& fault_hook() {
  static std::function<void(const std::string&)> hook;
  return hook;
}

}  // namespace

void OutputBundle::set_fault_hook(std::function<void(const std::string&)> hook) {
  fault_hook() = std::move(hook);
}

void OutputBundle::add(const std::string& name, std::string contents) {
  const fs::path p(name);
  if (name.empty() || p.is_absolute()) throw InvalidInput("bad output name '" + name + "'");
  for (const auto& part : p)
    if (part == "..") throw InvalidInput("bad output name '" + name + "'");
  files_[name] = std::move(contents);
}

void OutputBundle::commit() const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir_.string() + ": " + ec.message());

  const fs::path staging = dir_ / (".staging-" + std::to_string(::getpid()));
  fs::remove_all(staging, ec);
  try {
    for (const auto& [name, contents] : files_) {
      if (fault_hook()) fault_hook()(name);
      const fs::path target = staging / name;
      fs::create_directories(target.parent_path());
      std::ofstream out(target, std::ios::binary | std::ios::trunc);
      out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
      out.close();
      if (!out) throw InvalidInput("cannot write " + target.string());
    }
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  for (const auto& [name, contents] : files_) {
    const fs::path target = dir_ / name;
    fs::create_directories(target.parent_path(), ec);
    fs::rename(staging / name, target, ec);
    if (ec) {
      fs::remove_all(staging, ec);
      throw InvalidInput("cannot move " + name + " into " + dir_.string());
    }
  }
  fs::remove_all(staging, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace rsm::io
