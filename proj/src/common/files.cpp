// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medforge/common/files.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "medforge/common/error.hpp"

namespace medforge::files {
namespace fs = std::filesystem;

namespace {

std::atomic<std::uint64_t> g_temp_counter{0};

fs::path TempSibling(const fs::path& path) {
  std::ostringstream name;
  name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
       << "." << g_temp_counter.fetch_add(1);
  return path.parent_path() / name.str();
}

void WriteAtomicRaw(const fs::path& path, const char* data, std::size_t size) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  auto tmp = TempSibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot open " + tmp.string() + " for writing");
    out.write(data, static_cast<std::streamsize>(size));
    out.flush();
    if (!out) throw Error(Errc::kIoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::kIoError, "rename to " + path.string() + " failed");
  }
}

}  // namespace

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> ReadBytes(const fs::path& path) {
  auto s = ReadText(path);
  return {s.begin(), s.end()};
}

void WriteAtomic(const fs::path& path, std::string_view contents) {
  WriteAtomicRaw(path, contents.data(), contents.size());
}

void WriteAtomic(const fs::path& path, const std::vector<std::uint8_t>& contents) {
  WriteAtomicRaw(path, reinterpret_cast<const char*>(contents.data()), contents.size());
}

void Append(const fs::path& path, std::string_view contents) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for append");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(Errc::kIoError, "append to " + path.string() + " failed");
}

void Truncate(const fs::path& path, std::uintmax_t size) {
  if (!fs::exists(path)) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream touch(path, std::ios::binary);
  }
  fs::resize_file(path, size);
}

}  // namespace medforge::files
