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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace medforge::files {

std::string ReadText(const std::filesystem::path& path);
std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path);

// Writes to a sibling temp file and renames over `path`.
void WriteAtomic(const std::filesystem::path& path, std::string_view contents);
void WriteAtomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents);

// Appends and flushes. Creates the file when missing.
void Append(const std::filesystem::path& path, std::string_view contents);

// Truncates `path` to `size` bytes. Creates an empty file when missing.
void Truncate(const std::filesystem::path& path, std::uintmax_t size);

}  // namespace medforge::files
