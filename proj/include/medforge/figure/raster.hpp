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
#include <span>
#include <vector>

namespace medforge::figure {

// 8-bit RGB raster, row-major, top-left origin.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // width * height * 3

  std::uint8_t* Pixel(int x, int y) { return &rgb[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* Pixel(int x, int y) const {
    return &rgb[(static_cast<std::size_t>(y) * width + x) * 3];
  }

  static Raster Filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Accepts PNG or JPEG. Alpha is composited over white.
// Throws Error(kImageDecodeError).
Raster DecodeImage(std::span<const std::uint8_t> bytes);
Raster LoadImage(const std::filesystem::path& path);

std::vector<std::uint8_t> EncodePng(const Raster& image);

Raster Crop(const Raster& image, int x, int y, int w, int h);

void FillRect(Raster& image, int x, int y, int w, int h, std::uint8_t r, std::uint8_t g,
              std::uint8_t b);

}  // namespace medforge::figure
