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
#include <span>
#include <vector>

#include "medforge/figure/raster.hpp"

namespace medforge::figure {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool operator==(const Rect&) const = default;
};

// Row-major mask, 1 where the pixel is foreground (grayscale < 250).
struct ForegroundMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t At(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
};

// Luma uses integer BT.601 weights: 299 R + 587 G + 114 B >= 250 * 1000 is
// background.
inline bool IsBackground(const std::uint8_t* rgb) {
  return 299u * rgb[0] + 587u * rgb[1] + 114u * rgb[2] >= 250u * 1000u;
}

// OpenMP kernels. The *Serial variants are the single-threaded reference
// implementations the parallel versions are tested against.
ForegroundMask ComputeMask(const Raster& image);
ForegroundMask ComputeMaskSerial(const Raster& image);

// out[i] = foreground pixel count of row (region.y + i) within region.
void RowProfile(const ForegroundMask& mask, const Rect& region, std::span<int> out);
void RowProfileSerial(const ForegroundMask& mask, const Rect& region, std::span<int> out);

// out[i] = foreground pixel count of column (region.x + i) within region.
void ColumnProfile(const ForegroundMask& mask, const Rect& region, std::span<int> out);
void ColumnProfileSerial(const ForegroundMask& mask, const Rect& region, std::span<int> out);

}  // namespace medforge::figure
