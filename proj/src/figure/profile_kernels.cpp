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

#include "medforge/figure/profile_kernels.hpp"

namespace medforge::figure {
namespace {

// Below this many pixels a parallel region costs more than it saves.
constexpr long long kParallelPixels = 1 << 15;

}  // namespace

ForegroundMask ComputeMaskSerial(const Raster& image) {
  ForegroundMask mask{image.width, image.height, {}};
  mask.bits.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      mask.bits[static_cast<std::size_t>(y) * image.width + x] = IsBackground(image.Pixel(x, y)) ? 0 : 1;
    }
  }
  return mask;
}

ForegroundMask ComputeMask(const Raster& image) {
  ForegroundMask mask{image.width, image.height, {}};
  mask.bits.resize(static_cast<std::size_t>(image.width) * image.height);
  const long long pixels = static_cast<long long>(image.width) * image.height;
  const int w = image.width;
#pragma omp parallel for schedule(static) if (pixels > kParallelPixels)
  for (int y = 0; y < image.height; ++y) {
    const std::uint8_t* src = image.Pixel(0, y);
    std::uint8_t* dst = &mask.bits[static_cast<std::size_t>(y) * w];
    for (int x = 0; x < w; ++x) dst[x] = IsBackground(src + 3 * x) ? 0 : 1;
  }
  return mask;
}

void RowProfileSerial(const ForegroundMask& mask, const Rect& region, std::span<int> out) {
  for (int i = 0; i < region.h; ++i) {
    int count = 0;
    for (int x = region.x; x < region.x + region.w; ++x) count += mask.At(x, region.y + i);
    out[static_cast<std::size_t>(i)] = count;
  }
}

void RowProfile(const ForegroundMask& mask, const Rect& region, std::span<int> out) {
  const long long pixels = static_cast<long long>(region.w) * region.h;
#pragma omp parallel for schedule(static) if (pixels > kParallelPixels)
  for (int i = 0; i < region.h; ++i) {
    const std::uint8_t* row = &mask.bits[static_cast<std::size_t>(region.y + i) * mask.width + region.x];
    int count = 0;
    for (int x = 0; x < region.w; ++x) count += row[x];
    out[static_cast<std::size_t>(i)] = count;
  }
}

void ColumnProfileSerial(const ForegroundMask& mask, const Rect& region, std::span<int> out) {
  for (int i = 0; i < region.w; ++i) {
    int count = 0;
    for (int y = region.y; y < region.y + region.h; ++y) count += mask.At(region.x + i, y);
    out[static_cast<std::size_t>(i)] = count;
  }
}

void ColumnProfile(const ForegroundMask& mask, const Rect& region, std::span<int> out) {
  const long long pixels = static_cast<long long>(region.w) * region.h;
  for (int i = 0; i < region.w; ++i) out[static_cast<std::size_t>(i)] = 0;
  // Each thread sums whole rows into a private accumulator so the inner loop
  // stays contiguous, then the accumulators are merged.
#pragma omp parallel if (pixels > kParallelPixels)
  {
    std::vector<int> local(static_cast<std::size_t>(region.w), 0);
#pragma omp for schedule(static) nowait
    for (int y = region.y; y < region.y + region.h; ++y) {
      const std::uint8_t* row = &mask.bits[static_cast<std::size_t>(y) * mask.width + region.x];
      for (int x = 0; x < region.w; ++x) local[static_cast<std::size_t>(x)] += row[x];
    }
#pragma omp critical(medforge_column_profile)
    for (int x = 0; x < region.w; ++x) out[static_cast<std::size_t>(x)] += local[static_cast<std::size_t>(x)];
  }
}

}  // namespace medforge::figure
