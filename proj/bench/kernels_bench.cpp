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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "medforge/eval/text_metrics.hpp"
#include "medforge/figure/profile_kernels.hpp"

namespace {

using medforge::eval::TextPair;
using medforge::figure::Raster;
using medforge::figure::Rect;

// White canvas with a grid of dark panels.
Raster Canvas(int side) {
  auto img = Raster::Filled(side, side, 255, 255, 255);
  const int cell = side / 4;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      if (x % cell > 8 && y % cell > 8) {
        auto* p = img.Pixel(x, y);
        p[0] = p[1] = p[2] = static_cast<std::uint8_t>((x * 7 + y * 3) % 200);
      }
    }
  }
  return img;
}

std::vector<TextPair> Pairs(std::size_t n) {
  static const char* kWords[] = {"lesion", "axial", "left",   "lobe",    "edema",  "contrast", "mass",
                                 "signal", "panel", "cortex", "sagittal", "tissue", "margin",   "focal"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 13), len(12, 40);
  auto sentence = [&] {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += std::string(kWords[pick(rng)]) + " ";
    return s;
  };
  std::vector<TextPair> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({sentence(), sentence()});
  return out;
}

void BM_MaskSerial(benchmark::State& state) {
  const auto img = Canvas(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::figure::ComputeMaskSerial(img));
}
void BM_MaskParallel(benchmark::State& state) {
  const auto img = Canvas(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::figure::ComputeMask(img));
}

void BM_ProfilesSerial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto mask = medforge::figure::ComputeMaskSerial(Canvas(side));
  std::vector<int> rows(side), cols(side);
  const Rect all{0, 0, side, side};
  for (auto _ : state) {
    medforge::figure::RowProfileSerial(mask, all, rows);
    medforge::figure::ColumnProfileSerial(mask, all, cols);
    benchmark::ClobberMemory();
  }
}
void BM_ProfilesParallel(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto mask = medforge::figure::ComputeMask(Canvas(side));
  std::vector<int> rows(side), cols(side);
  const Rect all{0, 0, side, side};
  for (auto _ : state) {
    medforge::figure::RowProfile(mask, all, rows);
    medforge::figure::ColumnProfile(mask, all, cols);
    benchmark::ClobberMemory();
  }
}

void BM_BleuSerial(benchmark::State& state) {
  const auto pairs = Pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::eval::BatchBleu4Serial(pairs));
}
void BM_BleuParallel(benchmark::State& state) {
  const auto pairs = Pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::eval::BatchBleu4(pairs));
}

void BM_RougeSerial(benchmark::State& state) {
  const auto pairs = Pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::eval::BatchRougeLSerial(pairs));
}
void BM_RougeParallel(benchmark::State& state) {
  const auto pairs = Pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(medforge::eval::BatchRougeL(pairs));
}

BENCHMARK(BM_MaskSerial)->Arg(512)->Arg(2048);
BENCHMARK(BM_MaskParallel)->Arg(512)->Arg(2048);
BENCHMARK(BM_ProfilesSerial)->Arg(512)->Arg(2048);
BENCHMARK(BM_ProfilesParallel)->Arg(512)->Arg(2048);
BENCHMARK(BM_BleuSerial)->Arg(1000);
BENCHMARK(BM_BleuParallel)->Arg(1000);
BENCHMARK(BM_RougeSerial)->Arg(1000);
BENCHMARK(BM_RougeParallel)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
