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

#include "medforge/figure/spatial.hpp"

#include <array>
#include <cmath>

#include "medforge/common/error.hpp"

namespace medforge::figure {
namespace {

struct RelationInfo {
  SpatialRelation value;
  std::string_view name;
  std::string_view phrase;
  SpatialRelation mirror;
};

constexpr std::array<RelationInfo, 9> kRelations = {{
    {SpatialRelation::kLeftOf, "left_of", "to the left of", SpatialRelation::kRightOf},
    {SpatialRelation::kRightOf, "right_of", "to the right of", SpatialRelation::kLeftOf},
    {SpatialRelation::kAbove, "above", "above", SpatialRelation::kBelow},
    {SpatialRelation::kBelow, "below", "below", SpatialRelation::kAbove},
    {SpatialRelation::kAboveLeft, "above_left", "above and to the left of", SpatialRelation::kBelowRight},
    {SpatialRelation::kAboveRight, "above_right", "above and to the right of", SpatialRelation::kBelowLeft},
    {SpatialRelation::kBelowLeft, "below_left", "below and to the left of", SpatialRelation::kAboveRight},
    {SpatialRelation::kBelowRight, "below_right", "below and to the right of", SpatialRelation::kAboveLeft},
    {SpatialRelation::kCoincident, "coincident", "aligned with", SpatialRelation::kCoincident},
}};

const RelationInfo& Info(SpatialRelation r) { return kRelations[static_cast<std::size_t>(r)]; }

bool Within(const PanelBox& b, int w, int h) {
  return b.x >= 0 && b.y >= 0 && b.x + b.width <= w && b.y + b.height <= h;
}

}  // namespace

std::string_view RelationName(SpatialRelation r) { return Info(r).name; }
std::string_view RelationPhrase(SpatialRelation r) { return Info(r).phrase; }
SpatialRelation Mirror(SpatialRelation r) { return Info(r).mirror; }

std::optional<SpatialRelation> RelationFromName(std::string_view name) {
  for (const auto& info : kRelations) {
    if (info.name == name) return info.value;
  }
  return std::nullopt;
}

SpatialRelation DeriveSpatialRelation(const PanelBox& a, const PanelBox& b, int image_w,
                                      int image_h, double tau) {
  if (!Within(a, image_w, image_h) || !Within(b, image_w, image_h)) {
    throw Error(Errc::kInvalidArgument, "panel box outside image bounds");
  }
  const double dx = (b.x + b.width / 2.0) - (a.x + a.width / 2.0);
  const double dy = (b.y + b.height / 2.0) - (a.y + a.height / 2.0);
  const int h = std::abs(dx) <= tau * image_w ? 0 : (dx > 0 ? 1 : -1);   // 1: a left of b
  const int v = std::abs(dy) <= tau * image_h ? 0 : (dy > 0 ? 1 : -1);   // 1: a above b
  if (v == 0) {
    if (h == 0) return SpatialRelation::kCoincident;
    return h > 0 ? SpatialRelation::kLeftOf : SpatialRelation::kRightOf;
  }
  if (v > 0) {
    if (h == 0) return SpatialRelation::kAbove;
    return h > 0 ? SpatialRelation::kAboveLeft : SpatialRelation::kAboveRight;
  }
  if (h == 0) return SpatialRelation::kBelow;
  return h > 0 ? SpatialRelation::kBelowLeft : SpatialRelation::kBelowRight;
}

}  // namespace medforge::figure
