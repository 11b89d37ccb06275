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

#include <optional>
#include <string>
#include <string_view>

#include "medforge/figure/panel.hpp"

namespace medforge::figure {

enum class SpatialRelation {
  kLeftOf,
  kRightOf,
  kAbove,
  kBelow,
  kAboveLeft,
  kAboveRight,
  kBelowLeft,
  kBelowRight,
  kCoincident,
};

std::string_view RelationName(SpatialRelation r);  // "left_of", ...
std::optional<SpatialRelation> RelationFromName(std::string_view name);

// "to the left of", "above and to the right of", ...
std::string_view RelationPhrase(SpatialRelation r);

// left_of <-> right_of, above_left <-> below_right, coincident <-> coincident.
SpatialRelation Mirror(SpatialRelation r);

// Position of `a` relative to `b`, from box centres. A component is dropped
// when its centre offset is within tau of the image extent on that axis
// (|dx| <= tau * image_w, |dy| <= tau * image_h). Image y grows downward,
// so b lower than a makes a "above".
SpatialRelation DeriveSpatialRelation(const PanelBox& a, const PanelBox& b, int image_w,
                                      int image_h, double tau = 0.05);

}  // namespace medforge::figure
