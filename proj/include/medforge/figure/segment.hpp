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

#include <memory>
#include <vector>

#include "medforge/figure/panel.hpp"
#include "medforge/figure/raster.hpp"

namespace medforge::figure {

struct SegmentParams {
  int min_panel = 64;   // pixels; pieces smaller than this along a cut are merged back
  int min_gutter = 5;   // pixels; thinnest background band that counts as a gutter
  int row_quantum = 10; // row bucket for row-major ordering
};

class PanelSegmenter {
 public:
  virtual ~PanelSegmenter() = default;
  // Returns row-major ordered boxes with panel_ids assigned ("A", "B", ...).
  virtual std::vector<PanelBox> Split(const Raster& image) const = 0;
};

// Recursive whitespace-gutter (XY-cut) segmentation over projection
// profiles. Regions are trimmed to their foreground bounding box, cut at
// every full-span background band at least `min_gutter` thick, and pieces
// thinner than `min_panel` along the cut are merged into the neighbour
// across the narrower gutter. Cutting alternates axes until neither axis
// yields a cut. A blank image yields one box covering the whole image.
class ProjectionSegmenter : public PanelSegmenter {
 public:
  explicit ProjectionSegmenter(SegmentParams params = {}) : params_(params) {}
  std::vector<PanelBox> Split(const Raster& image) const override;

 private:
  SegmentParams params_;
};

// Throws DegenerateImage when either dimension is below min_panel.
std::vector<PanelBox> SplitPanels(const Raster& image, int min_panel = 64, int min_gutter = 5);

}  // namespace medforge::figure
