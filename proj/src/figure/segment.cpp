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

#include "medforge/figure/segment.hpp"

#include <optional>
#include <string>

#include "medforge/common/error.hpp"
#include "medforge/figure/profile_kernels.hpp"

namespace medforge::figure {
namespace {

enum class Axis { kRows, kColumns };

Axis Other(Axis a) { return a == Axis::kRows ? Axis::kColumns : Axis::kRows; }

struct Interval {
  int begin = 0;  // inclusive
  int end = 0;    // exclusive
  int Length() const { return end - begin; }
};

class XyCutter {
 public:
  XyCutter(const ForegroundMask& mask, const SegmentParams& params) : mask_(mask), params_(params) {}

  void Cut(const Rect& region, Axis axis, std::vector<Rect>& leaves) const {
    auto trimmed = Trim(region);
    if (!trimmed) return;
    auto pieces = Pieces(*trimmed, axis);
    if (pieces.size() > 1) {
      for (const auto& p : pieces) Cut(p, Other(axis), leaves);
      return;
    }
    pieces = Pieces(*trimmed, Other(axis));
    if (pieces.size() > 1) {
      for (const auto& p : pieces) Cut(p, axis, leaves);
      return;
    }
    leaves.push_back(*trimmed);
  }

 private:
  std::vector<int> Profile(const Rect& r, Axis axis) const {
    std::vector<int> prof(static_cast<std::size_t>(axis == Axis::kRows ? r.h : r.w));
    if (axis == Axis::kRows) {
      RowProfile(mask_, r, prof);
    } else {
      ColumnProfile(mask_, r, prof);
    }
    return prof;
  }

  std::optional<Rect> Trim(const Rect& r) const {
    auto rows = Profile(r, Axis::kRows);
    int top = 0;
    int bottom = r.h;
    while (top < bottom && rows[static_cast<std::size_t>(top)] == 0) ++top;
    while (bottom > top && rows[static_cast<std::size_t>(bottom - 1)] == 0) --bottom;
    if (top == bottom) return std::nullopt;
    Rect band{r.x, r.y + top, r.w, bottom - top};
    auto cols = Profile(band, Axis::kColumns);
    int left = 0;
    int right = r.w;
    while (left < right && cols[static_cast<std::size_t>(left)] == 0) ++left;
    while (right > left && cols[static_cast<std::size_t>(right - 1)] == 0) --right;
    return Rect{r.x + left, band.y, right - left, band.h};
  }

  // Content intervals along `axis` of an already trimmed region.
  std::vector<Rect> Pieces(const Rect& r, Axis axis) const {
    auto prof = Profile(r, axis);
    const int n = static_cast<int>(prof.size());
    std::vector<Interval> segs;
    int i = 0;
    while (i < n) {
      int start = i;
      // Extend content, absorbing background runs thinner than min_gutter.
      while (i < n) {
        if (prof[static_cast<std::size_t>(i)] != 0) {
          ++i;
          continue;
        }
        int gap = i;
        while (gap < n && prof[static_cast<std::size_t>(gap)] == 0) ++gap;
        if (gap - i >= params_.min_gutter || gap == n) break;
        i = gap;
      }
      segs.push_back({start, i});
      while (i < n && prof[static_cast<std::size_t>(i)] == 0) ++i;
    }
    MergeThin(segs);
    std::vector<Rect> out;
    out.reserve(segs.size());
    for (const auto& s : segs) {
      if (axis == Axis::kRows) {
        out.push_back({r.x, r.y + s.begin, r.w, s.Length()});
      } else {
        out.push_back({r.x + s.begin, r.y, s.Length(), r.h});
      }
    }
    return out;
  }

  void MergeThin(std::vector<Interval>& segs) const {
    for (;;) {
      if (segs.size() < 2) return;
      std::size_t thin = segs.size();
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].Length() < params_.min_panel) {
          thin = k;
          break;
        }
      }
      if (thin == segs.size()) return;
      std::size_t partner;
      if (thin == 0) {
        partner = 1;
      } else if (thin + 1 == segs.size()) {
        partner = thin - 1;
      } else {
        int gap_before = segs[thin].begin - segs[thin - 1].end;
        int gap_after = segs[thin + 1].begin - segs[thin].end;
        partner = gap_before <= gap_after ? thin - 1 : thin + 1;
      }
      std::size_t lo = std::min(thin, partner);
      segs[lo] = {segs[lo].begin, segs[lo + 1].end};
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(lo + 1));
    }
  }

  const ForegroundMask& mask_;
  const SegmentParams& params_;
};

}  // namespace

std::vector<PanelBox> ProjectionSegmenter::Split(const Raster& image) const {
  if (image.width < params_.min_panel || image.height < params_.min_panel) {
    throw Error(Errc::kDegenerateImage,
                "image " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                    " is smaller than min_panel " + std::to_string(params_.min_panel));
  }
  auto mask = ComputeMask(image);
  std::vector<Rect> leaves;
  XyCutter(mask, params_).Cut(Rect{0, 0, image.width, image.height}, Axis::kRows, leaves);
  if (leaves.empty()) leaves.push_back(Rect{0, 0, image.width, image.height});

  std::vector<PanelBox> boxes;
  boxes.reserve(leaves.size());
  for (const auto& r : leaves) {
    PanelBox b;
    b.x = r.x;
    b.y = r.y;
    b.width = r.w;
    b.height = r.h;
    boxes.push_back(std::move(b));
  }
  SortRowMajor(boxes, params_.row_quantum);
  for (std::size_t i = 0; i < boxes.size(); ++i) boxes[i].panel_id = PanelIdForIndex(i);
  return boxes;
}

std::vector<PanelBox> SplitPanels(const Raster& image, int min_panel, int min_gutter) {
  SegmentParams params;
  params.min_panel = min_panel;
  params.min_gutter = min_gutter;
  return ProjectionSegmenter(params).Split(image);
}

}  // namespace medforge::figure
