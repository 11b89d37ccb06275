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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace medforge::figure {

struct PanelBox {
  std::string panel_id;
  std::optional<std::string> label;
  int x = 0;
  int y = 0;
  int width = 1;
  int height = 1;

  long long Area() const { return static_cast<long long>(width) * height; }
  bool operator==(const PanelBox&) const = default;
};

struct CompoundFigureRecord {
  std::string figure_id;
  int image_width = 0;
  int image_height = 0;
  std::vector<PanelBox> panels;
  std::string caption;
  std::map<std::string, std::string> sub_captions;

  bool operator==(const CompoundFigureRecord&) const = default;
};

// {"panel_id", "label" (string|null), "x", "y", "w", "h"}
nlohmann::json ToJson(const PanelBox& box);
PanelBox PanelBoxFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const CompoundFigureRecord& fig);
CompoundFigureRecord CompoundFigureFromJson(const nlohmann::json& j);

long long OverlapArea(const PanelBox& a, const PanelBox& b);

// Empty when the record holds; otherwise one message per violated rule
// (bounds, size, unique ids, row-major order, pairwise overlap <= 5%).
std::vector<std::string> CheckInvariants(const CompoundFigureRecord& fig);

// Row-major by top-left corner with `row_quantum`-pixel row buckets.
void SortRowMajor(std::vector<PanelBox>& boxes, int row_quantum = 10);

// "A".."Z", then "P27", "P28", ...
std::string PanelIdForIndex(std::size_t index);

}  // namespace medforge::figure
