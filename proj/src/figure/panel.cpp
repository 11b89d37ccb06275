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

#include "medforge/figure/panel.hpp"

#include <algorithm>
#include <set>

#include "medforge/common/error.hpp"

namespace medforge::figure {

nlohmann::json ToJson(const PanelBox& box) {
  nlohmann::json j;
  j["panel_id"] = box.panel_id;
  j["label"] = box.label ? nlohmann::json(*box.label) : nlohmann::json(nullptr);
  j["x"] = box.x;
  j["y"] = box.y;
  j["w"] = box.width;
  j["h"] = box.height;
  return j;
}

PanelBox PanelBoxFromJson(const nlohmann::json& j) {
  try {
    PanelBox box;
    box.panel_id = j.at("panel_id").get<std::string>();
    if (j.contains("label") && !j.at("label").is_null()) box.label = j.at("label").get<std::string>();
    box.x = j.at("x").get<int>();
    box.y = j.at("y").get<int>();
    box.width = j.at("w").get<int>();
    box.height = j.at("h").get<int>();
    return box;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedSource, std::string("panel box: ") + e.what());
  }
}

nlohmann::json ToJson(const CompoundFigureRecord& fig) {
  nlohmann::json j;
  j["figure_id"] = fig.figure_id;
  j["image_width"] = fig.image_width;
  j["image_height"] = fig.image_height;
  j["panels"] = nlohmann::json::array();
  for (const auto& p : fig.panels) j["panels"].push_back(ToJson(p));
  j["caption"] = fig.caption;
  j["sub_captions"] = nlohmann::json::object();
  for (const auto& [k, v] : fig.sub_captions) j["sub_captions"][k] = v;
  return j;
}

CompoundFigureRecord CompoundFigureFromJson(const nlohmann::json& j) {
  try {
    CompoundFigureRecord fig;
    fig.figure_id = j.at("figure_id").get<std::string>();
    fig.image_width = j.at("image_width").get<int>();
    fig.image_height = j.at("image_height").get<int>();
    for (const auto& p : j.at("panels")) fig.panels.push_back(PanelBoxFromJson(p));
    fig.caption = j.value("caption", "");
    if (j.contains("sub_captions")) {
      for (const auto& [k, v] : j.at("sub_captions").items()) fig.sub_captions[k] = v.get<std::string>();
    }
    return fig;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedSource, std::string("compound figure: ") + e.what());
  }
}

long long OverlapArea(const PanelBox& a, const PanelBox& b) {
  long long w = std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x);
  long long h = std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y);
  return (w > 0 && h > 0) ? w * h : 0;
}

std::vector<std::string> CheckInvariants(const CompoundFigureRecord& fig) {
  std::vector<std::string> problems;
  std::set<std::string> ids;
  for (const auto& p : fig.panels) {
    if (p.width < 1 || p.height < 1) problems.push_back(p.panel_id + ": empty box");
    if (p.x < 0 || p.y < 0 || p.x + p.width > fig.image_width || p.y + p.height > fig.image_height) {
      problems.push_back(p.panel_id + ": box outside image bounds");
    }
    if (!ids.insert(p.panel_id).second) problems.push_back(p.panel_id + ": duplicate panel_id");
  }
  auto sorted = fig.panels;
  SortRowMajor(sorted);
  if (sorted != fig.panels) problems.push_back("panels not in row-major order");
  for (std::size_t i = 0; i < fig.panels.size(); ++i) {
    for (std::size_t j = i + 1; j < fig.panels.size(); ++j) {
      const auto& a = fig.panels[i];
      const auto& b = fig.panels[j];
      long long overlap = OverlapArea(a, b);
      // overlap <= 5% of the smaller area, in integers: 20 * overlap <= min
      if (overlap > 0 && 20 * overlap > std::min(a.Area(), b.Area())) {
        problems.push_back(a.panel_id + "/" + b.panel_id + ": overlap exceeds 5% of smaller panel");
      }
    }
  }
  return problems;
}

void SortRowMajor(std::vector<PanelBox>& boxes, int row_quantum) {
  if (row_quantum < 1) row_quantum = 1;
  std::stable_sort(boxes.begin(), boxes.end(), [row_quantum](const PanelBox& a, const PanelBox& b) {
    int ra = a.y / row_quantum;
    int rb = b.y / row_quantum;
    if (ra != rb) return ra < rb;
    return a.x < b.x;
  });
}

std::string PanelIdForIndex(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "P" + std::to_string(index + 1);
}

}  // namespace medforge::figure
