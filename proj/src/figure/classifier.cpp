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

#include "medforge/figure/classifier.hpp"

#include "medforge/common/error.hpp"

namespace medforge::figure {

double MedicalContentRatio(const Raster& image, std::span<const PanelBox> panels,
                           const PanelClassifier& classifier) {
  if (panels.empty()) throw Error(Errc::kInvalidArgument, "medical ratio needs at least one panel");
  long long total = 0;
  long long medical = 0;
  for (const auto& p : panels) {
    bool is_medical = false;
    try {
      is_medical = classifier.IsMedical(Crop(image, p.x, p.y, p.width, p.height), p);
    } catch (const std::exception& e) {
      throw Error(Errc::kClassifierFailure, "panel " + p.panel_id + ": " + e.what(),
                  {{"panel_id", p.panel_id}});
    }
    total += p.Area();
    if (is_medical) medical += p.Area();
  }
  return static_cast<double>(medical) / static_cast<double>(total);
}

}  // namespace medforge::figure
