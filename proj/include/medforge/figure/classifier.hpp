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
#include <mutex>
#include <span>

#include "medforge/figure/panel.hpp"
#include "medforge/figure/raster.hpp"

namespace medforge::figure {

class PanelClassifier {
 public:
  virtual ~PanelClassifier() = default;

  // `crop` is the panel's pixels; `box` its placement in the figure.
  virtual bool IsMedical(const Raster& crop, const PanelBox& box) const = 0;

  // False when the implementation may only be used by one worker at a time.
  virtual bool Concurrent() const { return true; }
};

// Default: every panel counts as medical.
class PassThroughClassifier : public PanelClassifier {
 public:
  bool IsMedical(const Raster&, const PanelBox&) const override { return true; }
};

// Serializes calls into a classifier that declared itself exclusive.
class SerializedClassifier : public PanelClassifier {
 public:
  explicit SerializedClassifier(const PanelClassifier& inner) : inner_(inner) {}
  bool IsMedical(const Raster& crop, const PanelBox& box) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.IsMedical(crop, box);
  }

 private:
  const PanelClassifier& inner_;
  mutable std::mutex mu_;
};

// Area-weighted fraction of panel area classified medical, in [0, 1].
// Classifier exceptions surface as ClassifierFailure naming the panel.
double MedicalContentRatio(const Raster& image, std::span<const PanelBox> panels,
                           const PanelClassifier& classifier);

// Strict: passes only when ratio > threshold.
inline bool MedicalGatePasses(double ratio, double threshold = 0.9) { return ratio > threshold; }

}  // namespace medforge::figure
