// Copyright 2026 The Hintguard Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Spatial-domain just-noticeable-difference model (luminance adaptation and
// texture masking, after Chou and Li) and the payload visibility metric
// built on top of it.

#ifndef HINTGUARD_PERCEPTION_HPP_
#define HINTGUARD_PERCEPTION_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard {

struct JndParams {
  // Luminance adaptation: T_dark at background 0, falling as a square root
  // to T_mid at 128, then rising linearly with `bright_slope`.
  double t_dark = 17.0;
  double t_mid = 3.0;
  double bright_slope = 3.0 / 128.0;
  // Texture masking: masking_slope * max directional gradient.
  double masking_slope = 0.12;

  double invisible_cutoff = 0.95;  // ratio >= this is invisible
  double visible_cutoff = 0.50;    // ratio <= this is visible
};

struct JndMap {
  int width = 0;
  int height = 0;
  std::vector<double> thresholds;

  double at(int x, int y) const {
    return thresholds[static_cast<std::size_t>(y) * width + x];
  }
};

// Luminance-adaptation threshold for a background luma.
double luminance_threshold(double background, const JndParams& params = {});

JndMap jnd_map(const GrayBuffer& gray, const JndParams& params = {});

enum class Verdict { kInvisible, kBorderline, kVisible };

std::string_view to_string(Verdict v);
Verdict classify_ratio(double ratio, const JndParams& params = {});

struct VisibilityReport {
  double jnd_ratio = 1.0;
  Verdict verdict = Verdict::kInvisible;
  std::size_t pixels_evaluated = 0;
};

// Fraction of payload pixels whose luma change stays strictly below the
// clean image's JND threshold. `mask` is image-sized and must be non-empty.
VisibilityReport jnd_ratio(const ImageBuffer& clean,
                           const ImageBuffer& injected,
                           const PayloadMask& mask,
                           const JndParams& params = {});

// Same, with a JND map of `clean` computed by the caller.
VisibilityReport jnd_ratio(const JndMap& clean_jnd, const GrayBuffer& clean_luma,
                           const GrayBuffer& injected_luma,
                           const PayloadMask& mask,
                           const JndParams& params = {});

// Embeds `mask` (image-sized) at each strength with sign +1 and reports
// visibility for each.
std::vector<VisibilityReport> classify_strength_sweep(
    const ImageBuffer& clean, const PayloadMask& mask,
    std::span<const int> strengths, const JndParams& params = {});

}  // namespace hintguard

#endif  // HINTGUARD_PERCEPTION_HPP_
