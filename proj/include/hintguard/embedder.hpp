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
// Attacker-side payload injection: a fixed, equal offset on all three
// channels of every payload pixel, saturating at [0, 255].

#ifndef HINTGUARD_EMBEDDER_HPP_
#define HINTGUARD_EMBEDDER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "hintguard/entropy.hpp"
#include "hintguard/image.hpp"

namespace hintguard {

inline constexpr int kDefaultStrength = 2;

inline constexpr std::string_view kLayoutAugmentation =
    "minimalist composition, objects in the corner of the image, vast empty "
    "space, no clutter in the middle, solid background";

struct InjectionSpec {
  int strength = kDefaultStrength;
  int sign = +1;
  PayloadMask mask{1, 1};  // payload-sized, already scaled
  PlacementDecision placement;
  bool require_feasible = false;
};

struct InjectionRecord {
  InjectionSpec spec;
  std::size_t clipped_pixels = 0;
  Point origin;
  std::string payload_id;
};

// Placement at a caller-chosen origin; always marked feasible.
PlacementDecision explicit_placement(Point origin);

// Picks an origin for `mask` in the lowest-entropy window. The window is
// padded by `margin` on every side and the payload is centred in it, so the
// payload keeps `margin` pixels of the surrounding background.
PlacementDecision plan_placement(const GrayBuffer& gray, const PayloadMask& mask,
                                 const EntropyParams& params = {},
                                 int margin = 0);

std::pair<ImageBuffer, InjectionRecord> embed_payload(const ImageBuffer& image,
                                                      const InjectionSpec& spec);

// The mask of `record` placed on an image-sized canvas.
PayloadMask placed_mask(const InjectionRecord& record, Size canvas);

std::string augment_prompt(std::string_view prompt);

// True exactly where any channel differs.
PayloadMask residual_of(const ImageBuffer& clean, const ImageBuffer& injected);

}  // namespace hintguard

#endif  // HINTGUARD_EMBEDDER_HPP_
