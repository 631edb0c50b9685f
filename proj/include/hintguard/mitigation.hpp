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
// Defensive scrubbing: find smooth, border-connected background, replace it
// with a refitted surface plus fine noise, and check that no payload
// survives.

#ifndef HINTGUARD_MITIGATION_HPP_
#define HINTGUARD_MITIGATION_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hintguard/detector.hpp"
#include "hintguard/embedder.hpp"
#include "hintguard/entropy.hpp"
#include "hintguard/image.hpp"

namespace hintguard {

struct MitigationParams {
  int tile_size = 32;
  double entropy_threshold = 3.0;  // tiles at or below this seed growth
  int stats_radius = 2;            // 5x5 local standard deviation
  double sigma_max = 2.0;
  // Non-background components that stay within this many levels of the
  // fitted background surface on every channel are regenerated as well.
  double fill_contrast = 12.0;
  double noise_std = 0.7;
  std::uint64_t noise_seed = 0x5eed;
};

struct BackgroundMask {
  PayloadMask bits{1, 1};
  double coverage = 0.0;
};

struct ScrubReport {
  ImageBuffer cleaned{1, 1};
  BackgroundMask background;
  double foreground_mad = 0.0;
  bool payload_destroyed = true;
};

BackgroundMask segment_background(const ImageBuffer& image,
                                  const MitigationParams& params = {});

ScrubReport scrub(const ImageBuffer& image, const PayloadLibrary& library,
                  const MitigationParams& params = {},
                  const DetectorParams& detector = {});

// Fraction of images whose scrubbed version no longer yields a blind
// detection. Throws on an empty corpus.
double mitigation_rate(
    std::span<const std::pair<ImageBuffer, InjectionRecord>> corpus,
    const PayloadLibrary& library, const MitigationParams& params = {},
    const DetectorParams& detector = {});

}  // namespace hintguard

#endif  // HINTGUARD_MITIGATION_HPP_
