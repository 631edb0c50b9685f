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
// Shannon entropy of 256-bin luma histograms, globally, per tile and per
// candidate payload window.

#ifndef HINTGUARD_ENTROPY_HPP_
#define HINTGUARD_ENTROPY_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard {

struct EntropyParams {
  int tile_size = 32;
  double threshold_bits = 3.0;  // placement is feasible at or below this
};

using Histogram = std::array<std::uint32_t, 256>;

// -sum p log2 p over non-empty bins. Returns 0 for an all-zero histogram.
double histogram_entropy(const Histogram& hist);

double shannon_entropy(const GrayBuffer& gray);
double region_entropy(const GrayBuffer& gray, const Rect& region);

struct EntropyMap {
  int tile_size = 0;
  int cols = 0;
  int rows = 0;
  std::vector<double> values;  // row-major, rows x cols

  double at(int col, int row) const {
    return values[static_cast<std::size_t>(row) * cols + col];
  }
};

// Edge tiles are cropped to the image. Throws InvalidArgument when
// tile_size < 8.
EntropyMap entropy_map(const GrayBuffer& gray, int tile_size);

struct PlacementDecision {
  Point origin;
  double window_entropy = 0.0;
  bool feasible = false;
};

// Scans windows of `payload` size whose origins lie on the tile_size grid
// and returns the one with the lowest histogram entropy; ties go to the
// smallest y, then the smallest x. Throws InvalidArgument when the payload
// does not fit.
PlacementDecision select_placement(const GrayBuffer& gray, Size payload,
                                   const EntropyParams& params = {});

// Entropy values closer than this are treated as equal when ranking windows.
inline constexpr double kEntropyTieEpsilon = 1e-12;

}  // namespace hintguard

#endif  // HINTGUARD_ENTROPY_HPP_
