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

#include "hintguard/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hintguard/error.hpp"

namespace hintguard {

double histogram_entropy(const Histogram& hist) {
  std::uint64_t total = 0;
  for (auto c : hist) total += c;
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  // A single occupied bin yields -0.0; keep the result non-negative.
  return std::max(h, 0.0);
}

double region_entropy(const GrayBuffer& gray, const Rect& region) {
  Histogram hist{};
  for (int y = region.y; y < region.bottom(); ++y) {
    for (int x = region.x; x < region.right(); ++x) ++hist[gray.at(x, y)];
  }
  return histogram_entropy(hist);
}

double shannon_entropy(const GrayBuffer& gray) {
  Histogram hist{};
  for (auto v : gray.data()) ++hist[v];
  return histogram_entropy(hist);
}

EntropyMap entropy_map(const GrayBuffer& gray, int tile_size) {
  if (tile_size < 8) {
    throw InvalidArgument("entropy tile size must be >= 8, got " +
                          std::to_string(tile_size));
  }
  EntropyMap map;
  map.tile_size = tile_size;
  map.cols = (gray.width() + tile_size - 1) / tile_size;
  map.rows = (gray.height() + tile_size - 1) / tile_size;
  map.values.resize(static_cast<std::size_t>(map.cols) * map.rows);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      const int x = c * tile_size;
      const int y = r * tile_size;
      const Rect tile{x, y, std::min(tile_size, gray.width() - x),
                      std::min(tile_size, gray.height() - y)};
      map.values[static_cast<std::size_t>(r) * map.cols + c] =
          region_entropy(gray, tile);
    }
  }
  return map;
}

PlacementDecision select_placement(const GrayBuffer& gray, Size payload,
                                   const EntropyParams& params) {
  if (params.tile_size < 1) {
    throw InvalidArgument("placement stride must be positive");
  }
  if (payload.width < 1 || payload.height < 1 ||
      payload.width > gray.width() || payload.height > gray.height()) {
    throw InvalidArgument("payload box " + std::to_string(payload.width) +
                          "x" + std::to_string(payload.height) +
                          " does not fit the image");
  }
  const int stride = params.tile_size;
  PlacementDecision best;
  bool have = false;

  // Each window row keeps a running histogram that slides right by `stride`
  // columns at a time.
  for (int y = 0; y + payload.height <= gray.height(); y += stride) {
    Histogram hist{};
    for (int yy = y; yy < y + payload.height; ++yy) {
      for (int xx = 0; xx < payload.width; ++xx) ++hist[gray.at(xx, yy)];
    }
    for (int x = 0;;) {
      const double h = histogram_entropy(hist);
      if (!have || h < best.window_entropy - kEntropyTieEpsilon) {
        best.origin = {x, y};
        best.window_entropy = h;
        have = true;
      }
      const int next = x + stride;
      if (next + payload.width > gray.width()) break;
      for (int yy = y; yy < y + payload.height; ++yy) {
        for (int xx = x; xx < next; ++xx) --hist[gray.at(xx, yy)];
        for (int xx = x + payload.width; xx < next + payload.width; ++xx) {
          ++hist[gray.at(xx, yy)];
        }
      }
      x = next;
    }
  }
  best.feasible = best.window_entropy <= params.threshold_bits;
  return best;
}

}  // namespace hintguard
