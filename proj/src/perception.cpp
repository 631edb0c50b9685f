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

#include "hintguard/perception.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hintguard/embedder.hpp"
#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {
namespace {

using Kernel = int[5][5];

// Weighted 5x5 background-luminance operator; weights sum to 32.
constexpr Kernel kBackground = {{1, 1, 1, 1, 1},
                                {1, 2, 2, 2, 1},
                                {1, 2, 0, 2, 1},
                                {1, 2, 2, 2, 1},
                                {1, 1, 1, 1, 1}};

// Directional high-pass operators for the four orientations.
constexpr Kernel kGradients[4] = {
    {{0, 0, 0, 0, 0},
     {1, 3, 8, 3, 1},
     {0, 0, 0, 0, 0},
     {-1, -3, -8, -3, -1},
     {0, 0, 0, 0, 0}},
    {{0, 0, 1, 0, 0},
     {0, 8, 3, 0, 0},
     {1, 3, 0, -3, -1},
     {0, 0, -3, -8, 0},
     {0, 0, -1, 0, 0}},
    {{0, 0, 1, 0, 0},
     {0, 0, 3, 8, 0},
     {-1, -3, 0, 3, 1},
     {0, -8, -3, 0, 0},
     {0, 0, -1, 0, 0}},
    {{0, 1, 0, -1, 0},
     {0, 3, 0, -3, 0},
     {0, 8, 0, -8, 0},
     {0, 3, 0, -3, 0},
     {0, 1, 0, -1, 0}},
};

}  // namespace

double luminance_threshold(double background, const JndParams& p) {
  if (background <= 128.0) {
    return p.t_mid +
           (p.t_dark - p.t_mid) * (1.0 - std::sqrt(background / 128.0));
  }
  return p.t_mid + p.bright_slope * (background - 128.0);
}

JndMap jnd_map(const GrayBuffer& gray, const JndParams& params) {
  const int w = gray.width();
  const int h = gray.height();
  JndMap map;
  map.width = w;
  map.height = h;
  map.thresholds.resize(gray.pixel_count());

  const bool interior_fast = w >= 5 && h >= 5;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool inside =
          interior_fast && x >= 2 && y >= 2 && x < w - 2 && y < h - 2;
      int bg = 0;
      int grad[4] = {0, 0, 0, 0};
      for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < 5; ++i) {
          const int v = inside ? gray.at(x + i - 2, y + j - 2)
                               : gray.clamped(x + i - 2, y + j - 2);
          bg += kBackground[j][i] * v;
          for (int k = 0; k < 4; ++k) grad[k] += kGradients[k][j][i] * v;
        }
      }
      int max_grad = 0;
      for (int k = 0; k < 4; ++k) max_grad = std::max(max_grad, std::abs(grad[k]));
      const double lum = luminance_threshold(bg / 32.0, params);
      const double masking = params.masking_slope * (max_grad / 16.0);
      map.thresholds[static_cast<std::size_t>(y) * w + x] =
          std::max({lum, masking, 0.0});
    }
  }
  return map;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kInvisible:
      return "invisible";
    case Verdict::kBorderline:
      return "borderline";
    case Verdict::kVisible:
      return "visible";
  }
  return "unknown";
}

Verdict classify_ratio(double ratio, const JndParams& params) {
  if (ratio >= params.invisible_cutoff) return Verdict::kInvisible;
  if (ratio <= params.visible_cutoff) return Verdict::kVisible;
  return Verdict::kBorderline;
}

VisibilityReport jnd_ratio(const JndMap& clean_jnd, const GrayBuffer& clean_luma,
                           const GrayBuffer& injected_luma,
                           const PayloadMask& mask, const JndParams& params) {
  if (clean_luma.size() != injected_luma.size() ||
      clean_luma.size() != mask.size() ||
      clean_jnd.width != clean_luma.width() ||
      clean_jnd.height != clean_luma.height()) {
    throw InvalidArgument("JND ratio inputs must share dimensions");
  }
  if (mask.empty()) {
    throw InvalidArgument("JND ratio is undefined for an empty payload mask");
  }
  std::size_t total = 0;
  std::size_t below = 0;
  const Rect& box = mask.bbox();
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      if (!mask.test(x, y)) continue;
      ++total;
      const int delta = std::abs(int{injected_luma.at(x, y)} -
                                 int{clean_luma.at(x, y)});
      if (delta < clean_jnd.at(x, y)) ++below;
    }
  }
  VisibilityReport r;
  r.pixels_evaluated = total;
  r.jnd_ratio = static_cast<double>(below) / static_cast<double>(total);
  r.verdict = classify_ratio(r.jnd_ratio, params);
  return r;
}

VisibilityReport jnd_ratio(const ImageBuffer& clean,
                           const ImageBuffer& injected,
                           const PayloadMask& mask, const JndParams& params) {
  if (clean.size() != injected.size()) {
    throw InvalidArgument("JND ratio requires images of equal size");
  }
  const GrayBuffer clean_luma = to_luma(clean);
  return jnd_ratio(jnd_map(clean_luma, params), clean_luma, to_luma(injected),
                   mask, params);
}

std::vector<VisibilityReport> classify_strength_sweep(
    const ImageBuffer& clean, const PayloadMask& mask,
    std::span<const int> strengths, const JndParams& params) {
  if (strengths.empty()) throw InvalidArgument("strength list is empty");
  if (mask.size() != clean.size()) {
    throw InvalidArgument("sweep mask must be image-sized");
  }
  if (mask.empty()) throw InvalidArgument("sweep mask is empty");
  const GrayBuffer clean_luma = to_luma(clean);
  const JndMap jnd = jnd_map(clean_luma, params);
  const PayloadMask payload = mask.cropped();
  const Point origin{mask.bbox().x, mask.bbox().y};

  std::vector<VisibilityReport> out;
  out.reserve(strengths.size());
  for (int s : strengths) {
    if (s < 0) throw InvalidArgument("strengths must be >= 0");
    InjectionSpec spec;
    spec.strength = s;
    spec.mask = payload;
    spec.placement = explicit_placement(origin);
    const ImageBuffer injected = embed_payload(clean, spec).first;
    out.push_back(jnd_ratio(jnd, clean_luma, to_luma(injected), mask, params));
  }
  return out;
}

}  // namespace hintguard
