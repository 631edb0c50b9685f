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

#include "hintguard/embedder.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "hintguard/error.hpp"

namespace hintguard {

PlacementDecision explicit_placement(Point origin) {
  PlacementDecision p;
  p.origin = origin;
  p.feasible = true;
  return p;
}

PlacementDecision plan_placement(const GrayBuffer& gray, const PayloadMask& mask,
                                 const EntropyParams& params, int margin) {
  if (margin < 0) throw InvalidArgument("placement margin must be >= 0");
  const Size padded{mask.width() + 2 * margin, mask.height() + 2 * margin};
  PlacementDecision p = select_placement(gray, padded, params);
  p.origin.x += margin;
  p.origin.y += margin;
  return p;
}

std::pair<ImageBuffer, InjectionRecord> embed_payload(
    const ImageBuffer& image, const InjectionSpec& spec) {
  if (spec.strength < 0) throw InvalidArgument("strength must be >= 0");
  if (spec.sign != 1 && spec.sign != -1) {
    throw InvalidArgument("sign must be +1 or -1");
  }
  const Point origin = spec.placement.origin;
  const Rect target{origin.x, origin.y, spec.mask.width(), spec.mask.height()};
  if (!Rect{0, 0, image.width(), image.height()}.contains(target)) {
    throw InvalidArgument("payload placed at (" + std::to_string(origin.x) +
                          "," + std::to_string(origin.y) +
                          ") falls outside the image");
  }
  if (spec.require_feasible && !spec.placement.feasible) {
    throw InvalidArgument("placement window entropy " +
                          std::to_string(spec.placement.window_entropy) +
                          " bits exceeds the feasibility threshold");
  }

  ImageBuffer out = image;
  InjectionRecord record;
  record.spec = spec;
  record.origin = origin;
  record.payload_id = spec.mask.payload_id();
  const int offset = spec.sign * spec.strength;
  for (int y = 0; y < spec.mask.height(); ++y) {
    for (int x = 0; x < spec.mask.width(); ++x) {
      if (!spec.mask.test(x, y)) continue;
      bool clipped = false;
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        auto& s = out.sample(origin.x + x, origin.y + y, c);
        const int v = s + offset;
        clipped = clipped || v < 0 || v > 255;
        s = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
      }
      if (clipped) ++record.clipped_pixels;
    }
  }
  return {std::move(out), std::move(record)};
}

PayloadMask placed_mask(const InjectionRecord& record, Size canvas) {
  return record.spec.mask.placed(canvas, record.origin);
}

std::string augment_prompt(std::string_view prompt) {
  if (prompt.empty()) throw InvalidArgument("prompt must not be empty");
  std::string out(prompt);
  const std::string suffix = ", " + std::string(kLayoutAugmentation);
  if (out.size() >= suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out;
  }
  return out + suffix;
}

PayloadMask residual_of(const ImageBuffer& clean, const ImageBuffer& injected) {
  if (clean.size() != injected.size()) {
    throw InvalidArgument("residual requires images of equal size");
  }
  std::vector<std::uint8_t> bits(clean.pixel_count());
  const auto a = clean.data();
  const auto b = injected.data();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (a[3 * i] != b[3 * i] || a[3 * i + 1] != b[3 * i + 1] ||
               a[3 * i + 2] != b[3 * i + 2])
                  ? 1
                  : 0;
  }
  return PayloadMask(clean.width(), clean.height(), std::move(bits));
}

}  // namespace hintguard
