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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {

std::uint8_t luma_of(Rgb px) {
  const int weighted = 299 * px[0] + 587 * px[1] + 114 * px[2];
  return static_cast<std::uint8_t>(std::min((weighted + 500) / 1000, 255));
}

GrayBuffer to_luma(const ImageBuffer& image) {
  std::vector<std::uint8_t> out(image.pixel_count());
  const auto rgb = image.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = luma_of({rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]});
  }
  return GrayBuffer(image.width(), image.height(), std::move(out));
}

// Huang's running-histogram median. Each row starts from a full window
// histogram and slides right by one column at a time; the median is tracked
// incrementally through the count of samples below it.
GrayBuffer median_filter(const GrayBuffer& gray, int radius) {
  if (radius < 1) throw InvalidArgument("median radius must be >= 1");
  const int w = gray.width();
  const int h = gray.height();
  const int side = 2 * radius + 1;
  const int half = (side * side) / 2;  // median is the sample of rank `half`
  GrayBuffer out(w, h);

  std::vector<int> col_idx(static_cast<std::size_t>(w + 2 * radius + 1));
  for (int i = 0; i < static_cast<int>(col_idx.size()); ++i) {
    col_idx[static_cast<std::size_t>(i)] = std::clamp(i - radius, 0, w - 1);
  }

  std::array<int, 256> hist{};
  std::vector<const std::uint8_t*> rows(static_cast<std::size_t>(side));
  for (int y = 0; y < h; ++y) {
    for (int j = 0; j < side; ++j) {
      rows[static_cast<std::size_t>(j)] =
          gray.data().data() +
          static_cast<std::size_t>(std::clamp(y + j - radius, 0, h - 1)) * w;
    }
    const std::uint8_t* const* row_ptr = rows.data();

    hist.fill(0);
    for (int i = 0; i < side; ++i) {
      const int cx = col_idx[static_cast<std::size_t>(i)];
      for (int j = 0; j < side; ++j) ++hist[row_ptr[j][cx]];
    }
    int med = 0;
    int below = 0;  // number of samples strictly less than med
    while (below + hist[static_cast<std::size_t>(med)] <= half) {
      below += hist[static_cast<std::size_t>(med)];
      ++med;
    }
    out.at(0, y) = static_cast<std::uint8_t>(med);

    for (int x = 1; x < w; ++x) {
      const int gone = col_idx[static_cast<std::size_t>(x - 1)];
      const int added = col_idx[static_cast<std::size_t>(x + 2 * radius)];
      for (int j = 0; j < side; ++j) {
        const int vo = row_ptr[j][gone];
        const int vi = row_ptr[j][added];
        --hist[static_cast<std::size_t>(vo)];
        if (vo < med) --below;
        ++hist[static_cast<std::size_t>(vi)];
        if (vi < med) ++below;
      }
      while (below > half) {
        --med;
        below -= hist[static_cast<std::size_t>(med)];
      }
      while (below + hist[static_cast<std::size_t>(med)] <= half) {
        below += hist[static_cast<std::size_t>(med)];
        ++med;
      }
      out.at(x, y) = static_cast<std::uint8_t>(med);
    }
  }
  return out;
}

namespace {

// Maps i in [0, dst) onto [0, src) so that both ends coincide.
int nearest_source(int i, int dst, int src) {
  if (dst == 1) return (src - 1) / 2;
  const long num = static_cast<long>(i) * (src - 1) * 2 + (dst - 1);
  return static_cast<int>(num / (2L * (dst - 1)));
}

}  // namespace

PayloadMask resample_mask(const PayloadMask& mask, int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("resample target must be at least 1x1");
  }
  const PayloadMask src = mask.cropped();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const int sy = nearest_source(y, height, src.height());
    for (int x = 0; x < width; ++x) {
      const int sx = nearest_source(x, width, src.width());
      bits[static_cast<std::size_t>(y) * width + x] = src.test(sx, sy) ? 1 : 0;
    }
  }
  return PayloadMask(width, height, std::move(bits), mask.payload_id());
}

PayloadMask scale_mask(const PayloadMask& mask, int target_width) {
  if (target_width < 8) {
    throw InvalidArgument("target payload width must be >= 8 px, got " +
                          std::to_string(target_width));
  }
  if (mask.empty()) throw InvalidArgument("cannot scale an empty mask");
  const Rect& box = mask.bbox();
  const int target_height = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(box.height) *
                                      target_width / box.width)));
  return resample_mask(mask, target_width, target_height);
}

LocalStats local_stats(const GrayBuffer& gray, int radius) {
  const int w = gray.width();
  const int h = gray.height();
  const int side = 2 * radius + 1;
  const double n = static_cast<double>(side) * side;
  LocalStats st;
  st.mean.resize(gray.pixel_count());
  st.stddev.resize(gray.pixel_count());

  // Separable clamped box sums of v and v^2.
  std::vector<double> hs(gray.pixel_count()), hs2(gray.pixel_count());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0, s2 = 0;
      for (int d = -radius; d <= radius; ++d) {
        const double v = gray.clamped(x + d, y);
        s += v;
        s2 += v * v;
      }
      hs[static_cast<std::size_t>(y) * w + x] = s;
      hs2[static_cast<std::size_t>(y) * w + x] = s2;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0, s2 = 0;
      for (int d = -radius; d <= radius; ++d) {
        const std::size_t k =
            static_cast<std::size_t>(std::clamp(y + d, 0, h - 1)) * w + x;
        s += hs[k];
        s2 += hs2[k];
      }
      const std::size_t k = static_cast<std::size_t>(y) * w + x;
      const double mean = s / n;
      st.mean[k] = mean;
      st.stddev[k] = std::sqrt(std::max(0.0, s2 / n - mean * mean));
    }
  }
  return st;
}

namespace {

// Separable min/max filter; `fill` is the value assumed outside the raster.
PayloadMask morph(const PayloadMask& mask, int radius, bool dilation) {
  if (radius < 0) throw InvalidArgument("morphology radius must be >= 0");
  const int w = mask.width();
  const int h = mask.height();
  const std::uint8_t fill = dilation ? 0 : 1;
  auto pass = [&](const std::vector<std::uint8_t>& in, bool horizontal) {
    std::vector<std::uint8_t> out(in.size());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        std::uint8_t acc = dilation ? 0 : 1;
        for (int d = -radius; d <= radius; ++d) {
          const int xx = horizontal ? x + d : x;
          const int yy = horizontal ? y : y + d;
          const std::uint8_t v =
              (xx < 0 || yy < 0 || xx >= w || yy >= h)
                  ? fill
                  : in[static_cast<std::size_t>(yy) * w + xx];
          if (dilation ? v != 0 : v == 0) {
            acc = dilation ? 1 : 0;
            break;
          }
        }
        out[static_cast<std::size_t>(y) * w + x] = acc;
      }
    }
    return out;
  };
  std::vector<std::uint8_t> bits(mask.bits().begin(), mask.bits().end());
  bits = pass(pass(bits, true), false);
  return PayloadMask(w, h, std::move(bits), mask.payload_id());
}

}  // namespace

PayloadMask erode(const PayloadMask& mask, int radius) {
  return morph(mask, radius, false);
}

PayloadMask dilate(const PayloadMask& mask, int radius) {
  return morph(mask, radius, true);
}

PayloadMask open(const PayloadMask& mask, int radius) {
  return dilate(erode(mask, radius), radius);
}

PayloadMask close(const PayloadMask& mask, int radius) {
  return erode(dilate(mask, radius), radius);
}

Components label_components(const PayloadMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  Components c;
  c.labels.assign(mask.bits().size(), 0);
  std::vector<int> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t k0 = static_cast<std::size_t>(y0) * w + x0;
      if (!mask.bits()[k0] || c.labels[k0]) continue;
      const int label = c.count() + 1;
      std::size_t area = 0;
      int bx0 = x0, by0 = y0, bx1 = x0, by1 = y0;
      c.labels[k0] = label;
      stack.assign(1, static_cast<int>(k0));
      while (!stack.empty()) {
        const int k = stack.back();
        stack.pop_back();
        ++area;
        const int x = k % w;
        const int y = k / w;
        bx0 = std::min(bx0, x);
        bx1 = std::max(bx1, x);
        by0 = std::min(by0, y);
        by1 = std::max(by1, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t nk = static_cast<std::size_t>(ny) * w + nx;
            if (mask.bits()[nk] && !c.labels[nk]) {
              c.labels[nk] = label;
              stack.push_back(static_cast<int>(nk));
            }
          }
        }
      }
      c.areas.push_back(area);
      c.boxes.push_back({bx0, by0, bx1 - bx0 + 1, by1 - by0 + 1});
    }
  }
  return c;
}

PayloadMask filter_components(const PayloadMask& mask, std::size_t min_area) {
  const Components c = label_components(mask);
  std::vector<std::uint8_t> bits(mask.bits().size(), 0);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const int label = c.labels[k];
    if (label && c.areas[static_cast<std::size_t>(label - 1)] >= min_area) {
      bits[k] = 1;
    }
  }
  return PayloadMask(mask.width(), mask.height(), std::move(bits),
                     mask.payload_id());
}

double iou(const PayloadMask& a, const PayloadMask& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("IoU requires masks of equal size");
  }
  std::size_t inter = 0, uni = 0;
  for (std::size_t k = 0; k < a.bits().size(); ++k) {
    inter += a.bits()[k] & b.bits()[k];
    uni += a.bits()[k] | b.bits()[k];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace hintguard
