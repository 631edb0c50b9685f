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

#include "hintguard/mitigation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <random>

#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {

namespace {

// Least-squares plane a + b*u + c*v per channel over the masked pixels, in
// coordinates centred on the image.
struct Plane {
  double a = 0, b = 0, c = 0;
  double at(double u, double v) const { return a + b * u + c * v; }
};

std::array<Plane, 3> fit_planes(const ImageBuffer& image,
                                const PayloadMask& mask) {
  const double cx = (image.width() - 1) / 2.0;
  const double cy = (image.height() - 1) / 2.0;
  double n = 0, su = 0, sv = 0, suu = 0, svv = 0, suv = 0;
  std::array<double, 3> sz{}, suz{}, svz{};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!mask.test(x, y)) continue;
      const double u = x - cx;
      const double v = y - cy;
      n += 1;
      su += u;
      sv += v;
      suu += u * u;
      svv += v * v;
      suv += u * v;
      for (int ch = 0; ch < 3; ++ch) {
        const double z = image.sample(x, y, ch);
        sz[ch] += z;
        suz[ch] += u * z;
        svz[ch] += v * z;
      }
    }
  }
  // Normal equations [n su sv; su suu suv; sv suv svv] [a b c]' = rhs,
  // solved by Cramer's rule. Degenerate layouts (a single row or column)
  // fall back to the mean.
  const double det = n * (suu * svv - suv * suv) - su * (su * svv - suv * sv) +
                     sv * (su * suv - suu * sv);
  std::array<Plane, 3> planes;
  for (int ch = 0; ch < 3; ++ch) {
    if (std::abs(det) < 1e-9 * std::max(1.0, n * suu * svv)) {
      planes[ch].a = sz[ch] / n;
      continue;
    }
    const double r0 = sz[ch], r1 = suz[ch], r2 = svz[ch];
    const double da = r0 * (suu * svv - suv * suv) - su * (r1 * svv - suv * r2) +
                      sv * (r1 * suv - suu * r2);
    const double db = n * (r1 * svv - suv * r2) - r0 * (su * svv - suv * sv) +
                      sv * (su * r2 - r1 * sv);
    const double dc = n * (suu * r2 - r1 * suv) - su * (su * r2 - r1 * sv) +
                      r0 * (su * suv - suu * sv);
    planes[ch] = {da / det, db / det, dc / det};
  }
  return planes;
}

}  // namespace

BackgroundMask segment_background(const ImageBuffer& image,
                                  const MitigationParams& params) {
  const int w = image.width();
  const int h = image.height();
  const GrayBuffer luma = to_luma(image);
  const EntropyMap tiles = entropy_map(luma, params.tile_size);
  const LocalStats stats = local_stats(luma, params.stats_radius);

  std::vector<std::uint8_t> smooth(luma.pixel_count());
  for (std::size_t k = 0; k < smooth.size(); ++k) {
    smooth[k] = stats.stddev[k] <= params.sigma_max ? 1 : 0;
  }
  const PayloadMask smooth_mask(w, h, std::move(smooth));
  const Components comps = label_components(smooth_mask);

  // A component is kept when it touches the border and holds at least one
  // pixel inside a low-entropy tile.
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(comps.count()), 0);
  for (int label = 1; label <= comps.count(); ++label) {
    const Rect& b = comps.boxes[static_cast<std::size_t>(label - 1)];
    if (b.x == 0 || b.y == 0 || b.right() == w || b.bottom() == h) {
      keep[static_cast<std::size_t>(label - 1)] = 2;  // border, needs a seed
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int label = comps.labels[static_cast<std::size_t>(y) * w + x];
      if (!label) continue;
      auto& k = keep[static_cast<std::size_t>(label - 1)];
      if (k == 2 && tiles.at(x / params.tile_size, y / params.tile_size) <=
                        params.entropy_threshold) {
        k = 1;
      }
    }
  }

  std::vector<std::uint8_t> bits(luma.pixel_count(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int label = comps.labels[i];
    bits[i] = (label && keep[static_cast<std::size_t>(label - 1)] == 1) ? 1 : 0;
  }
  PayloadMask grown(w, h, std::move(bits));
  if (params.fill_contrast > 0 && !grown.empty()) {
    // Leftover regions that never leave the faint band around the fitted
    // background surface are absorbed: strong payload strokes fail the
    // smoothness test but sit within a few levels of the surface, whereas
    // real objects differ by far more.
    const std::array<Plane, 3> planes = fit_planes(image, grown);
    std::vector<std::uint8_t> rest(luma.pixel_count());
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = !grown.bits()[i];
    const Components holes =
        label_components(PayloadMask(w, h, std::move(rest)));
    std::vector<std::uint8_t> faint(static_cast<std::size_t>(holes.count()), 1);
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int label = holes.labels[static_cast<std::size_t>(y) * w + x];
        if (!label || !faint[static_cast<std::size_t>(label - 1)]) continue;
        for (int ch = 0; ch < 3; ++ch) {
          const double dev = std::abs(image.sample(x, y, ch) -
                                      planes[ch].at(x - cx, y - cy));
          if (dev > params.fill_contrast) {
            faint[static_cast<std::size_t>(label - 1)] = 0;
            break;
          }
        }
      }
    }
    std::vector<std::uint8_t> merged(grown.bits().begin(), grown.bits().end());
    for (std::size_t i = 0; i < merged.size(); ++i) {
      const int label = holes.labels[i];
      if (label && faint[static_cast<std::size_t>(label - 1)]) merged[i] = 1;
    }
    grown = PayloadMask(w, h, std::move(merged));
  }

  BackgroundMask out;
  out.coverage = static_cast<double>(grown.count()) /
                 static_cast<double>(luma.pixel_count());
  out.bits = std::move(grown);
  return out;
}


ScrubReport scrub(const ImageBuffer& image, const PayloadLibrary& library,
                  const MitigationParams& params,
                  const DetectorParams& detector) {
  ScrubReport r;
  r.background = segment_background(image, params);
  r.cleaned = image;
  const PayloadMask& bg = r.background.bits;

  if (!bg.empty()) {
    const std::array<Plane, 3> planes = fit_planes(image, bg);
    std::mt19937_64 rng(params.noise_seed);
    std::normal_distribution<double> noise(0.0, params.noise_std);
    const double cx = (image.width() - 1) / 2.0;
    const double cy = (image.height() - 1) / 2.0;
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        if (!bg.test(x, y)) continue;
        for (int ch = 0; ch < 3; ++ch) {
          const double v = planes[ch].at(x - cx, y - cy) +
                           (params.noise_std > 0 ? noise(rng) : 0.0);
          r.cleaned.sample(x, y, ch) =
              static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
      }
    }
  }

  std::uint64_t diff = 0;
  std::uint64_t samples = 0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (bg.test(x, y)) continue;
      for (int ch = 0; ch < 3; ++ch) {
        diff += static_cast<std::uint64_t>(
            std::abs(int{r.cleaned.sample(x, y, ch)} - int{image.sample(x, y, ch)}));
        ++samples;
      }
    }
  }
  r.foreground_mad =
      samples ? static_cast<double>(diff) / static_cast<double>(samples) : 0.0;
  r.payload_destroyed = !detect_blind(r.cleaned, library, detector).detected;
  return r;
}

double mitigation_rate(
    std::span<const std::pair<ImageBuffer, InjectionRecord>> corpus,
    const PayloadLibrary& library, const MitigationParams& params,
    const DetectorParams& detector) {
  if (corpus.empty()) throw InvalidArgument("mitigation corpus is empty");
  std::size_t destroyed = 0;
  for (const auto& [image, record] : corpus) {
    if (scrub(image, library, params, detector).payload_destroyed) ++destroyed;
  }
  return static_cast<double>(destroyed) / static_cast<double>(corpus.size());
}

}  // namespace hintguard
