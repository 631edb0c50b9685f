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
// Built-in payload shapes. Each is line art rasterised from a distance
// field with a stroke of about three pixels: strokes this thin stay below
// half of a 9x9 median window, so the median background estimate does not
// absorb them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hintguard/detector.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStrokeHalfWidth = 1.6;

struct Vec {
  double x;
  double y;
};

double length(Vec v) { return std::hypot(v.x, v.y); }

double segment_distance(Vec p, Vec a, Vec b) {
  const Vec ab{b.x - a.x, b.y - a.y};
  const Vec ap{p.x - a.x, p.y - a.y};
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  const double t =
      len2 == 0 ? 0.0 : std::clamp((ap.x * ab.x + ap.y * ab.y) / len2, 0.0, 1.0);
  return length({ap.x - t * ab.x, ap.y - t * ab.y});
}

// Unsigned distance to a stroked curve, in design units.
using Stroke = std::function<double(Vec)>;

Stroke polyline(std::vector<Vec> pts) {
  return [pts = std::move(pts)](Vec p) {
    double d = 1e30;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      d = std::min(d, segment_distance(p, pts[i], pts[i + 1]));
    }
    return d;
  };
}

// Arc from angle a0 to a1 (radians, counter-clockwise in image coordinates
// with y pointing down, i.e. visually clockwise).
Stroke arc(Vec c, double r, double a0, double a1) {
  return [=](Vec p) {
    const Vec d{p.x - c.x, p.y - c.y};
    double a = std::atan2(d.y, d.x);
    while (a < a0) a += 2 * kPi;
    if (a <= a1) return std::abs(length(d) - r);
    const Vec e0{c.x + r * std::cos(a0), c.y + r * std::sin(a0)};
    const Vec e1{c.x + r * std::cos(a1), c.y + r * std::sin(a1)};
    return std::min(length({p.x - e0.x, p.y - e0.y}),
                    length({p.x - e1.x, p.y - e1.y}));
  };
}

Stroke circle(Vec c, double r) {
  return [=](Vec p) { return std::abs(length({p.x - c.x, p.y - c.y}) - r); };
}

// Closed outline of a rotated ellipse as a fine polyline.
Stroke ellipse(Vec c, double rx, double ry, double angle) {
  std::vector<Vec> pts;
  const int n = 96;
  for (int i = 0; i <= n; ++i) {
    const double t = 2 * kPi * i / n;
    const double ex = rx * std::cos(t);
    const double ey = ry * std::sin(t);
    pts.push_back({c.x + ex * std::cos(angle) - ey * std::sin(angle),
                   c.y + ex * std::sin(angle) + ey * std::cos(angle)});
  }
  return polyline(std::move(pts));
}

// Outline of a signed-distance region.
Stroke outline(std::function<double(Vec)> sdf) {
  return [sdf = std::move(sdf)](Vec p) { return std::abs(sdf(p)); };
}

struct Design {
  const char* id;
  std::vector<Stroke> strokes;
  double extent;  // design-space bounding square side
};

PayloadMask rasterise(const Design& d, double scale) {
  const int side = static_cast<int>(std::ceil(d.extent * scale)) + 16;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(side) * side, 0);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const Vec p{(x - 8 + 0.5) / scale, (y - 8 + 0.5) / scale};
      for (const auto& s : d.strokes) {
        if (s(p) * scale <= kStrokeHalfWidth) {
          bits[static_cast<std::size_t>(y) * side + x] = 1;
          break;
        }
      }
    }
  }
  return PayloadMask(side, side, std::move(bits), d.id).cropped();
}

// Renders at the scale whose bounding box is the canonical width, so the
// stroke width is not distorted by a final resample.
PayloadMask render(const Design& d) {
  double scale = kCanonicalPayloadWidth / d.extent;
  PayloadMask m = rasterise(d, scale);
  for (int i = 0; i < 4 && m.width() != kCanonicalPayloadWidth; ++i) {
    scale *= static_cast<double>(kCanonicalPayloadWidth - 2 * kStrokeHalfWidth) /
             (m.width() - 2 * kStrokeHalfWidth);
    m = rasterise(d, scale);
  }
  if (m.width() != kCanonicalPayloadWidth) {
    m = scale_mask(m, kCanonicalPayloadWidth);
  }
  return m;
}

Design apple() {
  auto body = [](Vec p) {
    const double left = length({p.x - 38, p.y - 62}) - 34;
    const double right = length({p.x - 62, p.y - 62}) - 34;
    const double bite = length({p.x - 100, p.y - 52}) - 15;
    return std::max(std::min(left, right), -bite);
  };
  return {"apple",
          {outline(body), ellipse({56, 14}, 13, 6, -0.6),
           polyline({{50, 30}, {52, 24}})},
          100};
}

Design benz() {
  const Vec c{50, 50};
  const double r = 48;
  std::vector<Stroke> s{circle(c, r)};
  for (double deg : {-90.0, 30.0, 150.0}) {
    const double a = deg * kPi / 180;
    s.push_back(polyline({c, {c.x + r * std::cos(a), c.y + r * std::sin(a)}}));
  }
  return {"benz", std::move(s), 100};
}

Design chanel() {
  // Two interlocking rings with outward openings. The left ring is broken
  // where it passes under the right one; a solid crossing is dense enough
  // for the median background to swallow it.
  const double r = 35;
  const double gap = 0.45;    // half-opening of each C, radians
  const double under = 0.2;   // half-width of each break, radians
  const double cross = std::atan2(std::sqrt(r * r - 14.0 * 14.0), 14.0);
  const Vec left{36, 50};
  return {"chanel",
          {arc({64, 50}, r, gap, 2 * kPi - gap),
           arc(left, r, -kPi + gap, -cross - under),
           arc(left, r, -cross + under, cross - under),
           arc(left, r, cross + under, kPi - gap)},
          100};
}

Design mcdonalds() {
  std::vector<Vec> pts;
  for (int i = 0; i <= 80; ++i) {
    const double x = 2 + 96.0 * i / 80;
    const double local = std::fmod(x - 2, 48.0) - 24;  // [-24, 24) per arch
    const double y = 8 + 90 * (local * local) / (24.0 * 24.0);
    pts.push_back({x, y});
  }
  return {"mcdonalds", {polyline(std::move(pts))}, 100};
}

Design flower() {
  const Vec c{50, 50};
  std::vector<Stroke> s{circle(c, 7)};
  for (int k = 0; k < 6; ++k) {
    const double a = k * kPi / 3;
    s.push_back(ellipse({c.x + 32 * std::cos(a), c.y + 32 * std::sin(a)}, 17,
                        8, a));
  }
  return {"flower", std::move(s), 100};
}

Design fuji() {
  // The slopes stop short of the base. Acute joints are dense enough for
  // the median background to swallow them.
  return {"fuji",
          {polyline({{10, 70}, {42, 14}, {70, 14}, {102, 70}}),
           polyline({{0, 78}, {112, 78}}),
           polyline({{30, 36}, {40, 44}, {48, 36}, {56, 45}, {64, 36},
                     {72, 44}, {82, 36}})},
          112};
}

}  // namespace

PayloadLibrary PayloadLibrary::builtin() {
  static const PayloadLibrary lib = [] {
    PayloadLibrary l;
    for (const Design& d : {apple(), benz(), chanel(), mcdonalds(), flower(),
                            fuji()}) {
      l.add(render(d));
    }
    return l;
  }();
  return lib;
}

}  // namespace hintguard
