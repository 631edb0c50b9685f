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


#include "hintguard/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"
#include "json.hpp"

namespace hintguard {
namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Channels stay inside [20, 235] so offsets up to 20 never clip, and the luma
// band keeps the JND floor low enough that strong offsets read as visible.
Rgb base_color(Rng& rng) {
  for (;;) {
    const Rgb c{static_cast<std::uint8_t>(uniform(rng, 20, 235)),
                static_cast<std::uint8_t>(uniform(rng, 20, 235)),
                static_cast<std::uint8_t>(uniform(rng, 20, 235))};
    const int l = luma_of(c);
    if (l >= 100 && l <= 200) return c;
  }
}

// A shape colour whose luma sits at least `gap` away from [lo, hi].
Rgb shape_color(Rng& rng, int lo, int hi, int gap) {
  for (;;) {
    const Rgb c{static_cast<std::uint8_t>(uniform(rng, 0, 255)),
                static_cast<std::uint8_t>(uniform(rng, 0, 255)),
                static_cast<std::uint8_t>(uniform(rng, 0, 255))};
    const int l = luma_of(c);
    if (l <= lo - gap || l >= hi + gap) return c;
  }
}

void paint_background(ImageBuffer& img, BackgroundKind kind, Rng& rng,
                      int& luma_lo, int& luma_hi) {
  const int n = img.width();
  if (kind == BackgroundKind::kFlat) {
    const Rgb c = base_color(rng);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) img.set(x, y, c);
    }
    luma_lo = luma_hi = luma_of(c);
    return;
  }
  if (kind == BackgroundKind::kGradient) {
    // A single-axis ramp: every row (or column) is constant, so a median
    // background estimate reproduces it exactly.
    const Rgb c = base_color(rng);
    const int range = uniform(rng, 12, 48);
    const bool vertical = uniform(rng, 0, 1) == 1;
    const int top = *std::max_element(c.begin(), c.end());
    const int start = std::min(0, 235 - (top + range));
    luma_lo = 255;
    luma_hi = 0;
    for (int t = 0; t < n; ++t) {
      const int d = start + (range * t + (n - 1) / 2) / (n - 1);
      Rgb v;
      for (int ch = 0; ch < 3; ++ch) {
        v[ch] = static_cast<std::uint8_t>(std::clamp(c[ch] + d, 0, 255));
      }
      luma_lo = std::min<int>(luma_lo, luma_of(v));
      luma_hi = std::max<int>(luma_hi, luma_of(v));
      for (int s = 0; s < n; ++s) {
        if (vertical) {
          img.set(s, t, v);
        } else {
          img.set(t, s, v);
        }
      }
    }
    return;
  }
  for (auto& s : img.data()) s = static_cast<std::uint8_t>(uniform(rng, 0, 255));
  luma_lo = 0;
  luma_hi = 255;
}

}  // namespace

std::string_view to_string(BackgroundKind k) {
  switch (k) {
    case BackgroundKind::kFlat: return "flat";
    case BackgroundKind::kGradient: return "gradient";
    case BackgroundKind::kNoise: return "noise";
    case BackgroundKind::kMixed: return "mixed";
  }
  return "flat";
}

BackgroundKind parse_background(std::string_view name) {
  for (auto k : {BackgroundKind::kFlat, BackgroundKind::kGradient,
                 BackgroundKind::kNoise, BackgroundKind::kMixed}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown background '" + std::string(name) + "'");
}

void validate(const CorpusSpec& spec) {
  if (spec.count < 1) throw InvalidArgument("corpus count must be >= 1");
  if (spec.min_shapes < 0 || spec.max_shapes < spec.min_shapes) {
    throw InvalidArgument("invalid shape count range");
  }
  if (spec.min_radius < 4 || spec.max_radius < spec.min_radius) {
    throw InvalidArgument("invalid shape radius range");
  }
  // Shapes stay 24 px clear of the border so background growth can always
  // reach around them.
  if (spec.size < 2 * (spec.max_radius + 24) + 1) {
    throw InvalidArgument("corpus image size too small for its shapes");
  }
}

CorpusImage synth_image(const CorpusSpec& spec, int index) {
  validate(spec);
  if (index < 0 || index >= spec.count) {
    throw InvalidArgument("corpus index out of range");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                    static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);

  CorpusImage out;
  char id[32];
  std::snprintf(id, sizeof id, "img_%05d", index);
  out.id = id;
  out.background = spec.background;
  if (spec.background == BackgroundKind::kMixed) {
    static constexpr BackgroundKind kCycle[] = {
        BackgroundKind::kFlat, BackgroundKind::kGradient, BackgroundKind::kNoise};
    out.background = kCycle[index % 3];
  }

  const int n = spec.size;
  out.image = ImageBuffer(n, n);
  out.alpha = PayloadMask(n, n);
  int lo = 0;
  int hi = 0;
  paint_background(out.image, out.background, rng, lo, hi);

  const int shapes = uniform(rng, spec.min_shapes, spec.max_shapes);
  for (int s = 0; s < shapes; ++s) {
    const bool disk = uniform(rng, 0, 1) == 0;
    const int r = uniform(rng, spec.min_radius, spec.max_radius);
    const int cx = uniform(rng, r + 24, n - 1 - r - 24);
    const int cy = uniform(rng, r + 24, n - 1 - r - 24);
    const int gap = 48 + (hi - lo) / 2;
    const Rgb c = out.background == BackgroundKind::kNoise
                      ? shape_color(rng, 128, 128, 0)
                      : shape_color(rng, lo, hi, gap);
    for (int y = cy - r; y <= cy + r; ++y) {
      for (int x = cx - r; x <= cx + r; ++x) {
        const int dx = x - cx;
        const int dy = y - cy;
        if (disk && dx * dx + dy * dy > r * r) continue;
        out.image.set(x, y, c);
        out.alpha.set(x, y, true);
      }
    }
  }
  return out;
}

std::vector<CorpusImage> synth_corpus(const CorpusSpec& spec) {
  validate(spec);
  std::vector<CorpusImage> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) out.push_back(synth_image(spec, i));
  return out;
}

void write_corpus(const std::vector<CorpusImage>& corpus, const CorpusSpec& spec,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  for (const auto& item : corpus) {
    const std::string image_file = item.id + ".png";
    const std::string alpha_file = item.id + "_alpha.png";
    save_png(item.image, dir / image_file);
    save_mask(item.alpha, dir / alpha_file);
    images.push_back({{"id", item.id},
                      {"background", to_string(item.background)},
                      {"image", image_file},
                      {"alpha", alpha_file}});
  }
  nlohmann::ordered_json manifest = {
      {"seed", spec.seed},
      {"count", spec.count},
      {"size", spec.size},
      {"background", to_string(spec.background)},
      {"min_shapes", spec.min_shapes},
      {"max_shapes", spec.max_shapes},
      {"min_radius", spec.min_radius},
      {"max_radius", spec.max_radius},
      {"images", std::move(images)}};
  std::ofstream f(dir / "manifest.json", std::ios::binary);
  if (!f) throw IoError("cannot write " + (dir / "manifest.json").string());
  f << manifest.dump(2) << '\n';
  if (!f) throw IoError("write failed for " + (dir / "manifest.json").string());
}

LoadedCorpus load_corpus(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  LoadedCorpus out;
  try {
    const auto m = nlohmann::json::parse(f);
    out.spec.seed = m.at("seed").get<std::uint64_t>();
    out.spec.count = m.at("count").get<int>();
    out.spec.size = m.at("size").get<int>();
    out.spec.background = parse_background(m.at("background").get<std::string>());
    out.spec.min_shapes = m.at("min_shapes").get<int>();
    out.spec.max_shapes = m.at("max_shapes").get<int>();
    out.spec.min_radius = m.at("min_radius").get<int>();
    out.spec.max_radius = m.at("max_radius").get<int>();
    for (const auto& e : m.at("images")) {
      CorpusImage item;
      item.id = e.at("id").get<std::string>();
      item.background = parse_background(e.at("background").get<std::string>());
      item.image = load_png(dir / e.at("image").get<std::string>());
      item.alpha = load_mask(dir / e.at("alpha").get<std::string>());
      if (item.alpha.size() != item.image.size()) {
        throw FormatError("alpha size mismatch for " + item.id);
      }
      out.images.push_back(std::move(item));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed manifest " + path.string() + ": " + e.what());
  }
  if (out.images.empty()) throw FormatError("manifest lists no images");
  return out;
}

}  // namespace hintguard
