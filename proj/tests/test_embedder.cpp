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


#include <gtest/gtest.h>

#include <cstdlib>

#include "hintguard/embedder.hpp"
#include "hintguard/entropy.hpp"
#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"
#include "support.hpp"

namespace hintguard {
namespace {

using testing::Gen;

InjectionSpec spec_at(const PayloadMask& m, int strength, Point at, int sign = 1) {
  InjectionSpec s;
  s.strength = strength;
  s.sign = sign;
  s.mask = m;
  s.placement = explicit_placement(at);
  return s;
}

TEST(Embed, AnalyticSquare) {
  const ImageBuffer clean(64, 64, {128, 128, 128});
  const auto [out, rec] =
      embed_payload(clean, spec_at(testing::square_mask(16), 2, {10, 10}));
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const bool in = x >= 10 && x < 26 && y >= 10 && y < 26;
      const Rgb want = in ? Rgb{130, 130, 130} : Rgb{128, 128, 128};
      EXPECT_EQ(out.at(x, y), want);
    }
  }
  EXPECT_EQ(rec.clipped_pixels, 0u);
  EXPECT_EQ(rec.origin, (Point{10, 10}));
  EXPECT_EQ(rec.payload_id, "square");
}

TEST(Embed, StrengthZeroIsIdentity) {
  Gen gen(41);
  const ImageBuffer clean = gen.image(40, 30);
  EXPECT_EQ(embed_payload(clean, spec_at(gen.mask(20, 20, 0.5), 0, {5, 5})).first,
            clean);
}

TEST(Embed, SaturationIsCountedAsClipping) {
  ImageBuffer clean(4, 4, {255, 255, 255});
  const auto [out, rec] = embed_payload(clean, spec_at(testing::square_mask(2), 2, {1, 1}));
  EXPECT_EQ(out.at(1, 1), (Rgb{255, 255, 255}));
  EXPECT_EQ(rec.clipped_pixels, 4u);

  ImageBuffer dark(4, 4, {1, 100, 100});
  const auto [out2, rec2] =
      embed_payload(dark, spec_at(testing::square_mask(1), 2, {0, 0}, -1));
  EXPECT_EQ(out2.at(0, 0), (Rgb{0, 98, 98}));
  EXPECT_EQ(rec2.clipped_pixels, 1u);
}

TEST(Embed, Errors) {
  const ImageBuffer clean(32, 32);
  const PayloadMask m = testing::square_mask(8);
  EXPECT_THROW(embed_payload(clean, spec_at(m, 2, {25, 0})), InvalidArgument);
  EXPECT_THROW(embed_payload(clean, spec_at(m, 2, {-1, 0})), InvalidArgument);
  EXPECT_THROW(embed_payload(clean, spec_at(m, 2, {0, 0}, 0)), InvalidArgument);
  EXPECT_THROW(embed_payload(clean, spec_at(m, -1, {0, 0})), InvalidArgument);

  InjectionSpec s = spec_at(m, 2, {0, 0});
  s.placement.feasible = false;
  s.require_feasible = true;
  EXPECT_THROW(embed_payload(clean, s), InvalidArgument);
}

TEST(Embed, RoundTripPropertyWithoutClipping) {
  Gen gen(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = gen.range(8, 60);
    const int h = gen.range(8, 60);
    const ImageBuffer clean = gen.image(w, h, 10, 245);
    const PayloadMask m = gen.nonempty_mask(gen.range(1, w), gen.range(1, h), 0.4);
    const Point at{gen.range(0, w - m.width()), gen.range(0, h - m.height())};
    const int strength = std::array{1, 2, 5, 10}[static_cast<std::size_t>(gen.range(0, 3))];
    const int sign = gen.chance(0.5) ? 1 : -1;
    const auto [out, rec] = embed_payload(clean, spec_at(m, strength, at, sign));
    ASSERT_EQ(rec.clipped_pixels, 0u);
    const PayloadMask placed = placed_mask(rec, clean.size());
    EXPECT_EQ(residual_of(clean, out), placed);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 3; ++c) {
          const int d = out.sample(x, y, c) - clean.sample(x, y, c);
          EXPECT_EQ(d, placed.test(x, y) ? sign * strength : 0);
        }
      }
    }
  }
}

TEST(Embed, FlatBackgroundEntropyStaysUnderOneBit) {
  Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint8_t v = static_cast<std::uint8_t>(gen.range(20, 230));
    const ImageBuffer clean(48, 48, {v, v, v});
    const auto [out, rec] = embed_payload(
        clean, spec_at(gen.mask(40, 40, gen.range(1, 99) / 100.0), gen.range(1, 10), {4, 4}));
    EXPECT_LE(shannon_entropy(to_luma(out)), 1.0);
  }
}

TEST(Residual, MissingExactlyTheClippedPixels) {
  Gen gen(44);
  ImageBuffer clean = gen.image(30, 30, 100, 200);
  // Sprinkle saturated pixels; each one under the mask saturates on every
  // channel and so cannot change.
  std::size_t saturated_under_mask = 0;
  const PayloadMask m = gen.nonempty_mask(20, 20, 0.5);
  for (int i = 0; i < 60; ++i) {
    const int x = gen.range(0, 29), y = gen.range(0, 29);
    clean.set(x, y, {255, 255, 255});
  }
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      if (m.test(x, y) && clean.at(x + 5, y + 5) == Rgb{255, 255, 255}) {
        ++saturated_under_mask;
      }
    }
  }
  const auto [out, rec] = embed_payload(clean, spec_at(m, 2, {5, 5}));
  EXPECT_EQ(rec.clipped_pixels, saturated_under_mask);
  EXPECT_EQ(residual_of(clean, out).count(), m.count() - saturated_under_mask);
  EXPECT_TRUE(residual_of(clean, clean).empty());
  EXPECT_THROW(residual_of(clean, ImageBuffer(3, 3)), InvalidArgument);
}

TEST(Prompt, AugmentationSuffixAndIdempotence) {
  EXPECT_EQ(augment_prompt("a dog"),
            "a dog, minimalist composition, objects in the corner of the "
            "image, vast empty space, no clutter in the middle, solid "
            "background");
  const std::string once = augment_prompt("a red bicycle");
  EXPECT_EQ(augment_prompt(once), once);
  EXPECT_THROW(augment_prompt(""), InvalidArgument);
}

TEST(Placement, PlanPlacementKeepsMargin) {
  const GrayBuffer g(200, 200, 80);
  const PayloadMask m = testing::square_mask(50);
  const PlacementDecision p = plan_placement(g, m, {}, 16);
  EXPECT_EQ(p.origin, (Point{16, 16}));
  EXPECT_TRUE(p.feasible);
  EXPECT_THROW(plan_placement(g, m, {}, -1), InvalidArgument);
  EXPECT_EQ(kDefaultStrength, 2);
}

}  // namespace
}  // namespace hintguard
