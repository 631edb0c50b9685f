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

#include <array>
#include <string>
#include <vector>

#include "hintguard/detector.hpp"
#include "hintguard/embedder.hpp"
#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"
#include "support.hpp"

namespace hintguard {
namespace {

using testing::Gen;

std::pair<ImageBuffer, InjectionRecord> inject(const ImageBuffer& clean,
                                               const PayloadMask& payload,
                                               int strength, Point at,
                                               int sign = 1) {
  InjectionSpec s;
  s.strength = strength;
  s.sign = sign;
  s.mask = payload;
  s.placement = explicit_placement(at);
  return embed_payload(clean, s);
}

TEST(Library, BuiltinHasSixCanonicalPayloads) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  ASSERT_EQ(lib.size(), 6u);
  const std::array<std::string, 6> ids{"apple",     "benz",   "chanel",
                                       "mcdonalds", "flower", "fuji"};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(lib.entries()[i].payload_id(), ids[i]);
    EXPECT_EQ(lib.entries()[i].width(), kCanonicalPayloadWidth);
    EXPECT_EQ(lib.entries()[i].bbox().width, kCanonicalPayloadWidth);
  }
}

TEST(Library, Errors) {
  PayloadLibrary lib;
  EXPECT_THROW(lib.add(PayloadMask(4, 4, "blank")), InvalidArgument);
  EXPECT_THROW(lib.add(testing::square_mask(4, "")), InvalidArgument);
  lib.add(testing::square_mask(4, "a"));
  EXPECT_THROW(lib.add(testing::square_mask(5, "a")), InvalidArgument);
  EXPECT_THROW(lib.get("b"), InvalidArgument);
  EXPECT_THROW(PayloadLibrary::load_dir("/nonexistent/hintguard"), IoError);
  testing::ScratchDir empty("emptylib");
  EXPECT_THROW(PayloadLibrary::load_dir(empty.path()), FormatError);
}

TEST(Library, LoadDirUsesStemsInLexicographicOrder) {
  testing::ScratchDir dir("lib");
  save_mask(testing::square_mask(6), dir.path() / "zeta.png");
  PayloadMask ring(9, 9);
  for (int i = 0; i < 9; ++i) {
    ring.set(i, 0, true);
    ring.set(0, i, true);
    ring.set(i, 8, true);
    ring.set(8, i, true);
  }
  save_mask(ring, dir.path() / "alpha.png");
  const PayloadLibrary lib = PayloadLibrary::load_dir(dir.path());
  ASSERT_EQ(lib.size(), 2u);
  EXPECT_EQ(lib.entries()[0].payload_id(), "alpha");
  EXPECT_EQ(lib.entries()[0], ring);
  EXPECT_EQ(lib.entries()[1].payload_id(), "zeta");
}

TEST(Match, ExactSelfMatchScoresOne) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  for (const auto& entry : lib.entries()) {
    const MatchResult m = match_payload(entry.placed({400, 400}, {30, 50}), lib);
    ASSERT_TRUE(m.payload_id.has_value());
    EXPECT_EQ(*m.payload_id, entry.payload_id());
    EXPECT_DOUBLE_EQ(m.score, 1.0);
  }
}

TEST(Match, CheckerboardSitsExactlyOnTheThreshold) {
  PayloadLibrary lib;
  lib.add(testing::square_mask(8, "solid"));
  PayloadMask board(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) board.set(x, y, (x + y) % 2 == 0);
  }
  const MatchResult m = match_payload(board, lib);
  EXPECT_DOUBLE_EQ(m.score, 0.5);
  ASSERT_TRUE(m.payload_id.has_value());
  DetectorParams strict;
  strict.match_threshold = 0.51;
  const MatchResult s = match_payload(board, lib, strict);
  EXPECT_FALSE(s.payload_id.has_value());
  EXPECT_DOUBLE_EQ(s.score, 0.5);
}

TEST(Match, HalfErasedLogoScoresOneHalf) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  PayloadMask half = lib.get("benz");
  const Rect box = half.bbox();
  std::size_t seen = 0;
  for (int y = 0; y < half.height(); ++y) {
    for (int x = 0; x < half.width(); ++x) {
      if (!half.test(x, y)) continue;
      // Keep the extreme pixels so the bounding box is unchanged.
      const bool extreme = x == box.x || y == box.y || x == box.right() - 1 ||
                           y == box.bottom() - 1;
      if (seen++ % 2 == 1 && !extreme) half.set(x, y, false);
    }
  }
  ASSERT_EQ(half.bbox(), box);
  const double expect = static_cast<double>(half.count()) /
                        static_cast<double>(lib.get("benz").count());
  const MatchResult m = match_payload(half, lib);
  EXPECT_DOUBLE_EQ(m.score, expect);
  EXPECT_NEAR(m.score, 0.5, 0.02);
}

TEST(Match, DisjointShapesDoNotMatch) {
  PayloadLibrary lib;
  PayloadMask anti(16, 16, "anti");
  anti.set(15, 0, true);
  anti.set(0, 15, true);
  lib.add(anti);
  PayloadMask diag(16, 16);
  diag.set(0, 0, true);
  diag.set(15, 15, true);
  const MatchResult m = match_payload(diag, lib);
  EXPECT_FALSE(m.payload_id.has_value());
  EXPECT_DOUBLE_EQ(m.score, 0.0);
  EXPECT_THROW(match_payload(PayloadMask(4, 4), lib), InvalidArgument);
}

TEST(Paired, RecoversTheExactPayload) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  const ImageBuffer clean(512, 512, {128, 128, 128});
  const auto [suspect, rec] = inject(clean, lib.get("benz"), 2, {100, 120});
  const DetectionReport r = detect_paired(clean, suspect, lib);
  EXPECT_TRUE(r.detected);
  EXPECT_TRUE(r.identified("benz"));
  EXPECT_DOUBLE_EQ(*r.match_score, 1.0);
  EXPECT_EQ(r.recovered, placed_mask(rec, clean.size()));
  EXPECT_EQ(r.method, DetectionMethod::kPaired);
}

TEST(Paired, CleanAndSparseDifferencesAreNotDetections) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  Gen gen(61);
  const ImageBuffer clean = gen.image(128, 128);
  EXPECT_FALSE(detect_paired(clean, clean, lib).detected);
  ImageBuffer touched = clean;
  for (int i = 0; i < 10; ++i) {
    touched.sample(i * 7, i * 5, 1) ^= 1;
  }
  const DetectionReport r = detect_paired(clean, touched, lib);
  EXPECT_FALSE(r.detected);
  EXPECT_FALSE(r.best_match.has_value());
  EXPECT_EQ(r.recovered.count(), 10u);
}

TEST(Blind, IdentifiesLowStrengthPayloadsOnFlatBackgrounds) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  Gen gen(62);
  for (const auto& entry : lib.entries()) {
    const auto v = static_cast<std::uint8_t>(gen.range(40, 215));
    const ImageBuffer clean(448, 448, {v, v, v});
    const int strength = std::array{1, 2, 5, 10}[static_cast<std::size_t>(gen.range(0, 3))];
    const Point at{gen.range(16, 448 - 16 - entry.width()),
                   gen.range(16, 448 - 16 - entry.height())};
    const auto [suspect, rec] =
        inject(clean, entry, strength, at, gen.chance(0.5) ? 1 : -1);
    const DetectionReport r = detect_blind(suspect, lib);
    EXPECT_TRUE(r.identified(entry.payload_id()))
        << entry.payload_id() << " strength " << strength;
    // The 3x3 opening trims about a pixel off stroke ends and thin
    // diagonals, so recovery is close but not exact.
    EXPECT_GE(iou(r.recovered, placed_mask(rec, clean.size())), 0.7)
        << entry.payload_id();
  }
}

TEST(Blind, BenzAtStrengthTwoOnMidGray) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  const ImageBuffer clean(768, 768, {128, 128, 128});
  const auto [suspect, rec] = inject(clean, lib.get("benz"), 2, {256, 256});
  const DetectionReport r = detect_blind(suspect, lib);
  EXPECT_TRUE(r.detected);
  EXPECT_TRUE(r.identified("benz"));
  EXPECT_GE(r.match_score.value_or(0.0), 0.8);
}

TEST(Blind, CleanFlatAndNoisyImagesAreNotDetections) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  EXPECT_FALSE(detect_blind(ImageBuffer(300, 300, {90, 140, 200}), lib).detected);
  Gen gen(63);
  const ImageBuffer noise = gen.image(448, 448);
  EXPECT_FALSE(detect_blind(noise, lib).detected);
  const auto [suspect, rec] = inject(noise, lib.get("benz"), 2, {96, 96});
  const DetectionReport r = detect_blind(suspect, lib);
  EXPECT_FALSE(r.identified("benz"));
}

TEST(Blind, RandomCleanImagesNeverIdentifyAPayload) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  Gen gen(64);
  for (int trial = 0; trial < 10; ++trial) {
    ImageBuffer img = gen.chance(0.5) ? gen.image(160, 160)
                                      : ImageBuffer(160, 160, {50, 60, 70});
    // A few hard-edged blocks.
    for (int k = 0; k < 3; ++k) {
      const int x0 = gen.range(0, 120), y0 = gen.range(0, 120);
      const auto c = static_cast<std::uint8_t>(gen.range(0, 255));
      for (int y = y0; y < y0 + 40; ++y) {
        for (int x = x0; x < x0 + 40; ++x) img.set(x, y, {c, c, c});
      }
    }
    EXPECT_FALSE(detect_blind(img, lib).best_match.has_value());
  }
}

TEST(Blind, DeterministicAndSizeChecked) {
  const PayloadLibrary lib = PayloadLibrary::builtin();
  const ImageBuffer clean(400, 400, {120, 120, 120});
  const auto [suspect, rec] = inject(clean, lib.get("fuji"), 2, {40, 40});
  const DetectionReport a = detect_blind(suspect, lib);
  const DetectionReport b = detect_blind(suspect, lib);
  EXPECT_EQ(a.recovered, b.recovered);
  EXPECT_EQ(a.best_match, b.best_match);
  EXPECT_EQ(a.match_score, b.match_score);
  EXPECT_EQ(to_string(a.method), "blind");
  EXPECT_THROW(detect_paired(clean, ImageBuffer(4, 4), lib), InvalidArgument);
}

}  // namespace
}  // namespace hintguard
