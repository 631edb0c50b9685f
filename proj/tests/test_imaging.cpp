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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"
#include "support.hpp"

namespace hintguard {
namespace {

using testing::Gen;
using testing::ScratchDir;

// Brute-force clamped-window median.
GrayBuffer median_oracle(const GrayBuffer& g, int r) {
  GrayBuffer out(g.width(), g.height());
  std::vector<int> win;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      win.clear();
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = std::clamp(x + dx, 0, g.width() - 1);
          const int yy = std::clamp(y + dy, 0, g.height() - 1);
          win.push_back(g.at(xx, yy));
        }
      }
      std::nth_element(win.begin(), win.begin() + win.size() / 2, win.end());
      out.at(x, y) = static_cast<std::uint8_t>(win[win.size() / 2]);
    }
  }
  return out;
}

// Endpoint-inclusive nearest neighbour written independently: the source
// coordinate is round(i * (src - 1) / (dst - 1)), halves rounding up.
int nn(int i, int src, int dst) {
  if (dst == 1) return 0;
  return static_cast<int>(std::floor(static_cast<double>(i) * (src - 1) /
                                         (dst - 1) +
                                     0.5));
}

PayloadMask resample_oracle(const PayloadMask& m, int w, int h) {
  const PayloadMask c = m.cropped();
  PayloadMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.set(x, y, c.test(nn(x, c.width(), w), nn(y, c.height(), h)));
    }
  }
  return out;
}

TEST(Image, ConstructionAndBounds) {
  ImageBuffer img(3, 2, {1, 2, 3});
  EXPECT_EQ(img.data().size(), 18u);
  EXPECT_EQ(img.at(2, 1), (Rgb{1, 2, 3}));
  EXPECT_THROW(ImageBuffer(0, 4), InvalidArgument);
  EXPECT_THROW(ImageBuffer::from_rgb(2, 2, std::vector<std::uint8_t>(11)),
               InvalidArgument);
  EXPECT_THROW(GrayBuffer(2, 2, std::vector<std::uint8_t>(3)), InvalidArgument);
}

TEST(PayloadMask, BboxTracksMutations) {
  PayloadMask m(10, 8, "x");
  EXPECT_TRUE(m.empty());
  EXPECT_EQ(m.bbox(), Rect{});
  m.set(3, 2, true);
  m.set(7, 5, true);
  EXPECT_EQ(m.bbox(), (Rect{3, 2, 5, 4}));
  m.set(7, 5, false);
  EXPECT_EQ(m.bbox(), (Rect{3, 2, 1, 1}));
  m.set(3, 2, false);
  EXPECT_TRUE(m.empty());
  EXPECT_EQ(m.bbox(), Rect{});
}

TEST(PayloadMask, BboxPropertyOnRandomMasks) {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = gen.range(1, 40);
    const int h = gen.range(1, 40);
    const PayloadMask m = gen.mask(w, h, gen.range(0, 10) / 40.0);
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!m.test(x, y)) continue;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
    if (x1 < 0) {
      EXPECT_TRUE(m.empty());
    } else {
      EXPECT_EQ(m.bbox(), (Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1}));
    }
  }
}

TEST(PayloadMask, CroppedAndPlaced) {
  PayloadMask m(6, 6, "p");
  m.set(2, 1, true);
  m.set(4, 3, true);
  const PayloadMask c = m.cropped();
  EXPECT_EQ(c.width(), 3);
  EXPECT_EQ(c.height(), 3);
  EXPECT_TRUE(c.test(0, 0));
  EXPECT_TRUE(c.test(2, 2));
  EXPECT_EQ(c.payload_id(), "p");
  const PayloadMask p = c.placed({10, 10}, {5, 6});
  EXPECT_EQ(p.bbox(), (Rect{5, 6, 3, 3}));
  EXPECT_THROW(c.placed({4, 4}, {3, 3}), InvalidArgument);
}

TEST(Luma, KnownValues) {
  EXPECT_EQ(luma_of({255, 255, 255}), 255);
  EXPECT_EQ(luma_of({255, 0, 0}), 76);
  EXPECT_EQ(luma_of({0, 0, 0}), 0);
  EXPECT_EQ(luma_of({0, 255, 0}), 150);  // 149.685
  EXPECT_EQ(luma_of({0, 0, 255}), 29);   // 29.07
}

TEST(Luma, MatchesFloatingFormulaOnRandomPixels) {
  Gen gen(12);
  for (int i = 0; i < 20000; ++i) {
    const Rgb c{static_cast<std::uint8_t>(gen.range(0, 255)),
                static_cast<std::uint8_t>(gen.range(0, 255)),
                static_cast<std::uint8_t>(gen.range(0, 255))};
    // Exact halves are common, so nudge them up past the binary rounding
    // error of the weights.
    const double exact = 0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2];
    EXPECT_EQ(luma_of(c), static_cast<int>(std::floor(exact + 0.5 + 1e-9)))
        << int(c[0]) << "," << int(c[1]) << "," << int(c[2]);
  }
}

TEST(Luma, PermutationEquivariant) {
  Gen gen(13);
  const ImageBuffer img = gen.image(17, 9);
  std::vector<std::size_t> perm(img.pixel_count());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), gen.engine());
  std::vector<std::uint8_t> shuffled(img.data().size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (int c = 0; c < 3; ++c) shuffled[3 * i + c] = img.data()[3 * perm[i] + c];
  }
  const GrayBuffer a = to_luma(img);
  const GrayBuffer b = to_luma(ImageBuffer::from_rgb(17, 9, shuffled));
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EXPECT_EQ(b.data()[i], a.data()[perm[i]]);
  }
}

TEST(Png, RoundTripPropertyOnRandomBuffers) {
  ScratchDir dir("png");
  Gen gen(14);
  for (int trial = 0; trial < 20; ++trial) {
    const ImageBuffer img = gen.image(gen.range(1, 50), gen.range(1, 50));
    const auto path = dir.path() / "rt.png";
    save_png(img, path);
    EXPECT_EQ(load_png(path), img);
  }
}

TEST(Png, WhitePixelAndGrayReplication) {
  ScratchDir dir("png1");
  save_gray_png(GrayBuffer(1, 1, 255), dir.path() / "w.png");
  const ImageBuffer w = load_png(dir.path() / "w.png");
  EXPECT_EQ(w.at(0, 0), (Rgb{255, 255, 255}));
}

TEST(Png, Errors) {
  ScratchDir dir("png2");
  EXPECT_THROW(load_png(dir.path() / "missing.png"), IoError);
  Gen gen(15);
  save_png(gen.image(20, 20), dir.path() / "full.png");
  std::ifstream in(dir.path() / "full.png", std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  {
    std::ofstream out(dir.path() / "cut.png", std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  }
  EXPECT_THROW(load_png(dir.path() / "cut.png"), FormatError);
  {
    std::ofstream out(dir.path() / "text.png", std::ios::binary);
    out << "definitely not a png";
  }
  EXPECT_THROW(load_png(dir.path() / "text.png"), FormatError);
  EXPECT_THROW(save_png(gen.image(2, 2), dir.path() / "no" / "such" / "x.png"),
               IoError);
}

TEST(Mask, StrictThresholdOnLoad) {
  ScratchDir dir("mask");
  std::vector<std::uint8_t> px = {0, 127, 128, 255};
  save_gray_png(GrayBuffer(2, 2, px), dir.path() / "logo.png");
  const PayloadMask m = load_mask(dir.path() / "logo.png");
  EXPECT_FALSE(m.test(0, 0));
  EXPECT_FALSE(m.test(1, 0));
  EXPECT_TRUE(m.test(0, 1));
  EXPECT_TRUE(m.test(1, 1));
  EXPECT_EQ(m.payload_id(), "logo");

  save_gray_png(GrayBuffer(5, 4, 0), dir.path() / "zero.png");
  EXPECT_TRUE(load_mask(dir.path() / "zero.png").empty());
  save_gray_png(GrayBuffer(5, 4, 255), dir.path() / "full.png");
  EXPECT_EQ(load_mask(dir.path() / "full.png").bbox(), (Rect{0, 0, 5, 4}));
}

TEST(Median, MatchesBruteForceOracle) {
  Gen gen(16);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = gen.range(1, 30);
    const int h = gen.range(1, 30);
    const int r = gen.range(1, 5);
    const GrayBuffer g = gen.chance(0.5) ? gen.gray(w, h) : gen.gray(w, h, 100, 104);
    EXPECT_EQ(median_filter(g, r), median_oracle(g, r)) << w << "x" << h << " r" << r;
  }
}

TEST(Median, CheckerboardAndOutlier) {
  GrayBuffer board(9, 7);
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 9; ++x) board.at(x, y) = (x + y) % 2 ? 200 : 10;
  }
  EXPECT_EQ(median_filter(board, 1), median_oracle(board, 1));

  GrayBuffer flat(11, 11, 90);
  flat.at(5, 5) = 250;
  EXPECT_EQ(median_filter(flat, 1), GrayBuffer(11, 11, 90));
  EXPECT_THROW(median_filter(flat, 0), InvalidArgument);
}

TEST(Median, IdempotentOnConstantsAndBoundedByInputRange) {
  Gen gen(17);
  EXPECT_EQ(median_filter(GrayBuffer(13, 5, 42), 3), GrayBuffer(13, 5, 42));
  for (int trial = 0; trial < 20; ++trial) {
    const GrayBuffer g = gen.gray(20, 20, gen.range(0, 100), gen.range(150, 255));
    const auto [lo, hi] = std::minmax_element(g.data().begin(), g.data().end());
    const GrayBuffer med = median_filter(g, gen.range(1, 4));
    for (auto v : med.data()) {
      EXPECT_GE(v, *lo);
      EXPECT_LE(v, *hi);
    }
  }
}

TEST(Resample, MatchesBruteForceNearestNeighbour) {
  Gen gen(18);
  for (int trial = 0; trial < 60; ++trial) {
    const PayloadMask m =
        gen.nonempty_mask(gen.range(1, 40), gen.range(1, 40), 0.3);
    const int w = gen.range(1, 60);
    const int h = gen.range(1, 60);
    EXPECT_EQ(resample_mask(m, w, h), resample_oracle(m, w, h));
  }
}

TEST(ScaleMask, IdentityAndQuarterArea) {
  Gen gen(19);
  const PayloadMask m = gen.nonempty_mask(37, 23, 0.4).cropped();
  EXPECT_EQ(scale_mask(m, m.width()), m);

  const PayloadMask sq = testing::square_mask(64);
  const PayloadMask half = scale_mask(sq, 32);
  EXPECT_EQ(half.bbox().width, 32);
  EXPECT_EQ(half.count(), 32u * 32u);
  EXPECT_EQ(half, resample_oracle(sq, 32, 32));
  EXPECT_THROW(scale_mask(sq, 4), InvalidArgument);
}

TEST(ScaleMask, PreservesAspect) {
  PayloadMask m = testing::square_mask(1);
  m = PayloadMask(100, 50, std::vector<std::uint8_t>(5000, 1));
  const PayloadMask s = scale_mask(m, 30);
  EXPECT_EQ(s.width(), 30);
  EXPECT_EQ(s.height(), 15);
}

TEST(LocalStats, MatchesBruteForce) {
  Gen gen(20);
  const GrayBuffer g = gen.gray(23, 17);
  const int r = 2;
  const LocalStats s = local_stats(g, r);
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      double sum = 0, sq = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const double v = g.clamped(x + dx, y + dy);
          sum += v;
          sq += v * v;
        }
      }
      const double n = (2 * r + 1) * (2 * r + 1);
      const double mean = sum / n;
      const double sd = std::sqrt(std::max(0.0, sq / n - mean * mean));
      const std::size_t i = static_cast<std::size_t>(y) * g.width() + x;
      EXPECT_NEAR(s.mean[i], mean, 1e-9);
      EXPECT_NEAR(s.stddev[i], sd, 1e-6);
    }
  }
}

// Square-element morphology by definition.
PayloadMask dilate_oracle(const PayloadMask& m, int r) {
  PayloadMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool any = false;
      for (int dy = -r; dy <= r && !any; ++dy) {
        for (int dx = -r; dx <= r && !any; ++dx) {
          const int xx = x + dx, yy = y + dy;
          any = xx >= 0 && yy >= 0 && xx < m.width() && yy < m.height() &&
                m.test(xx, yy);
        }
      }
      out.set(x, y, any);
    }
  }
  return out;
}

PayloadMask erode_oracle(const PayloadMask& m, int r) {
  PayloadMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool all = true;
      for (int dy = -r; dy <= r && all; ++dy) {
        for (int dx = -r; dx <= r && all; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= m.width() || yy >= m.height()) continue;
          all = m.test(xx, yy);
        }
      }
      out.set(x, y, all);
    }
  }
  return out;
}

TEST(Morphology, MatchesDefinitions) {
  Gen gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const PayloadMask m = gen.mask(gen.range(1, 30), gen.range(1, 30), 0.6);
    const int r = gen.range(1, 3);
    EXPECT_EQ(dilate(m, r), dilate_oracle(m, r));
    EXPECT_EQ(erode(m, r), erode_oracle(m, r));
    EXPECT_EQ(open(m, r), dilate_oracle(erode_oracle(m, r), r));
    EXPECT_EQ(close(m, r), erode_oracle(dilate_oracle(m, r), r));
  }
}

TEST(Components, EightConnectivityAndAreaFilter) {
  PayloadMask m(8, 8);
  m.set(0, 0, true);
  m.set(1, 1, true);  // diagonal neighbour joins the first component
  m.set(5, 5, true);
  m.set(5, 6, true);
  m.set(6, 6, true);
  const Components c = label_components(m);
  ASSERT_EQ(c.count(), 2);
  EXPECT_EQ(c.areas[0], 2u);
  EXPECT_EQ(c.areas[1], 3u);
  EXPECT_EQ(c.boxes[1], (Rect{5, 5, 2, 2}));
  const PayloadMask kept = filter_components(m, 3);
  EXPECT_EQ(kept.count(), 3u);
  EXPECT_FALSE(kept.test(0, 0));
}

TEST(Iou, Arithmetic) {
  PayloadMask a(10, 1), b(10, 1);
  for (int x = 0; x < 6; ++x) a.set(x, 0, true);
  for (int x = 3; x < 10; ++x) b.set(x, 0, true);
  EXPECT_DOUBLE_EQ(iou(a, b), 3.0 / 10.0);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(PayloadMask(3, 3), PayloadMask(3, 3)), 1.0);
  EXPECT_THROW(iou(a, PayloadMask(9, 1)), InvalidArgument);
}

}  // namespace
}  // namespace hintguard
