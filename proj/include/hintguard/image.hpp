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
// Raster value types shared by every module: an 8-bit RGB image, an 8-bit
// luma plane and a binary payload mask with its tight bounding box.

#ifndef HINTGUARD_IMAGE_HPP_
#define HINTGUARD_IMAGE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hintguard {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Size {
  int width = 0;
  int height = 0;
  friend bool operator==(const Size&, const Size&) = default;
};

// Half-open pixel rectangle [x, x + width) x [y, y + height). The empty
// rectangle is all zeros.
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool empty() const { return width <= 0 || height <= 0; }
  int right() const { return x + width; }
  int bottom() const { return y + height; }
  bool contains(const Rect& other) const {
    return other.x >= x && other.y >= y && other.right() <= right() &&
           other.bottom() <= bottom();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

// Row-major interleaved RGB, 8 bits per sample. Always at least 1x1.
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  ImageBuffer(int width, int height, Rgb fill = {0, 0, 0});
  // Takes ownership of interleaved samples; the length must be
  // width * height * 3.
  static ImageBuffer from_rgb(int width, int height,
                              std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  Rgb at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb v) {
    const std::size_t i = index(x, y);
    data_[i] = v[0];
    data_[i + 1] = v[1];
    data_[i + 2] = v[2];
  }
  std::uint8_t& sample(int x, int y, int c) { return data_[index(x, y) + c]; }
  std::uint8_t sample(int x, int y, int c) const {
    return data_[index(x, y) + c];
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Single-channel 8-bit plane.
class GrayBuffer {
 public:
  GrayBuffer(int width, int height, std::uint8_t fill = 0);
  GrayBuffer(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  std::uint8_t at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  // Clamp-to-edge access.
  std::uint8_t clamped(int x, int y) const;

  friend bool operator==(const GrayBuffer&, const GrayBuffer&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Binary raster of payload pixels. The bounding box is kept tight on every
// mutation through the public interface.
class PayloadMask {
 public:
  PayloadMask(int width, int height, std::string payload_id = {});
  PayloadMask(int width, int height, std::vector<std::uint8_t> bits,
              std::string payload_id = {});

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  const Rect& bbox() const { return bbox_; }
  const std::string& payload_id() const { return payload_id_; }
  void set_payload_id(std::string id) { payload_id_ = std::move(id); }

  bool test(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool on);

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;
  bool empty() const { return bbox_.empty(); }

  // Sub-mask covering exactly the bounding box.
  PayloadMask cropped() const;
  // Copies this mask onto a blank canvas with its (0,0) at `origin`. The
  // mask must fit.
  PayloadMask placed(Size canvas, Point origin) const;

  friend bool operator==(const PayloadMask& a, const PayloadMask& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.bits_ == b.bits_;
  }

 private:
  void recompute_bbox();

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
  Rect bbox_;
  std::string payload_id_;
};

}  // namespace hintguard

#endif  // HINTGUARD_IMAGE_HPP_
