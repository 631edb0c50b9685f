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

#include "hintguard/image.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "hintguard/error.hpp"

namespace hintguard {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("raster dimensions must be at least 1x1, got " +
                          std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.resize(area(width, height) * kChannels);
  for (std::size_t i = 0; i < data_.size(); i += kChannels) {
    data_[i] = fill[0];
    data_[i + 1] = fill[1];
    data_[i + 2] = fill[2];
  }
}

ImageBuffer ImageBuffer::from_rgb(int width, int height,
                                  std::vector<std::uint8_t> data) {
  check_dims(width, height);
  if (data.size() != area(width, height) * kChannels) {
    throw InvalidArgument("RGB data length does not match dimensions");
  }
  ImageBuffer out(1, 1);
  out.width_ = width;
  out.height_ = height;
  out.data_ = std::move(data);
  return out;
}

GrayBuffer::GrayBuffer(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(area(width, height), fill);
}

GrayBuffer::GrayBuffer(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != area(width, height)) {
    throw InvalidArgument("gray data length does not match dimensions");
  }
}

std::uint8_t GrayBuffer::clamped(int x, int y) const {
  return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

PayloadMask::PayloadMask(int width, int height, std::string payload_id)
    : width_(width),
      height_(height),
      bits_(area(std::max(width, 0), std::max(height, 0)), 0),
      payload_id_(std::move(payload_id)) {
  check_dims(width, height);
}

PayloadMask::PayloadMask(int width, int height, std::vector<std::uint8_t> bits,
                         std::string payload_id)
    : width_(width),
      height_(height),
      bits_(std::move(bits)),
      payload_id_(std::move(payload_id)) {
  check_dims(width, height);
  if (bits_.size() != area(width, height)) {
    throw InvalidArgument("mask data length does not match dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
  recompute_bbox();
}

void PayloadMask::set(int x, int y, bool on) {
  auto& bit = bits_[static_cast<std::size_t>(y) * width_ + x];
  const bool was = bit != 0;
  bit = on ? 1 : 0;
  if (on && !was) {
    if (bbox_.empty()) {
      bbox_ = {x, y, 1, 1};
    } else {
      const int x0 = std::min(bbox_.x, x);
      const int y0 = std::min(bbox_.y, y);
      const int x1 = std::max(bbox_.right(), x + 1);
      const int y1 = std::max(bbox_.bottom(), y + 1);
      bbox_ = {x0, y0, x1 - x0, y1 - y0};
    }
  } else if (!on && was) {
    if (x == bbox_.x || y == bbox_.y || x == bbox_.right() - 1 ||
        y == bbox_.bottom() - 1) {
      recompute_bbox();
    }
  }
}

std::size_t PayloadMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

void PayloadMask::recompute_bbox() {
  int x0 = width_, y0 = height_, x1 = -1, y1 = -1;
  for (int y = 0; y < height_; ++y) {
    const std::uint8_t* row = bits_.data() + static_cast<std::size_t>(y) * width_;
    for (int x = 0; x < width_; ++x) {
      if (row[x]) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  bbox_ = x1 < 0 ? Rect{} : Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

PayloadMask PayloadMask::cropped() const {
  if (bbox_.empty()) {
    throw InvalidArgument("cannot crop an empty mask");
  }
  std::vector<std::uint8_t> out(area(bbox_.width, bbox_.height));
  for (int y = 0; y < bbox_.height; ++y) {
    const auto* src =
        bits_.data() + static_cast<std::size_t>(bbox_.y + y) * width_ + bbox_.x;
    std::copy(src, src + bbox_.width,
              out.begin() + static_cast<std::ptrdiff_t>(y) * bbox_.width);
  }
  return PayloadMask(bbox_.width, bbox_.height, std::move(out), payload_id_);
}

PayloadMask PayloadMask::placed(Size canvas, Point origin) const {
  const Rect target{origin.x, origin.y, width_, height_};
  if (!Rect{0, 0, canvas.width, canvas.height}.contains(target)) {
    throw InvalidArgument("mask does not fit on canvas at the given origin");
  }
  std::vector<std::uint8_t> out(area(canvas.width, canvas.height), 0);
  for (int y = 0; y < height_; ++y) {
    const auto* src = bits_.data() + static_cast<std::size_t>(y) * width_;
    std::copy(src, src + width_,
              out.begin() + static_cast<std::ptrdiff_t>(origin.y + y) *
                                canvas.width +
                  origin.x);
  }
  return PayloadMask(canvas.width, canvas.height, std::move(out), payload_id_);
}

}  // namespace hintguard
