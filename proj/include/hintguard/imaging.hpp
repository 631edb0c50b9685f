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
// Lossless PNG I/O and the deterministic filters the analysis modules share.
// All windowed operations clamp to the edge.

#ifndef HINTGUARD_IMAGING_HPP_
#define HINTGUARD_IMAGING_HPP_

#include <filesystem>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard {

// Accepts 8-bit gray, gray+alpha, RGB and RGBA. Alpha is dropped and gray is
// replicated. Throws IoError / FormatError.
ImageBuffer load_png(const std::filesystem::path& path);
void save_png(const ImageBuffer& image, const std::filesystem::path& path);

GrayBuffer load_gray_png(const std::filesystem::path& path);
void save_gray_png(const GrayBuffer& gray, const std::filesystem::path& path);

// Any pixel with luma > 127 is a payload pixel.
PayloadMask load_mask(const std::filesystem::path& path);
// Payload pixels are written as 255, others as 0.
void save_mask(const PayloadMask& mask, const std::filesystem::path& path);

// round(0.299 R + 0.587 G + 0.114 B), computed in integer arithmetic.
std::uint8_t luma_of(Rgb px);
GrayBuffer to_luma(const ImageBuffer& image);

GrayBuffer median_filter(const GrayBuffer& gray, int radius);

// Nearest-neighbour resample of the mask's bounding-box content to exactly
// width x height. Extreme rows and columns map onto each other.
PayloadMask resample_mask(const PayloadMask& mask, int width, int height);

// Aspect-preserving nearest-neighbour rescale so the result is
// `target_width` pixels wide. Throws InvalidArgument below 8 px.
PayloadMask scale_mask(const PayloadMask& mask, int target_width);

// Mean and population standard deviation over the (2r+1)^2 clamped window.
struct LocalStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};
LocalStats local_stats(const GrayBuffer& gray, int radius);

// Binary morphology with a (2r+1)^2 square element. Pixels outside the
// raster count as "off" for dilation and as "on" for erosion, so neither
// operation invents or loses structure at the border.
PayloadMask erode(const PayloadMask& mask, int radius);
PayloadMask dilate(const PayloadMask& mask, int radius);
PayloadMask open(const PayloadMask& mask, int radius);
PayloadMask close(const PayloadMask& mask, int radius);

// 8-connected component labelling. Labels are 1-based in raster-scan order
// of first appearance; 0 is unlabelled.
struct Components {
  std::vector<int> labels;
  std::vector<std::size_t> areas;  // areas[k] is the size of label k + 1
  std::vector<Rect> boxes;         // boxes[k] bounds label k + 1
  int count() const { return static_cast<int>(areas.size()); }
};
Components label_components(const PayloadMask& mask);

// Keeps only components with area >= min_area.
PayloadMask filter_components(const PayloadMask& mask, std::size_t min_area);

double iou(const PayloadMask& a, const PayloadMask& b);

}  // namespace hintguard

#endif  // HINTGUARD_IMAGING_HPP_
