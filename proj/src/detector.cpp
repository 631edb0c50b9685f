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

#include "hintguard/detector.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hintguard/embedder.hpp"
#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {

PayloadLibrary PayloadLibrary::load_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("payload library directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  PayloadLibrary lib;
  for (const auto& f : files) lib.add(load_mask(f));
  if (lib.size() == 0) {
    throw FormatError("no payload masks in " + dir.string());
  }
  return lib;
}

void PayloadLibrary::add(const PayloadMask& mask) {
  if (mask.payload_id().empty()) {
    throw InvalidArgument("payload id must not be empty");
  }
  if (mask.empty()) {
    throw InvalidArgument("payload '" + mask.payload_id() + "' has no pixels");
  }
  for (const auto& e : entries_) {
    if (e.payload_id() == mask.payload_id()) {
      throw InvalidArgument("duplicate payload id '" + mask.payload_id() + "'");
    }
  }
  entries_.push_back(mask.cropped());
}

const PayloadMask& PayloadLibrary::get(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.payload_id() == id) return e;
  }
  throw InvalidArgument("unknown payload '" + std::string(id) + "'");
}

std::string_view to_string(DetectionMethod m) {
  return m == DetectionMethod::kPaired ? "paired" : "blind";
}

MatchResult match_payload(const PayloadMask& recovered,
                          const PayloadLibrary& library,
                          const DetectorParams& params) {
  if (recovered.empty()) {
    throw InvalidArgument("cannot match an empty recovered mask");
  }
  const PayloadMask target = recovered.cropped();
  MatchResult best;
  std::optional<std::string> best_id;
  for (const auto& entry : library.entries()) {
    const PayloadMask aligned =
        resample_mask(entry, target.width(), target.height());
    const double score = iou(aligned, target);
    if (!best_id || score > best.score) {
      best.score = score;
      best_id = entry.payload_id();
    }
  }
  if (best_id && best.score >= params.match_threshold) {
    best.payload_id = best_id;
  }
  return best;
}

namespace {

DetectionReport finish(PayloadMask recovered, DetectionMethod method,
                       const PayloadLibrary& library,
                       const DetectorParams& params, bool detected) {
  DetectionReport r;
  r.method = method;
  r.detected = detected;
  r.recovered = std::move(recovered);
  if (r.detected && library.size() > 0) {
    const MatchResult m = match_payload(r.recovered, library, params);
    if (m.payload_id) {
      r.best_match = m.payload_id;
      r.match_score = m.score;
    }
  }
  return r;
}

}  // namespace

DetectionReport detect_paired(const ImageBuffer& clean,
                              const ImageBuffer& suspect,
                              const PayloadLibrary& library,
                              const DetectorParams& params) {
  PayloadMask recovered = residual_of(clean, suspect);
  const bool detected = recovered.count() >= params.min_area;
  return finish(std::move(recovered), DetectionMethod::kPaired, library,
                params, detected);
}

PayloadMask blind_residual(const GrayBuffer& luma,
                           const DetectorParams& params) {
  const GrayBuffer background = median_filter(luma, params.median_radius);
  std::vector<std::uint8_t> bits(luma.pixel_count());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int d = std::abs(int{luma.data()[i]} - int{background.data()[i]});
    bits[i] = (d >= params.band_min && d <= params.band_max) ? 1 : 0;
  }
  if (params.edge_guard > 0) {
    // Next to a genuine edge the median is pulled by the object, which leaves
    // a faint false residual along the contour. Edges are steps between
    // neighbours larger than anything the band admits.
    const int w = luma.width();
    const int h = luma.height();
    std::vector<std::uint8_t> edge(luma.pixel_count(), 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const int v = luma.data()[i];
        if (x + 1 < w && std::abs(v - luma.data()[i + 1]) > params.band_max) {
          edge[i] = edge[i + 1] = 1;
        }
        if (y + 1 < h && std::abs(v - luma.data()[i + w]) > params.band_max) {
          edge[i] = edge[i + static_cast<std::size_t>(w)] = 1;
        }
      }
    }
    const PayloadMask near =
        dilate(PayloadMask(w, h, std::move(edge)), params.edge_guard);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (near.bits()[i]) bits[i] = 0;
    }
  }
  return PayloadMask(luma.width(), luma.height(), std::move(bits));
}

DetectionReport detect_blind(const ImageBuffer& suspect,
                             const PayloadLibrary& library,
                             const DetectorParams& params) {
  const PayloadMask raw = blind_residual(to_luma(suspect), params);
  PayloadMask kept =
      filter_components(open(raw, params.open_radius), params.min_area);
  const bool detected = !kept.empty();
  return finish(std::move(kept), DetectionMethod::kBlind, library, params,
                detected);
}

}  // namespace hintguard
