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
// Machine-level payload recovery. Paired detection diffs against the clean
// reference; blind detection subtracts a median background estimate and
// keeps the low-amplitude residual band. Both match what they recover
// against a library of known payload shapes.

#ifndef HINTGUARD_DETECTOR_HPP_
#define HINTGUARD_DETECTOR_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard {

inline constexpr int kCanonicalPayloadWidth = 256;

class PayloadLibrary {
 public:
  PayloadLibrary() = default;

  // The six evaluation payloads as line-art masks, kCanonicalPayloadWidth
  // pixels wide: apple, benz, chanel, mcdonalds, flower, fuji.
  static PayloadLibrary builtin();
  // Every *.png in `dir`, in lexicographic order; the file stem is the id.
  static PayloadLibrary load_dir(const std::filesystem::path& dir);

  // Stores the mask cropped to its bounding box. Throws on an empty mask,
  // empty id or duplicate id.
  void add(const PayloadMask& mask);

  const std::vector<PayloadMask>& entries() const { return entries_; }
  const PayloadMask& get(std::string_view id) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<PayloadMask> entries_;
};

struct DetectorParams {
  int median_radius = 4;
  int band_min = 1;   // smallest |luma - background| kept by blind detection
  int band_max = 12;  // largest
  // Residual within this distance of a neighbour step above band_max is
  // discarded.
  int edge_guard = 4;
  int open_radius = 1;
  std::size_t min_area = 64;
  double match_threshold = 0.5;
};

enum class DetectionMethod { kPaired, kBlind };

std::string_view to_string(DetectionMethod m);

struct MatchResult {
  std::optional<std::string> payload_id;
  double score = 0.0;  // best IoU, reported even when below threshold
};

struct DetectionReport {
  bool detected = false;
  PayloadMask recovered{1, 1};
  std::optional<std::string> best_match;
  std::optional<double> match_score;
  DetectionMethod method = DetectionMethod::kPaired;

  // Detected and identified as `payload_id`.
  bool identified(std::string_view payload_id) const {
    return detected && best_match && *best_match == payload_id;
  }
};

// Each entry is resampled onto the recovered bounding box and compared by
// IoU; the first entry with the highest IoU wins. Throws on an empty mask.
MatchResult match_payload(const PayloadMask& recovered,
                          const PayloadLibrary& library,
                          const DetectorParams& params = {});

DetectionReport detect_paired(const ImageBuffer& clean,
                              const ImageBuffer& suspect,
                              const PayloadLibrary& library,
                              const DetectorParams& params = {});

// Blind residual before component filtering and matching; exposed for
// diagnostics and tests.
PayloadMask blind_residual(const GrayBuffer& luma,
                           const DetectorParams& params = {});

DetectionReport detect_blind(const ImageBuffer& suspect,
                             const PayloadLibrary& library,
                             const DetectorParams& params = {});

}  // namespace hintguard

#endif  // HINTGUARD_DETECTOR_HPP_
