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
// Corpus sweeps. Every sweep embeds each library payload into each corpus
// image at the lowest-entropy window and records one ExperimentRecord per
// (image, payload, strength, width) cell. Summaries aggregate the records
// in a fixed key order so the CSV text depends only on the inputs.

#ifndef HINTGUARD_EXPERIMENTS_HPP_
#define HINTGUARD_EXPERIMENTS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hintguard/corpus.hpp"
#include "hintguard/detector.hpp"
#include "hintguard/entropy.hpp"
#include "hintguard/mitigation.hpp"
#include "hintguard/perception.hpp"

namespace hintguard {

struct HarnessParams {
  EntropyParams entropy;
  JndParams jnd;
  DetectorParams detector;
  MitigationParams mitigation;
  int placement_margin = 16;  // kept clear between payload and image border
};

// Which measurements a cell performs. Absent measurements leave the
// corresponding record fields empty.
struct CellOptions {
  bool visibility = true;
  bool blind = true;
  bool paired = true;
  bool scrub = false;
};

struct ExperimentRecord {
  std::string image_id;
  std::string background;
  double entropy = 0.0;  // global luma entropy of the clean image, bits
  std::string payload_id;
  int strength = 0;
  int width = 0;  // requested payload width; run_cell uses the bbox width
  std::optional<double> jnd_ratio;
  std::optional<Verdict> verdict;
  std::optional<bool> blind_detected;  // detected and matched to payload_id
  std::optional<double> paired_score;
  std::optional<bool> scrubbed_detected;
  std::optional<double> foreground_mad;
  std::optional<double> coverage;
};

// One cell. `payload` is embedded as given (already scaled).
ExperimentRecord run_cell(const CorpusImage& image, const PayloadMask& payload,
                          int strength, const PayloadLibrary& library,
                          const HarnessParams& params,
                          const CellOptions& options);

std::vector<ExperimentRecord> run_strength_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> strengths, const HarnessParams& params = {},
    const CellOptions& options = {});

std::vector<ExperimentRecord> run_entropy_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    int strength = 2, const HarnessParams& params = {});

std::vector<ExperimentRecord> run_size_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> widths, int strength = 2,
    const HarnessParams& params = {});

std::vector<ExperimentRecord> run_mitigation_eval(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> strengths, const HarnessParams& params = {});

// Summary rows. Rates are over the cells that carry the measurement; a key
// with no such cell reports no rate. Rows with payload_id "all" pool every
// payload.
struct StrengthRow {
  std::string payload_id;
  int strength = 0;
  std::size_t cells = 0;
  std::optional<double> invisible_fraction;
  std::optional<double> visible_fraction;
  std::optional<double> mean_jnd_ratio;
  std::optional<double> blind_rate;
};
std::vector<StrengthRow> summarize_strength(
    std::span<const ExperimentRecord> records);

// Buckets are [0,1), [1,2), ... [5,6) and [6,8].
inline constexpr int kEntropyBuckets = 7;
int entropy_bucket(double bits);

struct EntropyRow {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t cells = 0;
  std::optional<double> blind_rate;
};
std::vector<EntropyRow> summarize_entropy(
    std::span<const ExperimentRecord> records);

struct SizeRow {
  std::string payload_id;
  int width = 0;
  std::size_t cells = 0;
  std::optional<double> blind_rate;
};
std::vector<SizeRow> summarize_size(std::span<const ExperimentRecord> records);

struct MitigationRow {
  std::string payload_id;
  int strength = 0;
  std::size_t cells = 0;
  std::optional<double> mitigation_rate;
  std::optional<double> mean_foreground_mad;
  std::optional<double> mean_coverage;
};
std::vector<MitigationRow> summarize_mitigation(
    std::span<const ExperimentRecord> records);

// CSV text, comma separated, header first, '\n' line ends, six decimals.
std::string records_csv(std::span<const ExperimentRecord> records);
std::string to_csv(std::span<const StrengthRow> rows);
std::string to_csv(std::span<const EntropyRow> rows);
std::string to_csv(std::span<const SizeRow> rows);
std::string to_csv(std::span<const MitigationRow> rows);

}  // namespace hintguard

#endif  // HINTGUARD_EXPERIMENTS_HPP_
