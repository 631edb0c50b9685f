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


#include "hintguard/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>
#include <utility>

#include "hintguard/embedder.hpp"
#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {
namespace {

// Per-image state shared by every cell of that image.
struct Prepared {
  const CorpusImage& image;
  GrayBuffer luma;
  double entropy;
  std::optional<JndMap> jnd;
  // Placement depends only on the payload footprint, not on the strength.
  std::map<std::tuple<std::string, int, int>, PlacementDecision> placements;

  explicit Prepared(const CorpusImage& img)
      : image(img), luma(to_luma(img.image)), entropy(shannon_entropy(luma)) {}
};

ExperimentRecord cell(Prepared& prep, const PayloadMask& payload, int width,
                      int strength, const PayloadLibrary& library,
                      const HarnessParams& params, const CellOptions& options) {
  ExperimentRecord r;
  r.image_id = prep.image.id;
  r.background = std::string(to_string(prep.image.background));
  r.entropy = prep.entropy;
  r.payload_id = payload.payload_id();
  r.strength = strength;
  r.width = width;

  InjectionSpec spec;
  spec.strength = strength;
  spec.mask = payload;
  const auto key =
      std::make_tuple(payload.payload_id(), payload.width(), payload.height());
  auto it = prep.placements.find(key);
  if (it == prep.placements.end()) {
    it = prep.placements
             .emplace(key, plan_placement(prep.luma, payload, params.entropy,
                                          params.placement_margin))
             .first;
  }
  spec.placement = it->second;
  const auto [injected, record] = embed_payload(prep.image.image, spec);

  if (options.visibility) {
    if (!prep.jnd) prep.jnd = jnd_map(prep.luma, params.jnd);
    const VisibilityReport v =
        jnd_ratio(*prep.jnd, prep.luma, to_luma(injected),
                  placed_mask(record, injected.size()), params.jnd);
    r.jnd_ratio = v.jnd_ratio;
    r.verdict = v.verdict;
  }
  if (options.blind) {
    r.blind_detected = detect_blind(injected, library, params.detector)
                           .identified(r.payload_id);
  }
  if (options.paired) {
    const DetectionReport d =
        detect_paired(prep.image.image, injected, library, params.detector);
    r.paired_score = d.detected && d.best_match == r.payload_id
                         ? d.match_score.value_or(0.0)
                         : 0.0;
  }
  if (options.scrub) {
    const ScrubReport s =
        scrub(injected, library, params.mitigation, params.detector);
    r.scrubbed_detected = !s.payload_destroyed;
    r.foreground_mad = s.foreground_mad;
    r.coverage = s.background.coverage;
  }
  return r;
}

void require_corpus(std::span<const CorpusImage> corpus,
                    const PayloadLibrary& library) {
  if (corpus.empty()) throw InvalidArgument("corpus is empty");
  if (library.size() == 0) throw InvalidArgument("payload library is empty");
}

void require_strengths(std::span<const int> strengths) {
  if (strengths.empty()) throw InvalidArgument("strength list is empty");
  for (int s : strengths) {
    if (s < 1) throw InvalidArgument("strengths must be >= 1");
  }
}

std::vector<ExperimentRecord> sweep(std::span<const CorpusImage> corpus,
                                    const PayloadLibrary& library,
                                    std::span<const int> strengths,
                                    std::span<const int> widths,
                                    const HarnessParams& params,
                                    const CellOptions& options) {
  std::vector<ExperimentRecord> out;
  for (const CorpusImage& img : corpus) {
    Prepared prep(img);
    for (const PayloadMask& entry : library.entries()) {
      for (int width : widths) {
        const PayloadMask payload =
            width == entry.width() ? entry : scale_mask(entry, width);
        for (int s : strengths) {
          out.push_back(
              cell(prep, payload, width, s, library, params, options));
        }
      }
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string opt(const std::optional<double>& v) {
  return v ? fixed(*v) : std::string();
}

std::string opt(const std::optional<bool>& v) {
  return v ? (*v ? "1" : "0") : std::string();
}

struct Ratio {
  std::size_t hits = 0;
  std::size_t n = 0;
  void add(bool hit) {
    ++n;
    if (hit) ++hits;
  }
  std::optional<double> value() const {
    if (n == 0) return std::nullopt;
    return static_cast<double>(hits) / static_cast<double>(n);
  }
};

struct Mean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> value() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

}  // namespace

ExperimentRecord run_cell(const CorpusImage& image, const PayloadMask& payload,
                          int strength, const PayloadLibrary& library,
                          const HarnessParams& params,
                          const CellOptions& options) {
  Prepared prep(image);
  return cell(prep, payload, payload.bbox().width, strength, library, params,
              options);
}

std::vector<ExperimentRecord> run_strength_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> strengths, const HarnessParams& params,
    const CellOptions& options) {
  require_corpus(corpus, library);
  require_strengths(strengths);
  const int canonical[] = {kCanonicalPayloadWidth};
  return sweep(corpus, library, strengths, canonical, params, options);
}

std::vector<ExperimentRecord> run_entropy_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    int strength, const HarnessParams& params) {
  require_corpus(corpus, library);
  const int strengths[] = {strength};
  require_strengths(strengths);
  const int canonical[] = {kCanonicalPayloadWidth};
  CellOptions options;
  options.visibility = false;
  options.paired = false;
  return sweep(corpus, library, strengths, canonical, params, options);
}

std::vector<ExperimentRecord> run_size_sweep(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> widths, int strength, const HarnessParams& params) {
  require_corpus(corpus, library);
  const int strengths[] = {strength};
  require_strengths(strengths);
  if (widths.empty()) throw InvalidArgument("width list is empty");
  for (int w : widths) {
    if (w < 8) throw InvalidArgument("payload widths must be >= 8");
  }
  CellOptions options;
  options.visibility = false;
  options.paired = false;
  return sweep(corpus, library, strengths, widths, params, options);
}

std::vector<ExperimentRecord> run_mitigation_eval(
    std::span<const CorpusImage> corpus, const PayloadLibrary& library,
    std::span<const int> strengths, const HarnessParams& params) {
  require_corpus(corpus, library);
  require_strengths(strengths);
  const int canonical[] = {kCanonicalPayloadWidth};
  CellOptions options;
  options.visibility = false;
  options.blind = false;
  options.paired = false;
  options.scrub = true;
  return sweep(corpus, library, strengths, canonical, params, options);
}

std::vector<StrengthRow> summarize_strength(
    std::span<const ExperimentRecord> records) {
  struct Acc {
    Ratio invisible, visible, blind;
    Mean jnd;
    std::size_t cells = 0;
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  for (const auto& r : records) {
    for (const std::string& key : {r.payload_id, std::string("all")}) {
      Acc& a = acc[{key, r.strength}];
      ++a.cells;
      if (r.verdict) {
        a.invisible.add(*r.verdict == Verdict::kInvisible);
        a.visible.add(*r.verdict == Verdict::kVisible);
      }
      if (r.jnd_ratio) a.jnd.add(*r.jnd_ratio);
      if (r.blind_detected) a.blind.add(*r.blind_detected);
    }
  }
  std::vector<StrengthRow> rows;
  for (const auto& [key, a] : acc) {
    rows.push_back({key.first, key.second, a.cells, a.invisible.value(),
                    a.visible.value(), a.jnd.value(), a.blind.value()});
  }
  return rows;
}

int entropy_bucket(double bits) {
  if (!(bits >= 0.0)) return 0;
  const int b = static_cast<int>(std::floor(bits));
  return b >= kEntropyBuckets - 1 ? kEntropyBuckets - 1 : b;
}

std::vector<EntropyRow> summarize_entropy(
    std::span<const ExperimentRecord> records) {
  std::vector<Ratio> acc(kEntropyBuckets);
  std::vector<std::size_t> cells(kEntropyBuckets, 0);
  for (const auto& r : records) {
    const auto b = static_cast<std::size_t>(entropy_bucket(r.entropy));
    ++cells[b];
    if (r.blind_detected) acc[b].add(*r.blind_detected);
  }
  std::vector<EntropyRow> rows;
  for (int b = 0; b < kEntropyBuckets; ++b) {
    const auto i = static_cast<std::size_t>(b);
    rows.push_back({static_cast<double>(b),
                    b == kEntropyBuckets - 1 ? 8.0 : b + 1.0, cells[i],
                    acc[i].value()});
  }
  return rows;
}

std::vector<SizeRow> summarize_size(std::span<const ExperimentRecord> records) {
  std::map<std::pair<std::string, int>, std::pair<std::size_t, Ratio>> acc;
  for (const auto& r : records) {
    for (const std::string& key : {r.payload_id, std::string("all")}) {
      auto& a = acc[{key, r.width}];
      ++a.first;
      if (r.blind_detected) a.second.add(*r.blind_detected);
    }
  }
  std::vector<SizeRow> rows;
  for (const auto& [key, a] : acc) {
    rows.push_back({key.first, key.second, a.first, a.second.value()});
  }
  return rows;
}

std::vector<MitigationRow> summarize_mitigation(
    std::span<const ExperimentRecord> records) {
  struct Acc {
    Ratio destroyed;
    Mean mad, coverage;
    std::size_t cells = 0;
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  for (const auto& r : records) {
    for (const std::string& key : {r.payload_id, std::string("all")}) {
      Acc& a = acc[{key, r.strength}];
      ++a.cells;
      if (r.scrubbed_detected) a.destroyed.add(!*r.scrubbed_detected);
      if (r.foreground_mad) a.mad.add(*r.foreground_mad);
      if (r.coverage) a.coverage.add(*r.coverage);
    }
  }
  std::vector<MitigationRow> rows;
  for (const auto& [key, a] : acc) {
    rows.push_back({key.first, key.second, a.cells, a.destroyed.value(),
                    a.mad.value(), a.coverage.value()});
  }
  return rows;
}

std::string records_csv(std::span<const ExperimentRecord> records) {
  std::string out =
      "image_id,background,entropy,payload_id,strength,width,jnd_ratio,"
      "verdict,blind_detected,paired_score,scrubbed_detected,foreground_mad,"
      "coverage\n";
  for (const auto& r : records) {
    out += r.image_id + ',' + r.background + ',' + fixed(r.entropy) + ',' +
           r.payload_id + ',' + std::to_string(r.strength) + ',' +
           std::to_string(r.width) + ',' + opt(r.jnd_ratio) + ',' +
           (r.verdict ? std::string(to_string(*r.verdict)) : "") + ',' +
           opt(r.blind_detected) + ',' + opt(r.paired_score) + ',' +
           opt(r.scrubbed_detected) + ',' + opt(r.foreground_mad) + ',' +
           opt(r.coverage) + '\n';
  }
  return out;
}

std::string to_csv(std::span<const StrengthRow> rows) {
  std::string out =
      "payload_id,strength,cells,invisible_fraction,visible_fraction,"
      "mean_jnd_ratio,blind_rate\n";
  for (const auto& r : rows) {
    out += r.payload_id + ',' + std::to_string(r.strength) + ',' +
           std::to_string(r.cells) + ',' + opt(r.invisible_fraction) + ',' +
           opt(r.visible_fraction) + ',' + opt(r.mean_jnd_ratio) + ',' +
           opt(r.blind_rate) + '\n';
  }
  return out;
}

std::string to_csv(std::span<const EntropyRow> rows) {
  std::string out = "bucket_lo,bucket_hi,cells,blind_rate\n";
  for (const auto& r : rows) {
    out += fixed(r.lo) + ',' + fixed(r.hi) + ',' + std::to_string(r.cells) +
           ',' + opt(r.blind_rate) + '\n';
  }
  return out;
}

std::string to_csv(std::span<const SizeRow> rows) {
  std::string out = "payload_id,width,cells,blind_rate\n";
  for (const auto& r : rows) {
    out += r.payload_id + ',' + std::to_string(r.width) + ',' +
           std::to_string(r.cells) + ',' + opt(r.blind_rate) + '\n';
  }
  return out;
}

std::string to_csv(std::span<const MitigationRow> rows) {
  std::string out =
      "payload_id,strength,cells,mitigation_rate,mean_foreground_mad,"
      "mean_coverage\n";
  for (const auto& r : rows) {
    out += r.payload_id + ',' + std::to_string(r.strength) + ',' +
           std::to_string(r.cells) + ',' + opt(r.mitigation_rate) + ',' +
           opt(r.mean_foreground_mad) + ',' + opt(r.mean_coverage) + '\n';
  }
  return out;
}

}  // namespace hintguard
