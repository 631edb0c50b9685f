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
// Seeded synthetic corpora: a background (flat, axis-aligned gradient or
// per-channel uniform noise) with a few disks and rectangles whose coverage
// is kept as a ground-truth foreground alpha.

#ifndef HINTGUARD_CORPUS_HPP_
#define HINTGUARD_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard {

enum class BackgroundKind { kFlat, kGradient, kNoise, kMixed };

std::string_view to_string(BackgroundKind k);
// Throws InvalidArgument on an unknown name.
BackgroundKind parse_background(std::string_view name);

struct CorpusSpec {
  int count = 1;
  int size = 768;
  BackgroundKind background = BackgroundKind::kFlat;
  int min_shapes = 1;
  int max_shapes = 2;
  int min_radius = 24;  // half the extent of a disk or rectangle
  int max_radius = 64;
  std::uint64_t seed = 0;
};

// Throws InvalidArgument when the corpus cannot be synthesized.
void validate(const CorpusSpec& spec);

struct CorpusImage {
  std::string id;
  BackgroundKind background = BackgroundKind::kFlat;  // never kMixed
  ImageBuffer image{1, 1};
  PayloadMask alpha{1, 1};  // true on foreground shapes
};

// Image `index` depends only on (spec, index); kMixed cycles flat, gradient,
// noise by index.
CorpusImage synth_image(const CorpusSpec& spec, int index);
std::vector<CorpusImage> synth_corpus(const CorpusSpec& spec);

// Writes <id>.png, <id>_alpha.png and manifest.json into `dir`, creating it
// if needed. Throws IoError when the directory is not writable.
void write_corpus(const std::vector<CorpusImage>& corpus, const CorpusSpec& spec,
                  const std::filesystem::path& dir);

struct LoadedCorpus {
  CorpusSpec spec;
  std::vector<CorpusImage> images;
};
LoadedCorpus load_corpus(const std::filesystem::path& dir);

}  // namespace hintguard

#endif  // HINTGUARD_CORPUS_HPP_
