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
// Shared helpers for the test suites: seeded generators and scratch
// directories.

#ifndef HINTGUARD_TESTS_SUPPORT_HPP_
#define HINTGUARD_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hintguard/image.hpp"

namespace hintguard::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  GrayBuffer gray(int w, int h, int lo = 0, int hi = 255) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(w) * h);
    for (auto& s : v) s = static_cast<std::uint8_t>(range(lo, hi));
    return GrayBuffer(w, h, std::move(v));
  }

  ImageBuffer image(int w, int h, int lo = 0, int hi = 255) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(w) * h * 3);
    for (auto& s : v) s = static_cast<std::uint8_t>(range(lo, hi));
    return ImageBuffer::from_rgb(w, h, std::move(v));
  }

  PayloadMask mask(int w, int h, double density, std::string id = {}) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h);
    for (auto& b : bits) b = chance(density) ? 1 : 0;
    return PayloadMask(w, h, std::move(bits), std::move(id));
  }

  // A mask guaranteed to be non-empty.
  PayloadMask nonempty_mask(int w, int h, double density, std::string id = {}) {
    PayloadMask m = mask(w, h, density, std::move(id));
    if (m.empty()) m.set(range(0, w - 1), range(0, h - 1), true);
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

// A fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("hintguard_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline PayloadMask square_mask(int side, std::string id = "square") {
  return PayloadMask(side, side,
                     std::vector<std::uint8_t>(static_cast<std::size_t>(side) * side, 1),
                     std::move(id));
}

}  // namespace hintguard::testing

#endif  // HINTGUARD_TESTS_SUPPORT_HPP_
