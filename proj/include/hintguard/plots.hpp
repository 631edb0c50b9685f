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
// SVG charts for sweep summaries. Rendering reads only the CSV text, so the
// same summary always yields the same bytes.

#ifndef HINTGUARD_PLOTS_HPP_
#define HINTGUARD_PLOTS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hintguard {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Plain comma-separated text without quoting. Throws FormatError on a
// missing header, ragged rows or an empty body.
CsvTable parse_csv(std::string_view text);

struct RenderedPlot {
  std::string filename;
  std::string svg;
};

// Recognises the four summary layouts: strength summaries give one chart
// per payload, the others one chart each. Throws FormatError otherwise.
std::vector<RenderedPlot> render_plots(std::string_view csv_text);

// Renders `csv` and writes the charts into `out_dir`; returns their paths.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv,
                                              const std::filesystem::path& out_dir);

}  // namespace hintguard

#endif  // HINTGUARD_PLOTS_HPP_
