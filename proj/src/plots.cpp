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


#include "hintguard/plots.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hintguard/error.hpp"

namespace hintguard {
namespace {

constexpr int kWidth = 560;
constexpr int kHeight = 340;
constexpr int kLeft = 60;
constexpr int kRight = 150;  // room for the legend
constexpr int kTop = 40;
constexpr int kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::optional<double> parse_rate(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw FormatError("bad number '" + cell + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("bad number '" + cell + "'");
  }
}

struct Series {
  std::string name;
  std::vector<std::optional<double>> values;  // one per x label, in [0,1]
};

struct Chart {
  std::string title;
  std::string x_title;
  std::string y_title;
  std::vector<std::string> x_labels;
  std::vector<Series> series;
  bool bars = false;
};

std::string render(const Chart& c) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const std::size_t n = c.x_labels.size();
  auto y_at = [&](double v) { return kTop + plot_h * (1.0 - v); };
  auto x_at = [&](std::size_t i) {
    return kLeft + plot_w * (static_cast<double>(i) + 0.5) /
                       static_cast<double>(n);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
       "font-size=\"14\">"
    << escape(c.title) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    s << "<line x1=\"" << kLeft << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y1=\"" << num(y_at(v)) << "\" y2=\"" << num(y_at(v))
      << "\" stroke=\"#dddddd\"/>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y_at(v) + 4)
      << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  s << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft << "\" y1=\"" << kTop
    << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kLeft << "\" x2=\"" << num(kLeft + plot_w)
    << "\" y1=\"" << num(kTop + plot_h) << "\" y2=\"" << num(kTop + plot_h)
    << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    s << "<text x=\"" << num(x_at(i)) << "\" y=\"" << num(kTop + plot_h + 16)
      << "\" text-anchor=\"middle\">" << escape(c.x_labels[i]) << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\">" << escape(c.x_title) << "</text>\n";
  s << "<text transform=\"translate(16," << num(kTop + plot_h / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(c.y_title)
    << "</text>\n";

  const std::size_t m = c.series.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Series& ser = c.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (c.bars) {
      const double slot = plot_w / static_cast<double>(n);
      const double bar = slot * 0.8 / static_cast<double>(m);
      for (std::size_t i = 0; i < n && i < ser.values.size(); ++i) {
        if (!ser.values[i]) continue;
        const double x = x_at(i) - slot * 0.4 + bar * static_cast<double>(k);
        const double y = y_at(*ser.values[i]);
        s << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(bar) << "\" height=\"" << num(kTop + plot_h - y)
          << "\" fill=\"" << color << "\"/>\n";
      }
    } else {
      std::string points;
      for (std::size_t i = 0; i < n && i < ser.values.size(); ++i) {
        if (!ser.values[i]) continue;
        if (!points.empty()) points += ' ';
        points += num(x_at(i)) + ',' + num(y_at(*ser.values[i]));
        s << "<circle cx=\"" << num(x_at(i)) << "\" cy=\""
          << num(y_at(*ser.values[i])) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
      }
      s << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    }
    const double ly = kTop + 8 + 18.0 * static_cast<double>(k);
    s << "<rect x=\"" << kWidth - kRight + 14 << "\" y=\"" << num(ly - 8)
      << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    s << "<text x=\"" << kWidth - kRight + 30 << "\" y=\"" << num(ly + 1)
      << "\">" << escape(ser.name) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::size_t column(const CsvTable& t, std::string_view name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  throw FormatError("missing column '" + std::string(name) + "'");
}

// Ordered unique values of a column, preserving first appearance.
std::vector<std::string> distinct(const CsvTable& t, std::size_t col) {
  std::vector<std::string> out;
  for (const auto& r : t.rows) {
    if (std::find(out.begin(), out.end(), r[col]) == out.end()) {
      out.push_back(r[col]);
    }
  }
  return out;
}

std::vector<RenderedPlot> strength_plots(const CsvTable& t) {
  const std::size_t payload = column(t, "payload_id");
  const std::size_t strength = column(t, "strength");
  const std::size_t invisible = column(t, "invisible_fraction");
  const std::size_t blind = column(t, "blind_rate");
  std::vector<RenderedPlot> out;
  for (const std::string& id : distinct(t, payload)) {
    if (id == "all") continue;
    Chart c;
    c.title = "Strength sweep: " + id;
    c.x_title = "injection strength";
    c.y_title = "fraction of cells";
    Series inv{"invisible", {}};
    Series det{"blind detected", {}};
    for (const auto& r : t.rows) {
      if (r[payload] != id) continue;
      c.x_labels.push_back(r[strength]);
      inv.values.push_back(parse_rate(r[invisible]));
      det.values.push_back(parse_rate(r[blind]));
    }
    c.series = {inv, det};
    out.push_back({"strength_" + id + ".svg", render(c)});
  }
  return out;
}

std::vector<RenderedPlot> entropy_plots(const CsvTable& t) {
  const std::size_t lo = column(t, "bucket_lo");
  const std::size_t hi = column(t, "bucket_hi");
  const std::size_t blind = column(t, "blind_rate");
  Chart c;
  c.title = "Blind detection by background entropy";
  c.x_title = "global entropy (bits)";
  c.y_title = "detection rate";
  c.bars = true;
  Series det{"blind detected", {}};
  for (const auto& r : t.rows) {
    const auto a = parse_rate(r[lo]);
    const auto b = parse_rate(r[hi]);
    if (!a || !b) throw FormatError("entropy bucket bounds missing");
    c.x_labels.push_back(std::to_string(static_cast<int>(*a)) + "-" +
                         std::to_string(static_cast<int>(*b)));
    det.values.push_back(parse_rate(r[blind]));
  }
  c.series = {det};
  return {{"entropy.svg", render(c)}};
}

std::vector<RenderedPlot> size_plots(const CsvTable& t) {
  const std::size_t payload = column(t, "payload_id");
  const std::size_t width = column(t, "width");
  const std::size_t blind = column(t, "blind_rate");
  // Widths descending, as the sweep shrinks the payload.
  std::vector<std::string> widths = distinct(t, width);
  std::sort(widths.begin(), widths.end(),
            [](const std::string& a, const std::string& b) {
              return std::stoi(a) > std::stoi(b);
            });
  Chart c;
  c.title = "Blind detection by payload width";
  c.x_title = "payload width (px)";
  c.y_title = "detection rate";
  c.x_labels = widths;
  for (const std::string& id : distinct(t, payload)) {
    Series ser{id, std::vector<std::optional<double>>(widths.size())};
    for (const auto& r : t.rows) {
      if (r[payload] != id) continue;
      const auto it = std::find(widths.begin(), widths.end(), r[width]);
      ser.values[static_cast<std::size_t>(it - widths.begin())] =
          parse_rate(r[blind]);
    }
    c.series.push_back(std::move(ser));
  }
  return {{"size.svg", render(c)}};
}

std::vector<RenderedPlot> mitigation_plots(const CsvTable& t) {
  const std::size_t payload = column(t, "payload_id");
  const std::size_t strength = column(t, "strength");
  const std::size_t rate = column(t, "mitigation_rate");
  const std::vector<std::string> strengths = distinct(t, strength);
  Chart c;
  c.title = "Mitigation success by payload";
  c.x_title = "payload";
  c.y_title = "payload destroyed";
  c.bars = true;
  c.x_labels = distinct(t, payload);
  for (const std::string& st : strengths) {
    Series ser{"strength " + st,
               std::vector<std::optional<double>>(c.x_labels.size())};
    for (const auto& r : t.rows) {
      if (r[strength] != st) continue;
      const auto it = std::find(c.x_labels.begin(), c.x_labels.end(), r[payload]);
      ser.values[static_cast<std::size_t>(it - c.x_labels.begin())] =
          parse_rate(r[rate]);
    }
    c.series.push_back(std::move(ser));
  }
  return {{"mitigation.svg", render(c)}};
}

bool has_column(const CsvTable& t, std::string_view name) {
  return std::find(t.header.begin(), t.header.end(), name) != t.header.end();
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  auto split = [](std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw FormatError("CSV row has " + std::to_string(cells.size()) +
                        " fields, header has " +
                        std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw FormatError("CSV has no header");
  if (t.rows.empty()) throw FormatError("CSV has no data rows");
  return t;
}

std::vector<RenderedPlot> render_plots(std::string_view csv_text) {
  const CsvTable t = parse_csv(csv_text);
  if (has_column(t, "invisible_fraction")) return strength_plots(t);
  if (has_column(t, "bucket_lo")) return entropy_plots(t);
  if (has_column(t, "mitigation_rate")) return mitigation_plots(t);
  if (has_column(t, "width") && has_column(t, "blind_rate")) {
    return size_plots(t);
  }
  throw FormatError("CSV is not a recognised sweep summary");
}

std::vector<std::filesystem::path> emit_plots(
    const std::filesystem::path& csv, const std::filesystem::path& out_dir) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw IoError("cannot open " + csv.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::vector<RenderedPlot> plots = render_plots(buf.str());
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());
  std::vector<std::filesystem::path> written;
  for (const auto& p : plots) {
    const auto path = out_dir / p.filename;
    std::ofstream f(path, std::ios::binary);
    f << p.svg;
    if (!f) throw IoError("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace hintguard
