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
// hintguard command-line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hintguard/corpus.hpp"
#include "hintguard/detector.hpp"
#include "hintguard/embedder.hpp"
#include "hintguard/entropy.hpp"
#include "hintguard/error.hpp"
#include "hintguard/experiments.hpp"
#include "hintguard/imaging.hpp"
#include "hintguard/mitigation.hpp"
#include "hintguard/perception.hpp"
#include "hintguard/plots.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hintguard;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string library_dir;  // empty selects the built-in payloads
  HarnessParams params;
};

json rect_json(const Rect& r) {
  return {{"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height}};
}

json detection_json(const DetectionReport& r) {
  json j = {{"method", to_string(r.method)},
            {"detected", r.detected},
            {"recovered_pixels", r.recovered.count()},
            {"recovered_bbox", rect_json(r.recovered.bbox())}};
  j["best_match"] = r.best_match ? json(*r.best_match) : json(nullptr);
  j["match_score"] = r.match_score ? json(*r.match_score) : json(nullptr);
  return j;
}

json visibility_json(const VisibilityReport& v) {
  return {{"jnd_ratio", v.jnd_ratio},
          {"verdict", to_string(v.verdict)},
          {"pixels_evaluated", v.pixels_evaluated}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw IoError("cannot write " + path.string());
}

void emit(const Globals& g, const std::string& name, const json& j) {
  const std::string text = j.dump(2) + "\n";
  write_text(fs::path(g.out) / name, text);
  std::cout << text;
}

PayloadLibrary library_of(const Globals& g) {
  return g.library_dir.empty() ? PayloadLibrary::builtin()
                               : PayloadLibrary::load_dir(g.library_dir);
}

// A payload is either a library id or a path to a mask PNG.
PayloadMask resolve_payload(const Globals& g, const std::string& ref) {
  if (fs::exists(ref)) return load_mask(ref).cropped();
  return library_of(g).get(ref);
}

std::vector<int> parse_ints(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("not an integer list: '" + list + "'");
    }
  }
  return out;
}

void add_parameter_options(CLI::App& app, Globals& g) {
  HarnessParams& p = g.params;
  app.add_option("--library", g.library_dir,
                 "Directory of payload mask PNGs (default: built-in set)");
  app.add_option("--tile-size", p.entropy.tile_size, "Entropy tile size")
      ->capture_default_str();
  app.add_option("--entropy-threshold", p.entropy.threshold_bits,
                 "Feasible placement entropy, bits")
      ->capture_default_str();
  app.add_option("--placement-margin", p.placement_margin,
                 "Clearance between payload and image border")
      ->capture_default_str();
  app.add_option("--t-dark", p.jnd.t_dark)->capture_default_str();
  app.add_option("--t-mid", p.jnd.t_mid)->capture_default_str();
  app.add_option("--masking-slope", p.jnd.masking_slope)->capture_default_str();
  app.add_option("--median-radius", p.detector.median_radius)
      ->capture_default_str();
  app.add_option("--band-min", p.detector.band_min)->capture_default_str();
  app.add_option("--band-max", p.detector.band_max)->capture_default_str();
  app.add_option("--open-radius", p.detector.open_radius)->capture_default_str();
  app.add_option("--edge-guard", p.detector.edge_guard)->capture_default_str();
  app.add_option("--min-area", p.detector.min_area)->capture_default_str();
  app.add_option("--match-threshold", p.detector.match_threshold)
      ->capture_default_str();
  app.add_option("--sigma-max", p.mitigation.sigma_max)->capture_default_str();
  app.add_option("--fill-contrast", p.mitigation.fill_contrast)
      ->capture_default_str();
  app.add_option("--noise-std", p.mitigation.noise_std)->capture_default_str();
}

void sync_params(Globals& g) {
  // Segmentation tiles follow the entropy settings.
  g.params.mitigation.tile_size = g.params.entropy.tile_size;
  g.params.mitigation.entropy_threshold = g.params.entropy.threshold_bits;
  g.params.mitigation.noise_seed = g.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hintguard: hidden-hint injection, detection and scrubbing"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Plain-text key = value file; flags override");
  Globals g;
  g.seed = MitigationParams{}.noise_seed;
  app.add_option("--seed", g.seed, "Seed for corpora and scrub noise")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  add_parameter_options(app, g);

  // embed
  auto* embed = app.add_subcommand("embed", "Embed a payload into an image");
  std::string embed_in, embed_payload_ref, prompt;
  int strength = kDefaultStrength;
  int sign = 1;
  std::optional<int> at_x, at_y, width;
  bool require_feasible = false;
  embed->add_option("image", embed_in, "Clean PNG")->required();
  embed->add_option("--payload", embed_payload_ref, "Library id or mask PNG")
      ->required();
  embed->add_option("--strength", strength)->capture_default_str();
  embed->add_option("--sign", sign, "+1 or -1")->capture_default_str();
  embed->add_option("--x", at_x, "Explicit origin x");
  embed->add_option("--y", at_y, "Explicit origin y");
  embed->add_option("--width", width, "Rescale payload to this width");
  embed->add_flag("--require-feasible", require_feasible,
                  "Fail when no window is below the entropy threshold");
  embed->add_option("--prompt", prompt, "Prompt to extend with the layout cue");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Entropy and JND analysis");
  std::string an_in, an_injected, an_mask;
  analyze->add_option("image", an_in, "Clean PNG")->required();
  analyze->add_option("--injected", an_injected, "Injected PNG for JND ratio");
  analyze->add_option("--mask", an_mask,
                      "Image-sized payload mask PNG (default: paired residual)");

  // detect
  auto* detect = app.add_subcommand("detect", "Recover a hidden payload");
  std::string det_in, det_clean;
  detect->add_option("image", det_in, "Suspect PNG")->required();
  detect->add_option("--clean", det_clean, "Clean reference for paired mode");

  // scrub
  auto* scrub_cmd = app.add_subcommand("scrub", "Regenerate smooth background");
  std::string scrub_in;
  scrub_cmd->add_option("image", scrub_in, "Suspect PNG")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  CorpusSpec cs;
  std::string background = "flat";
  synth->add_option("--count", cs.count)->capture_default_str();
  synth->add_option("--size", cs.size)->capture_default_str();
  synth->add_option("--background", background, "flat|gradient|noise|mixed")
      ->capture_default_str();
  synth->add_option("--min-shapes", cs.min_shapes)->capture_default_str();
  synth->add_option("--max-shapes", cs.max_shapes)->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep");
  std::string kind, corpus_dir, strengths_arg = "1,2,5,10",
                                widths_arg = "256,128,64,32";
  int sweep_strength = kDefaultStrength;
  bool with_plots = false;
  sweep->add_option("kind", kind, "strength|entropy|size|mitigation")
      ->required()
      ->check(CLI::IsMember({"strength", "entropy", "size", "mitigation"}));
  sweep->add_option("--corpus", corpus_dir, "Corpus directory from synth")
      ->required();
  sweep->add_option("--strengths", strengths_arg, "Comma list")
      ->capture_default_str();
  sweep->add_option("--widths", widths_arg, "Comma list")->capture_default_str();
  sweep->add_option("--strength", sweep_strength,
                    "Strength for entropy and size sweeps")
      ->capture_default_str();
  sweep->add_flag("--plots", with_plots, "Also render SVG charts");

  // plot
  auto* plot = app.add_subcommand("plot", "Render SVG charts from a summary");
  std::string plot_csv;
  plot->add_option("csv", plot_csv, "Summary CSV")->required();

  // logos
  auto* logos = app.add_subcommand("logos", "Write the payload masks as PNGs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  sync_params(g);

  try {
    const HarnessParams& p = g.params;
    if (*embed) {
      const ImageBuffer clean = load_png(embed_in);
      PayloadMask payload = resolve_payload(g, embed_payload_ref);
      if (width) payload = scale_mask(payload, *width);
      if (at_x.has_value() != at_y.has_value()) {
        throw InvalidArgument("--x and --y must be given together");
      }
      InjectionSpec spec;
      spec.strength = strength;
      spec.sign = sign;
      spec.mask = payload;
      spec.require_feasible = require_feasible;
      spec.placement =
          at_x ? explicit_placement({*at_x, *at_y})
               : plan_placement(to_luma(clean), payload, p.entropy,
                                p.placement_margin);
      const auto [injected, record] = embed_payload(clean, spec);
      const fs::path out_png =
          fs::path(g.out) / (fs::path(embed_in).stem().string() + "_injected.png");
      fs::create_directories(g.out);
      save_png(injected, out_png);
      json j = {{"output", out_png.string()},
                {"payload_id", record.payload_id},
                {"strength", record.spec.strength},
                {"sign", record.spec.sign},
                {"origin", {{"x", record.origin.x}, {"y", record.origin.y}}},
                {"window_entropy", record.spec.placement.window_entropy},
                {"feasible", record.spec.placement.feasible},
                {"clipped_pixels", record.clipped_pixels}};
      if (!prompt.empty()) j["prompt"] = augment_prompt(prompt);
      emit(g, "embed.json", j);
    } else if (*analyze) {
      const ImageBuffer clean = load_png(an_in);
      const GrayBuffer luma = to_luma(clean);
      const EntropyMap map = entropy_map(luma, p.entropy.tile_size);
      json j = {{"width", clean.width()},
                {"height", clean.height()},
                {"entropy", shannon_entropy(luma)},
                {"tile_size", map.tile_size},
                {"cols", map.cols},
                {"rows", map.rows},
                {"entropy_map", map.values}};
      if (!an_injected.empty()) {
        const ImageBuffer injected = load_png(an_injected);
        const PayloadMask mask =
            an_mask.empty() ? residual_of(clean, injected) : load_mask(an_mask);
        j["visibility"] = visibility_json(jnd_ratio(clean, injected, mask, p.jnd));
      }
      emit(g, "analyze.json", j);
    } else if (*detect) {
      const ImageBuffer suspect = load_png(det_in);
      const PayloadLibrary lib = library_of(g);
      const DetectionReport r =
          det_clean.empty()
              ? detect_blind(suspect, lib, p.detector)
              : detect_paired(load_png(det_clean), suspect, lib, p.detector);
      fs::create_directories(g.out);
      const fs::path mask_png =
          fs::path(g.out) / (fs::path(det_in).stem().string() + "_recovered.png");
      save_mask(r.recovered, mask_png);
      json j = detection_json(r);
      j["recovered_mask"] = mask_png.string();
      emit(g, "detect.json", j);
    } else if (*scrub_cmd) {
      const ImageBuffer suspect = load_png(scrub_in);
      const ScrubReport r =
          scrub(suspect, library_of(g), p.mitigation, p.detector);
      fs::create_directories(g.out);
      const fs::path out_png =
          fs::path(g.out) / (fs::path(scrub_in).stem().string() + "_cleaned.png");
      save_png(r.cleaned, out_png);
      emit(g, "scrub.json", {{"output", out_png.string()},
                             {"coverage", r.background.coverage},
                             {"foreground_mad", r.foreground_mad},
                             {"payload_destroyed", r.payload_destroyed}});
    } else if (*synth) {
      cs.seed = g.seed;
      cs.background = parse_background(background);
      write_corpus(synth_corpus(cs), cs, g.out);
      std::cout << "wrote " << cs.count << " images to " << g.out
                << "\n";
    } else if (*sweep) {
      const LoadedCorpus corpus = load_corpus(corpus_dir);
      const PayloadLibrary lib = library_of(g);
      const std::vector<int> strengths = parse_ints(strengths_arg);
      std::vector<ExperimentRecord> records;
      std::string summary;
      if (kind == "strength") {
        records = run_strength_sweep(corpus.images, lib, strengths, p);
        summary = to_csv(std::span<const StrengthRow>(summarize_strength(records)));
      } else if (kind == "entropy") {
        records = run_entropy_sweep(corpus.images, lib, sweep_strength, p);
        summary = to_csv(std::span<const EntropyRow>(summarize_entropy(records)));
      } else if (kind == "size") {
        const std::vector<int> widths = parse_ints(widths_arg);
        records = run_size_sweep(corpus.images, lib, widths, sweep_strength, p);
        summary = to_csv(std::span<const SizeRow>(summarize_size(records)));
      } else {
        records = run_mitigation_eval(corpus.images, lib, strengths, p);
        summary =
            to_csv(std::span<const MitigationRow>(summarize_mitigation(records)));
      }
      fs::create_directories(g.out);
      write_text(fs::path(g.out) / (kind + "_records.csv"), records_csv(records));
      const fs::path summary_path = fs::path(g.out) / (kind + "_summary.csv");
      write_text(summary_path, summary);
      std::cout << summary;
      if (with_plots) {
        for (const auto& f : emit_plots(summary_path, g.out)) {
          std::cout << "wrote " << f.string() << "\n";
        }
      }
    } else if (*plot) {
      for (const auto& f : emit_plots(plot_csv, g.out)) {
        std::cout << "wrote " << f.string() << "\n";
      }
    } else if (*logos) {
      fs::create_directories(g.out);
      const PayloadLibrary lib = library_of(g);
      for (const auto& e : lib.entries()) {
        save_mask(e, fs::path(g.out) / (e.payload_id() + ".png"));
        std::cout << e.payload_id() << " " << e.width() << "x" << e.height()
                  << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
