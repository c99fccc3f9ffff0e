// vidflux: detection-fluctuation analysis toolkit.
//
// Subcommands wire the library into the standard workflows: `analyze` one
// detection log against ground truth, `compare` two pipelines with the
// repeated-measures t-test, `track` a log with the SORT tracker, `simulate`
// the camera AUTO-parameter loop. All outputs are deterministic for fixed
// inputs, flags, and seed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vidflux/camsim.hpp"
#include "vidflux/flux.hpp"
#include "vidflux/io.hpp"
#include "vidflux/manifest.hpp"
#include "vidflux/matcher.hpp"
#include "vidflux/stats.hpp"
#include "vidflux/tracker.hpp"
#include "vidflux/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace vidflux;

struct OutputOptions {
  std::string out_dir = ".";
  std::string format = "json";  // report format: json | csv
};

// Flat key=value config file; keys are long option names without the leading
// dashes. Precedence: explicit flags > config file > built-in defaults.
void add_config_option(CLI::App* cmd, std::string& path_slot) {
  cmd->add_option("--config", path_slot, "Flat key=value config file");
}

void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr || key == "config") {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown option '" + key + "'");
    }
    if (op->count() > 0) continue;  // explicit flag wins
    op->add_result(value);
    op->run_callback();
  }
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out-dir", out.out_dir, "Directory for emitted artifacts")
      ->capture_default_str();
  cmd->add_option("--format", out.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

std::string out_path(const OutputOptions& out, const std::string& name) {
  fs::create_directories(out.out_dir);
  return (fs::path(out.out_dir) / name).string();
}

// Flatten a JSON tree into `path,value` CSV lines (for --format csv).
void flatten_json(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << prefix << ',' << j.dump() << '\n';
  }
}

void write_report(const OutputOptions& out, const std::string& base, const json& j) {
  if (out.format == "json") {
    write_file(out_path(out, base + ".json"), j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "key,value\n";
    flatten_json(j, "", os);
    write_file(out_path(out, base + ".csv"), os.str());
  }
}

struct MatchOptions {
  double iou_threshold = 0.5;
  bool class_insensitive = false;
  std::string strategy = "greedy";
  std::string det_format = "auto";  // auto | csv | jsonl

  MatchConfig to_config() const {
    MatchConfig cfg;
    cfg.iou_threshold = iou_threshold;
    cfg.class_sensitive = !class_insensitive;
    cfg.strategy = strategy == "optimal" ? MatchStrategy::OptimalAssignment
                                         : MatchStrategy::GreedyByConfidence;
    return cfg;
  }
};

void add_match_options(CLI::App* cmd, MatchOptions& m) {
  cmd->add_option("--iou-threshold", m.iou_threshold, "IoU required for a true positive")
      ->capture_default_str();
  cmd->add_flag("--class-insensitive", m.class_insensitive,
                "Match detections to ground truth regardless of class");
  cmd->add_option("--strategy", m.strategy, "Matching strategy")
      ->check(CLI::IsMember({"greedy", "optimal"}))
      ->capture_default_str();
  cmd->add_option("--det-format", m.det_format, "Detection log format")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
      ->capture_default_str();
}

LogFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "csv") return LogFormat::Csv;
  if (flag == "jsonl") return LogFormat::Jsonl;
  auto ext = fs::path(path).extension().string();
  return (ext == ".jsonl" || ext == ".json") ? LogFormat::Jsonl : LogFormat::Csv;
}

std::vector<Detection> load_detections(const std::string& path, const MatchOptions& m,
                                       RunManifest& manifest) {
  const std::string bytes = read_file(path);
  manifest.input_digests[path] = content_digest(bytes);
  return parse_detection_log(bytes, resolve_format(m.det_format, path));
}

std::vector<GroundTruthObject> load_ground_truth(const std::string& path,
                                                 RunManifest& manifest) {
  const std::string bytes = read_file(path);
  manifest.input_digests[path] = content_digest(bytes);
  return parse_ground_truth(bytes);
}

json flux_summary_json(const FluxSeries& flux) {
  json j;
  j["window"] = flux.window;
  j["count"] = flux.values.size();
  j["skipped"] = flux.skipped;
  if (!flux.values.empty()) {
    FluxSummary s = summarize(flux);
    j["max"] = s.max;
    j["mean"] = s.mean;
    j["max_percent"] = s.max * 100.0;
    j["mean_percent"] = s.mean * 100.0;
  }
  return j;
}

json test_report_json(const PairedTestReport& r) {
  json j;
  j["t_stat"] = r.t_stat;
  j["df"] = r.df;
  j["p_two_sided"] = r.p_two_sided;
  j["alpha"] = r.alpha;
  j["reject_null"] = r.reject_null;
  j["mean_diff"] = r.mean_diff;
  j["sd_diff"] = r.sd_diff;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["degenerate"] = r.degenerate;
  if (r.relative_effect) {
    j["relative_effect"] = *r.relative_effect;
    j["relative_effect_percent"] = *r.relative_effect * 100.0;
  } else {
    j["relative_effect"] = nullptr;
  }
  return j;
}

// Windows that fit get a summary; shorter series just omit them.
json flux_block(const TpSeries& series) {
  json j = json::object();
  for (int w : {2, 10}) {
    if (series.size() >= static_cast<std::size_t>(w)) {
      j["f" + std::to_string(w)] = flux_summary_json(fwindow(series, w));
    }
  }
  return j;
}

json compare_core(const TpSeries& a, const TpSeries& b, double alpha, bool one_sided) {
  DiffSeries d = diff_series(a, b);
  double a_mean = 0.0;
  for (int v : a.tp) a_mean += v;
  a_mean /= static_cast<double>(a.size());

  PairedTestReport r = paired_t_test(d, alpha, a_mean);
  json j;
  j["test"] = test_report_json(r);
  if (one_sided) {
    const double cdf =
        r.sd_diff == 0.0
            ? (r.mean_diff > 0.0 ? 1.0 : (r.mean_diff < 0.0 ? 0.0 : 0.5))
            : t_cdf(r.t_stat, static_cast<double>(r.df));
    j["test"]["p_one_sided_greater"] = 1.0 - cdf;
    j["test"]["p_one_sided_less"] = cdf;
    j["test"]["reject_null_one_sided"] = std::min(cdf, 1.0 - cdf) < alpha;
  }
  j["baseline_mean_tp"] = a_mean;
  j["flux_a"] = flux_block(a);
  j["flux_b"] = flux_block(b);
  return j;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string config_path;
  std::string det_path;
  std::string gt_path;
  MatchOptions match;
  std::vector<int> windows;
  OutputOptions out;
};

int run_analyze(const AnalyzeArgs& args) {
  RunManifest manifest;
  manifest.command = "analyze";

  auto dets = load_detections(args.det_path, args.match, manifest);
  auto gts = load_ground_truth(args.gt_path, manifest);
  FrameSet fs = build_frameset(dets, gts);
  TpSeries series = count_series(fs, args.match.to_config());

  std::vector<int> windows = args.windows.empty() ? std::vector<int>{2, 10} : args.windows;

  manifest.config = {
      {"detections", args.det_path},
      {"ground_truth", args.gt_path},
      {"iou_threshold", format_double(args.match.iou_threshold)},
      {"class_sensitive", args.match.class_insensitive ? "false" : "true"},
      {"strategy", args.match.strategy},
  };
  for (int w : windows) {
    manifest.config["window_" + std::to_string(w)] = std::to_string(w);
  }

  {
    std::ostringstream os;
    write_tp_series_csv(os, series);
    write_file(out_path(args.out, "tp.csv"), os.str());
  }

  json summary;
  summary["frames"] = series.size();
  summary["windows"] = json::object();
  for (int w : windows) {
    FluxSeries flux = fwindow(series, w);  // AlignmentError -> exit 3
    std::ostringstream os;
    write_flux_csv(os, flux);
    write_file(out_path(args.out, "flux_w" + std::to_string(w) + ".csv"), os.str());
    summary["windows"][std::to_string(w)] = flux_summary_json(flux);
  }
  summary["manifest"] = manifest.to_json();
  write_report(args.out, "flux_summary", summary);
  return 0;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string config_path;
  std::string det_a, det_b;
  std::string gt_path;
  std::string tp_a, tp_b;
  double alpha = 0.01;
  bool one_sided = false;
  MatchOptions match;
  OutputOptions out;
};

int run_compare(const CompareArgs& args) {
  RunManifest manifest;
  manifest.command = "compare";

  TpSeries a, b;
  if (!args.tp_a.empty() || !args.tp_b.empty()) {
    if (args.tp_a.empty() || args.tp_b.empty()) {
      throw std::invalid_argument("--tp-a and --tp-b must be given together");
    }
    const std::string bytes_a = read_file(args.tp_a);
    const std::string bytes_b = read_file(args.tp_b);
    manifest.input_digests[args.tp_a] = content_digest(bytes_a);
    manifest.input_digests[args.tp_b] = content_digest(bytes_b);
    a = parse_tp_series(bytes_a);
    b = parse_tp_series(bytes_b);
    manifest.config = {{"tp_a", args.tp_a}, {"tp_b", args.tp_b}};
  } else {
    if (args.det_a.empty() || args.det_b.empty() || args.gt_path.empty()) {
      throw std::invalid_argument(
          "compare needs --a, --b and --ground-truth (or --tp-a/--tp-b)");
    }
    auto dets_a = load_detections(args.det_a, args.match, manifest);
    auto dets_b = load_detections(args.det_b, args.match, manifest);
    auto gts = load_ground_truth(args.gt_path, manifest);
    const MatchConfig cfg = args.match.to_config();
    a = count_series(build_frameset(dets_a, gts), cfg);
    b = count_series(build_frameset(dets_b, gts), cfg);
    manifest.config = {
        {"a", args.det_a},
        {"b", args.det_b},
        {"ground_truth", args.gt_path},
        {"iou_threshold", format_double(args.match.iou_threshold)},
        {"class_sensitive", args.match.class_insensitive ? "false" : "true"},
        {"strategy", args.match.strategy},
    };
  }
  manifest.config["alpha"] = format_double(args.alpha);
  manifest.config["one_sided"] = args.one_sided ? "true" : "false";

  json report = compare_core(a, b, args.alpha, args.one_sided);
  report["manifest"] = manifest.to_json();
  write_report(args.out, "compare_report", report);
  return 0;
}

// ------------------------------------------------------------------ track

struct TrackArgs {
  std::string config_path;
  std::string det_path;
  std::string gt_path;
  MatchOptions match;  // det-format only
  int max_age = 1;
  int min_hits = 3;
  double iou_gate = 0.3;
  OutputOptions out;
};

int run_track(const TrackArgs& args) {
  RunManifest manifest;
  manifest.command = "track";

  auto dets = load_detections(args.det_path, args.match, manifest);
  std::vector<GroundTruthObject> gts;
  if (!args.gt_path.empty()) gts = load_ground_truth(args.gt_path, manifest);

  TrackerConfig cfg;
  cfg.max_age = args.max_age;
  cfg.min_hits = args.min_hits;
  cfg.iou_gate = args.iou_gate;

  FrameSet fs = build_frameset(dets, {});
  TrackingResult result =
      args.gt_path.empty() ? track_sequence(fs, cfg) : track_sequence(fs, cfg, gts);

  manifest.config = {
      {"detections", args.det_path},
      {"max_age", std::to_string(args.max_age)},
      {"min_hits", std::to_string(args.min_hits)},
      {"iou_gate", format_double(args.iou_gate)},
  };
  if (!args.gt_path.empty()) manifest.config["ground_truth"] = args.gt_path;

  {
    std::ostringstream os;
    write_tracks_csv(os, result.records);
    write_file(out_path(args.out, "tracks.csv"), os.str());
  }

  json churn;
  churn["total_track_ids"] = result.churn.total_track_ids;
  churn["confirmed_track_ids"] = result.churn.confirmed_track_ids;
  if (result.churn.ground_truth_tracks) {
    churn["ground_truth_tracks"] = *result.churn.ground_truth_tracks;
  }
  if (result.churn.churn_ratio) churn["churn_ratio"] = *result.churn.churn_ratio;
  churn["manifest"] = manifest.to_json();
  write_report(args.out, "churn", churn);
  return 0;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config_path;
  CamSimConfig cam;
  int n_objects = 8;
  std::string contrasts;  // comma list; empty = default scene band
  double beta = 8.0;
  double theta = 1.0;
  std::string quantization = "none";
  std::string ab;  // e.g. "e_max=0.25,0.008333"
  double alpha = 0.01;
  OutputOptions out;
};

SceneConfig make_scene(const SimulateArgs& args) {
  SceneConfig scene;
  scene.detector_beta = args.beta;
  scene.detector_theta = args.theta;
  if (!args.contrasts.empty()) {
    std::istringstream ss(args.contrasts);
    std::string tok;
    std::int64_t id = 1;
    while (std::getline(ss, tok, ',')) {
      scene.objects.push_back({id++, std::stod(tok)});
    }
  } else {
    // Spread contrasts over the default marginal band; 8 objects reproduces
    // the library default scene exactly.
    const int n = args.n_objects;
    for (int j = 0; j < n; ++j) {
      const double t = n == 1 ? 0.0 : static_cast<double>(j) / (n - 1);
      scene.objects.push_back({j + 1, 0.055 + t * (0.097 - 0.055)});
    }
  }
  return scene;
}

std::optional<int> parse_quantization(const std::string& s) {
  if (s.empty() || s == "none" || s == "off") return std::nullopt;
  return std::stoi(s);
}

void config_snapshot(const CamSimConfig& cam, const SceneConfig& scene,
                     std::map<std::string, std::string>& out) {
  out["fps"] = format_double(cam.fps);
  out["n_frames"] = std::to_string(cam.n_frames);
  out["e_max"] = format_double(cam.e_max);
  out["e_min"] = format_double(cam.e_min);
  out["g_max"] = format_double(cam.g_max);
  out["flicker_depth"] = format_double(cam.flicker_depth);
  out["mains_hz"] = format_double(cam.mains_hz);
  out["target_signal"] = format_double(cam.target_signal);
  out["controller_alpha"] = format_double(cam.controller_alpha);
  out["read_noise"] = format_double(cam.read_noise);
  out["quantization_levels"] =
      cam.quantization_levels ? std::to_string(*cam.quantization_levels) : "none";
  out["seed"] = std::to_string(cam.seed);
  out["exposure_steps_per_octave"] = std::to_string(cam.exposure_steps_per_octave);
  out["detector_beta"] = format_double(scene.detector_beta);
  out["detector_theta"] = format_double(scene.detector_theta);
  std::string cs;
  for (const auto& o : scene.objects) {
    if (!cs.empty()) cs += ",";
    cs += format_double(o.contrast);
  }
  out["contrasts"] = cs;
}

void write_sim_outputs(const OutputOptions& out, const std::string& suffix,
                       const SimulationResult& result) {
  {
    std::ostringstream os;
    write_signals_csv(os, result.signals);
    write_file(out_path(out, "signals" + suffix + ".csv"), os.str());
  }
  {
    std::ostringstream os;
    write_tp_series_csv(os, result.tp_series);
    write_file(out_path(out, "tp" + suffix + ".csv"), os.str());
  }
}

// Apply one leg of an A/B pair to a config. Returns the axis name.
std::string apply_ab(CamSimConfig& cam, const std::string& key, const std::string& value) {
  if (key == "e_max") {
    cam.e_max = std::stod(value);
  } else if (key == "flicker" || key == "flicker_depth" || key == "m") {
    cam.flicker_depth = std::stod(value);
  } else if (key == "quantization" || key == "q") {
    cam.quantization_levels = parse_quantization(value);
  } else {
    throw std::invalid_argument("--ab supports e_max, flicker, quantization; got " + key);
  }
  return key;
}

int run_simulate(SimulateArgs& args) {
  RunManifest manifest;
  manifest.command = "simulate";
  args.cam.quantization_levels = parse_quantization(args.quantization);
  SceneConfig scene = make_scene(args);

  if (args.ab.empty()) {
    SimulationResult result = simulate(args.cam, scene);
    write_sim_outputs(args.out, "", result);

    config_snapshot(args.cam, scene, manifest.config);
    json summary;
    summary["frames"] = result.tp_series.size();
    double mean_tp = 0.0;
    for (int v : result.tp_series.tp) mean_tp += v;
    summary["mean_tp"] = mean_tp / static_cast<double>(result.tp_series.size());
    summary["flux"] = flux_block(result.tp_series);
    summary["manifest"] = manifest.to_json();
    write_report(args.out, "sim_summary", summary);
    return 0;
  }

  // --ab key=valA,valB: two legs on shared seeds, chained into compare.
  const auto eq = args.ab.find('=');
  const auto comma = args.ab.find(',', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || comma == std::string::npos) {
    throw std::invalid_argument("--ab expects key=valueA,valueB");
  }
  const std::string key = args.ab.substr(0, eq);
  const std::string val_a = args.ab.substr(eq + 1, comma - eq - 1);
  const std::string val_b = args.ab.substr(comma + 1);

  CamSimConfig cam_a = args.cam;
  CamSimConfig cam_b = args.cam;
  apply_ab(cam_a, key, val_a);
  apply_ab(cam_b, key, val_b);

  SimulationResult res_a = simulate(cam_a, scene);
  SimulationResult res_b = simulate(cam_b, scene);
  write_sim_outputs(args.out, "_a", res_a);
  write_sim_outputs(args.out, "_b", res_b);

  config_snapshot(args.cam, scene, manifest.config);
  manifest.config["ab"] = args.ab;
  manifest.config["alpha"] = format_double(args.alpha);

  json report = compare_core(res_a.tp_series, res_b.tp_series, args.alpha, false);
  report["ab"] = {{"key", key}, {"a", val_a}, {"b", val_b}};
  report["manifest"] = manifest.to_json();
  write_report(args.out, "compare_report", report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vidflux: frame-to-frame detection fluctuation toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Fluctuation metrics for one detection log against ground truth");
  analyze->add_option("--detections", analyze_args.det_path, "Detection log (CSV or JSONL)")
      ->required();
  analyze->add_option("--ground-truth", analyze_args.gt_path, "Ground-truth CSV")
      ->required();
  add_match_options(analyze, analyze_args.match);
  analyze->add_option("--window", analyze_args.windows,
                      "Fluctuation window length (repeatable; default 2 and 10)");
  add_output_options(analyze, analyze_args.out);
  add_config_option(analyze, analyze_args.config_path);

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "Paired-difference t-test between two detection pipelines");
  compare->add_option("--a", compare_args.det_a, "Baseline detection log (A)");
  compare->add_option("--b", compare_args.det_b, "Treatment detection log (B)");
  compare->add_option("--ground-truth", compare_args.gt_path, "Ground-truth CSV");
  compare->add_option("--tp-a", compare_args.tp_a, "Precomputed TpSeries CSV for A");
  compare->add_option("--tp-b", compare_args.tp_b, "Precomputed TpSeries CSV for B");
  compare->add_option("--alpha", compare_args.alpha, "Significance level")
      ->capture_default_str();
  compare->add_flag("--one-sided", compare_args.one_sided,
                    "Also report one-sided p-values");
  add_match_options(compare, compare_args.match);
  add_output_options(compare, compare_args.out);
  add_config_option(compare, compare_args.config_path);

  TrackArgs track_args;
  CLI::App* track = app.add_subcommand("track", "SORT tracking and track-id churn");
  track->add_option("--detections", track_args.det_path, "Detection log")->required();
  track->add_option("--ground-truth", track_args.gt_path,
                    "Optional ground truth for the churn ratio");
  track->add_option("--max-age", track_args.max_age, "Frames a track survives unmatched")
      ->capture_default_str();
  track->add_option("--min-hits", track_args.min_hits, "Hits before a track is confirmed")
      ->capture_default_str();
  track->add_option("--iou-gate", track_args.iou_gate, "Association IoU gate")
      ->capture_default_str();
  track->add_option("--det-format", track_args.match.det_format, "Detection log format")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
      ->capture_default_str();
  add_output_options(track, track_args.out);
  add_config_option(track, track_args.config_path);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Camera AUTO-parameter loop with a surrogate detector");
  sim->add_option("--frames", sim_args.cam.n_frames, "Frames to simulate")
      ->capture_default_str();
  sim->add_option("--seed", sim_args.cam.seed, "PRNG seed")->capture_default_str();
  sim->add_option("--fps", sim_args.cam.fps, "Frame rate")->capture_default_str();
  sim->add_option("--e-max", sim_args.cam.e_max, "Max exposure, seconds")
      ->capture_default_str();
  sim->add_option("--e-min", sim_args.cam.e_min, "Min exposure, seconds")
      ->capture_default_str();
  sim->add_option("--g-max", sim_args.cam.g_max, "Max gain")->capture_default_str();
  sim->add_option("--flicker", sim_args.cam.flicker_depth, "Flicker depth m in [0,1]")
      ->capture_default_str();
  sim->add_option("--mains", sim_args.cam.mains_hz, "Mains frequency, Hz")
      ->capture_default_str();
  sim->add_option("--target", sim_args.cam.target_signal, "Controller target signal E*")
      ->capture_default_str();
  sim->add_option("--ctl-alpha", sim_args.cam.controller_alpha,
                  "Controller proportional-in-log step")
      ->capture_default_str();
  sim->add_option("--read-noise", sim_args.cam.read_noise, "Read noise sigma0")
      ->capture_default_str();
  sim->add_option("--quantization", sim_args.quantization,
                  "Compression surrogate levels Q, or 'none'")
      ->capture_default_str();
  sim->add_option("--exposure-steps", sim_args.cam.exposure_steps_per_octave,
                  "Shutter ladder steps per octave")
      ->capture_default_str();
  sim->add_option("--objects", sim_args.n_objects, "Number of scene objects")
      ->capture_default_str();
  sim->add_option("--contrasts", sim_args.contrasts,
                  "Comma-separated object contrasts (overrides --objects)");
  sim->add_option("--beta", sim_args.beta, "Detector logistic steepness")
      ->capture_default_str();
  sim->add_option("--theta", sim_args.theta, "Detector SNR threshold")
      ->capture_default_str();
  sim->add_option("--ab", sim_args.ab,
                  "A/B pair on shared seeds, e.g. e_max=0.25,0.008333");
  sim->add_option("--alpha", sim_args.alpha, "Significance level for --ab compare")
      ->capture_default_str();
  add_output_options(sim, sim_args.out);
  add_config_option(sim, sim_args.config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      apply_config_file(analyze, analyze_args.config_path);
      return run_analyze(analyze_args);
    }
    if (*compare) {
      apply_config_file(compare, compare_args.config_path);
      return run_compare(compare_args);
    }
    if (*track) {
      apply_config_file(track, track_args.config_path);
      return run_track(track_args);
    }
    if (*sim) {
      apply_config_file(sim, sim_args.config_path);
      return run_simulate(sim_args);
    }
  } catch (const AlignmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
