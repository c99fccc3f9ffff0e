// Acceptance suite: one check per shipping criterion, one PASS/FAIL line
// each. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vidflux/assignment.hpp"
#include "vidflux/camsim.hpp"
#include "vidflux/flux.hpp"
#include "vidflux/io.hpp"
#include "vidflux/kalman.hpp"
#include "vidflux/manifest.hpp"
#include "vidflux/matcher.hpp"
#include "vidflux/rng.hpp"
#include "vidflux/stats.hpp"
#include "vidflux/tracker.hpp"

namespace fs = std::filesystem;
using namespace vidflux;
using oracles::TestRng;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::ostream&)> run;
};

// ------------------------------------------------------------------ 1

bool metric_oracle_equivalence(std::ostream& log) {
  TestRng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = rng.uniform_int(2, 200);
    TpSeries s;
    for (int i = 0; i < len; ++i) {
      const int gt = rng.uniform_int(0, 20);
      s.frame_ids.push_back(i);
      s.gt.push_back(gt);
      s.tp.push_back(rng.uniform_int(0, gt));
    }
    for (int n : {2, 5, 10}) {
      if (len < n) continue;
      const FluxSeries got = fwindow(s, n);
      const oracles::NaiveFlux want = oracles::naive_fwindow(s, n);
      if (got.skipped != want.skipped || got.values.size() != want.values.size()) {
        log << "shape mismatch at trial " << trial << " n=" << n;
        return false;
      }
      for (std::size_t i = 0; i < want.values.size(); ++i) {
        if (got.values[i] != want.values[i]) {
          log << "value mismatch at trial " << trial << " n=" << n << " i=" << i;
          return false;
        }
      }
    }
    const FluxSeries a = f2(s);
    const FluxSeries b = fwindow(s, 2);
    if (a.values != b.values || a.skipped != b.skipped) {
      log << "fwindow(.,2) != f2 at trial " << trial;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ 2

bool statistics_correctness(std::ostream& log) {
  for (int i = 0; i <= 200; ++i) {
    const double t = -100.0 + i;
    if (std::fabs(t_cdf(t, 1.0) - oracles::cauchy_cdf(t)) > 1e-10) {
      log << "Cauchy mismatch at t=" << t;
      return false;
    }
  }
  for (int i = 0; i <= 200; ++i) {
    const double t = -6.0 + 12.0 * i / 200.0;
    if (std::fabs(t_cdf(t, 1e5) - oracles::normal_cdf(t)) > 1e-4) {
      log << "normal-limit mismatch at t=" << t;
      return false;
    }
  }
  DiffSeries d;
  for (int i = 0; i < 50; ++i) {
    d.d.push_back(1.0);
    d.d.push_back(0.0);
  }
  const PairedTestReport r = paired_t_test(d, 0.01);
  if (std::fabs(r.t_stat - 9.9499) > 1e-3) {
    log << "t_stat " << r.t_stat << " != 9.9499 +- 1e-3";
    return false;
  }
  if (!r.reject_null) {
    log << "interleaved series not rejected at alpha=0.01";
    return false;
  }
  return true;
}

// ------------------------------------------------------------------ 3

bool assignment_optimality(std::ostream& log) {
  TestRng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = rng.uniform_int(1, 7);
    const int n = rng.uniform_int(1, 7);
    // integer costs scaled by 1/256 keep every partial sum exact in a double,
    // so "exact cost equality" is meaningful
    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (auto& row : cost) {
      for (auto& c : row) c = rng.uniform_int(0, 2048) / 256.0;
    }
    const Assignment got = solve_assignment(cost);
    const double want = oracles::brute_force_assignment_cost(cost);
    if (got.total_cost != want) {
      log << "cost mismatch at trial " << trial << ": " << got.total_cost << " vs " << want;
      return false;
    }
    if (got.pairs.size() != static_cast<std::size_t>(std::min(m, n))) {
      log << "pair count mismatch at trial " << trial;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ 4

// Independent greedy re-derivation: highest confidence first (stable order),
// best eligible unmatched gt by IoU.
FrameMatchResult naive_greedy(const std::vector<Detection>& dets,
                              const std::vector<GroundTruthObject>& gts,
                              const MatchConfig& cfg) {
  FrameMatchResult r;
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dets[a].confidence > dets[b].confidence; });
  std::vector<char> used(gts.size(), 0);
  for (int di : order) {
    int best = -1;
    double best_iou = 0.0;
    for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
      if (used[gi]) continue;
      if (cfg.class_sensitive && !same_class(dets[di].class_label, gts[gi].class_label)) {
        continue;
      }
      const double v = iou(dets[di].bbox, gts[gi].bbox);
      if (v >= cfg.iou_threshold && v > best_iou) {
        best_iou = v;
        best = gi;
      }
    }
    if (best >= 0) {
      used[best] = 1;
      r.pairs.push_back({di, best, best_iou});
    }
  }
  r.tp = static_cast<int>(r.pairs.size());
  return r;
}

bool matching_oracle(std::ostream& log) {
  TestRng rng(104);
  MatchConfig greedy_cfg;
  MatchConfig optimal_cfg;
  optimal_cfg.strategy = MatchStrategy::OptimalAssignment;

  for (int trial = 0; trial < 500; ++trial) {
    const int nd = rng.uniform_int(0, 5);
    const int ng = rng.uniform_int(0, 5);
    std::vector<Detection> dets;
    std::vector<GroundTruthObject> gts;
    for (int i = 0; i < nd; ++i) {
      Detection d;
      d.frame_id = 0;
      d.bbox = {rng.uniform(0, 25), rng.uniform(0, 25), rng.uniform(2, 14), rng.uniform(2, 14)};
      d.class_label = rng.uniform() < 0.7 ? "car" : "person";
      d.confidence = rng.uniform();
      dets.push_back(d);
    }
    for (int i = 0; i < ng; ++i) {
      GroundTruthObject g;
      g.frame_id = 0;
      g.object_id = i + 1;
      g.bbox = {rng.uniform(0, 25), rng.uniform(0, 25), rng.uniform(2, 14), rng.uniform(2, 14)};
      g.class_label = rng.uniform() < 0.7 ? "car" : "person";
      gts.push_back(g);
    }

    const FrameMatchResult opt = match_frame(dets, gts, optimal_cfg);
    const FrameMatchResult grd = match_frame(dets, gts, greedy_cfg);
    const oracles::BestMatching oracle =
        oracles::exhaustive_best_matching(dets, gts, optimal_cfg);
    const FrameMatchResult greedy_ref = naive_greedy(dets, gts, greedy_cfg);

    if (opt.tp != oracle.pairs) {
      log << "optimal tp " << opt.tp << " != oracle " << oracle.pairs << " at trial " << trial;
      return false;
    }
    if (grd.tp != greedy_ref.tp) {
      log << "greedy tp " << grd.tp << " != reference " << greedy_ref.tp << " at trial "
          << trial;
      return false;
    }
    double opt_iou = 0.0, grd_iou = 0.0;
    for (const auto& p : opt.pairs) opt_iou += p.iou;
    for (const auto& p : grd.pairs) grd_iou += p.iou;
    if (std::fabs(opt_iou - oracle.total_iou) > 1e-9) {
      log << "optimal total IoU " << opt_iou << " != oracle " << oracle.total_iou;
      return false;
    }
    if (opt_iou < grd_iou - 1e-9) {
      log << "optimal total IoU " << opt_iou << " < greedy " << grd_iou << " at trial "
          << trial;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ 5

FrameSet dropout_scene(int n_frames, int n_boxes, double p, std::uint64_t seed) {
  std::vector<Detection> dets;
  for (int f = 0; f < n_frames; ++f) {
    for (int b = 0; b < n_boxes; ++b) {
      const bool pinned = b == 0 && (f == 0 || f == n_frames - 1);
      if (!pinned && split_uniform(seed, 0xd20ull, f, b) < p) continue;
      Detection d;
      d.frame_id = f;
      d.bbox = {100.0 * b, 0, 20, 20};
      d.class_label = "car";
      d.confidence = 0.9;
      dets.push_back(d);
    }
  }
  return build_frameset(dets, {});
}

bool tracker_lifecycle(std::ostream& log) {
  {
    std::vector<Detection> dets;
    for (int f = 0; f < 30; ++f) {
      Detection d;
      d.frame_id = f;
      d.bbox = {50, 50, 20, 20};
      d.class_label = "car";
      d.confidence = 0.9;
      dets.push_back(d);
    }
    const auto churn = track_sequence(build_frameset(dets, {}), TrackerConfig{}).churn;
    if (churn.total_track_ids != 1) {
      log << "static box gave " << churn.total_track_ids << " ids, want 1";
      return false;
    }
  }
  {
    std::vector<Detection> dets;
    for (int f = 0; f < 20; ++f) {
      if (f == 10) continue;
      Detection d;
      d.frame_id = f;
      d.bbox = {50, 50, 20, 20};
      d.class_label = "car";
      d.confidence = 0.9;
      dets.push_back(d);
    }
    TrackerConfig cfg;
    cfg.max_age = 0;
    const auto churn = track_sequence(build_frameset(dets, {}), cfg).churn;
    if (churn.total_track_ids != 2) {
      log << "one-frame dropout with max_age=0 gave " << churn.total_track_ids
          << " ids, want 2";
      return false;
    }
  }
  const std::vector<double> ps = {0.0, 0.05, 0.1, 0.2};
  std::vector<double> means;
  for (double p : ps) {
    double total = 0.0;
    for (int seed = 0; seed < 50; ++seed) {
      total += track_sequence(dropout_scene(100, 6, p, 7000 + seed), TrackerConfig{})
                   .churn.total_track_ids;
    }
    means.push_back(total / 50.0);
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] < means[i - 1]) {
      log << "mean ids not monotone: p=" << ps[i] << " gives " << means[i] << " < "
          << means[i - 1];
      return false;
    }
  }
  log << "mean ids over dropout grid: " << means[0] << ", " << means[1] << ", " << means[2]
      << ", " << means[3];
  return true;
}

// ------------------------------------------------------------------ 6

bool kalman_sanity(std::ostream& log) {
  KalmanConfig cfg;
  {
    KalmanState st = kalman_init(BBox{5, 6, 20, 10}, cfg);
    st = kalman_predict(st, cfg);
    const KalmanState updated = kalman_update(st, state_to_bbox(st), cfg);
    const double drift = (updated.mean - st.mean).cwiseAbs().maxCoeff();
    if (drift > 1e-9) {
      log << "zero-innovation drift " << drift;
      return false;
    }
  }
  {
    TestRng rng(106);
    KalmanState st = kalman_init(BBox{0, 0, 10, 10}, cfg);
    for (int k = 0; k < 10000; ++k) {
      st = kalman_predict(st, cfg);
      if (rng.uniform() < 0.7) {
        st = kalman_update(st,
                           BBox{rng.uniform(-50, 50), rng.uniform(-50, 50),
                                rng.uniform(5, 30), rng.uniform(5, 30)},
                           cfg);
      }
      const double asym = (st.cov - st.cov.transpose()).cwiseAbs().maxCoeff();
      if (asym > 1e-9) {
        log << "covariance asymmetry " << asym << " at step " << k;
        return false;
      }
      if (k % 200 == 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 7, 7>> es(st.cov);
        if (es.eigenvalues().minCoeff() < -1e-9) {
          log << "covariance not PSD at step " << k;
          return false;
        }
      }
    }
  }
  {
    // repeated identical measurements of a static box, track born on its
    // first detection (the tracker lifecycle)
    const BBox target{100, 50, 40, 80};
    KalmanState st = kalman_init(target, cfg);
    for (int k = 0; k < 20; ++k) {
      st = kalman_predict(st, cfg);
      st = kalman_update(st, target, cfg);
    }
    const Eigen::Vector4d z = bbox_to_measurement(target);
    const double residual =
        std::max({std::fabs(st.mean(0) - z(0)), std::fabs(st.mean(1) - z(1)),
                  std::fabs(st.mean(2) / z(2) - 1.0), std::fabs(st.mean(3) / z(3) - 1.0)});
    if (residual > 1e-3) {
      log << "static-box residual " << residual << " after 20 updates";
      return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- 7 & 8

double max_f2(const TpSeries& s) {
  const FluxSeries flux = f2(s);
  double m = 0.0;
  for (double v : flux.values) m = std::max(m, v);
  return m;
}

double mean_f2(const TpSeries& s) {
  const FluxSeries flux = f2(s);
  if (flux.values.empty()) return 0.0;
  double t = 0.0;
  for (double v : flux.values) t += v;
  return t / flux.values.size();
}

bool rejects(const TpSeries& a, const TpSeries& b) {
  return paired_t_test(diff_series(a, b), 0.01).reject_null;
}

bool exposure_direction(std::ostream& log) {
  const SceneConfig scene = SceneConfig::default_scene();
  int good = 0;
  for (int seed = 0; seed < 50; ++seed) {
    CamSimConfig base;  // defaults: m=0.3, 1000 frames
    base.seed = 1000 + seed;
    CamSimConfig long_cap = base;
    long_cap.e_max = 0.25;
    CamSimConfig short_cap = base;
    short_cap.e_max = 1.0 / 120.0;

    const TpSeries tp_long = simulate(long_cap, scene).tp_series;
    const TpSeries tp_short = simulate(short_cap, scene).tp_series;
    if (max_f2(tp_long) > max_f2(tp_short) && rejects(tp_long, tp_short)) ++good;
  }
  log << good << "/50 seeds directional";
  return good >= 45;
}

bool flicker_and_compression_direction(std::ostream& log) {
  const SceneConfig scene = SceneConfig::default_scene();

  int flicker_good = 0;
  double flicker_on_mean = 0.0, flicker_off_mean = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    CamSimConfig with;
    with.seed = 2000 + seed;
    with.flicker_depth = 0.3;
    CamSimConfig without = with;
    without.flicker_depth = 0.0;
    const TpSeries tp_with = simulate(with, scene).tp_series;
    const TpSeries tp_without = simulate(without, scene).tp_series;
    flicker_on_mean += mean_f2(tp_with);
    flicker_off_mean += mean_f2(tp_without);
    if (rejects(tp_without, tp_with)) ++flicker_good;
  }
  if (flicker_on_mean < flicker_off_mean) {
    log << "flicker lowered mean F2: " << flicker_on_mean / 50 << " vs "
        << flicker_off_mean / 50;
    return false;
  }
  if (flicker_good < 45) {
    log << "flicker rejection only " << flicker_good << "/50";
    return false;
  }

  int q_good = 0;
  double q_on_mean = 0.0, q_off_mean = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    CamSimConfig plain;
    plain.seed = 3000 + seed;
    CamSimConfig quantized = plain;
    quantized.quantization_levels = 32;
    const TpSeries tp_plain = simulate(plain, scene).tp_series;
    const TpSeries tp_q = simulate(quantized, scene).tp_series;
    q_on_mean += mean_f2(tp_q);
    q_off_mean += mean_f2(tp_plain);
    if (rejects(tp_plain, tp_q)) ++q_good;
  }
  if (q_on_mean < q_off_mean) {
    log << "quantization lowered mean F2: " << q_on_mean / 50 << " vs " << q_off_mean / 50;
    return false;
  }
  if (q_good < 45) {
    log << "quantization rejection only " << q_good << "/50";
    return false;
  }
  log << "flicker " << flicker_good << "/50, quantization " << q_good << "/50";
  return true;
}

// ------------------------------------------------------------------ 9

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(VIDFLUX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status >= 0 && WEXITSTATUS(status) == 0;
}

bool cli_determinism(std::ostream& log) {
  const fs::path root = fs::temp_directory_path() / "vidflux_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  // small fixture logs
  std::ostringstream gt, det_a, det_b;
  for (int f = 0; f < 30; ++f) {
    for (int b = 0; b < 3; ++b) {
      gt << f << ',' << (b + 1) << ',' << 100 * b << ",0,20,20,car\n";
      det_a << f << ",car,0.9," << 100 * b << ",0,20,20\n";
      if (!(b == 2 && f % 3 == 1)) det_b << f << ",car,0.9," << 100 * b << ",0,20,20\n";
    }
  }
  write_file((root / "gt.csv").string(), gt.str());
  write_file((root / "a.csv").string(), det_a.str());
  write_file((root / "b.csv").string(), det_b.str());

  const std::string gt_s = (root / "gt.csv").string();
  const std::string a_s = (root / "a.csv").string();
  const std::string b_s = (root / "b.csv").string();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "analyze --detections " + b_s + " --ground-truth " + gt_s},
      {"compare", "compare --a " + a_s + " --b " + b_s + " --ground-truth " + gt_s},
      {"track", "track --detections " + b_s + " --ground-truth " + gt_s},
      {"simulate", "simulate --frames 400 --seed 11 --quantization 32"},
      {"simulate_ab", "simulate --frames 400 --seed 12 --ab e_max=0.25,0.008333"},
  };

  for (const auto& [name, args] : commands) {
    const fs::path d1 = root / (name + "_run1");
    const fs::path d2 = root / (name + "_run2");
    fs::create_directories(d1);
    fs::create_directories(d2);
    if (!run_cli(args + " --out-dir " + d1.string()) ||
        !run_cli(args + " --out-dir " + d2.string())) {
      log << name << " failed to run";
      return false;
    }
    int artifacts = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
      const fs::path other = d2 / entry.path().filename();
      if (!fs::exists(other)) {
        log << name << ": " << entry.path().filename() << " missing in rerun";
        return false;
      }
      if (content_digest(slurp(entry.path())) != content_digest(slurp(other))) {
        log << name << ": " << entry.path().filename() << " differs between reruns";
        return false;
      }
      ++artifacts;
    }
    if (artifacts == 0) {
      log << name << " wrote no artifacts";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1. metric oracle equivalence (f2/fwindow vs naive, <5s)", metric_oracle_equivalence},
      {"2. statistics correctness (t_cdf closed forms, paired t)", statistics_correctness},
      {"3. assignment optimality (500 random matrices vs brute force, <10s)",
       assignment_optimality},
      {"4. matching oracle (both strategies, 500 random frames)", matching_oracle},
      {"5. tracker lifecycle and monotone churn", tracker_lifecycle},
      {"6. kalman sanity (innovation, PSD, convergence)", kalman_sanity},
      {"7. exposure-cap directional reproduction (<60s)", exposure_direction},
      {"8. flicker and compression directional reproduction", flicker_and_compression_direction},
      {"9. CLI determinism (byte-identical reruns)", cli_determinism},
  };

  const std::vector<double> budgets_s = {5.0, 0.0, 10.0, 0.0, 0.0, 0.0, 60.0, 0.0, 0.0};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budgets_s[i] > 0.0 && seconds > budgets_s[i]) {
      ok = false;
      detail << " [over time budget " << budgets_s[i] << "s]";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criteria[i].name;
    std::cout << " (" << std::fixed << std::setprecision(2) << seconds << "s)";
    if (!detail.str().empty()) std::cout << " -- " << detail.str();
    std::cout << std::endl;
    if (!ok) ++failures;
  }
  return failures;
}
