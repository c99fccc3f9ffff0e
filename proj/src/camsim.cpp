#include "vidflux/camsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "vidflux/io.hpp"
#include "vidflux/rng.hpp"

namespace vidflux {

namespace {

constexpr std::uint64_t kPhaseStream = 0x9a1e7cull;
constexpr std::uint64_t kDetectorStream = 0xde7ec7ull;
constexpr double kPi = 3.14159265358979323846;

// Compression surrogate: truncate to Q uniform levels k * (2E*/Q) like a
// codec's deadzone quantizer.
double quantize_signal(double e_signal, const CamSimConfig& cfg) {
  if (!cfg.quantization_levels) return e_signal;
  const int q = *cfg.quantization_levels;
  const double step = 2.0 * cfg.target_signal / q;
  double idx = std::floor(std::max(e_signal, 0.0) / step);
  idx = std::min(idx, static_cast<double>(q - 1));
  return idx * step;
}

}  // namespace

void CamSimConfig::validate() const {
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");
  if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");
  if (!(e_min > 0.0) || !(e_min <= e_max)) {
    throw std::invalid_argument("exposure bounds must satisfy 0 < e_min <= e_max");
  }
  if (!(g_max >= 1.0)) throw std::invalid_argument("g_max must be >= 1");
  if (!(flicker_depth >= 0.0 && flicker_depth <= 1.0)) {
    throw std::invalid_argument("flicker_depth must be in [0, 1]");
  }
  if (!(mains_hz > 0.0)) throw std::invalid_argument("mains_hz must be > 0");
  if (!(target_signal > 0.0)) throw std::invalid_argument("target_signal must be > 0");
  if (!(controller_alpha > 0.0 && controller_alpha <= 1.0)) {
    throw std::invalid_argument("controller_alpha must be in (0, 1]");
  }
  if (!(read_noise >= 0.0)) throw std::invalid_argument("read_noise must be >= 0");
  if (quantization_levels && *quantization_levels < 2) {
    throw std::invalid_argument("quantization_levels must be >= 2");
  }
  if (exposure_steps_per_octave < 1) {
    throw std::invalid_argument("exposure_steps_per_octave must be >= 1");
  }
}

void SceneConfig::validate() const {
  if (objects.empty()) throw std::invalid_argument("scene needs at least one object");
  for (const auto& o : objects) {
    if (!(o.contrast > 0.0 && o.contrast <= 1.0)) {
      throw std::invalid_argument("object contrast must be in (0, 1]");
    }
  }
  if (!(detector_beta > 0.0)) throw std::invalid_argument("detector_beta must be > 0");
  if (!std::isfinite(detector_theta)) {
    throw std::invalid_argument("detector_theta must be finite");
  }
}

SceneConfig SceneConfig::default_scene() {
  // Marginal, low-contrast objects near the detector threshold; high-contrast
  // objects saturate the detector and nothing fluctuates.
  SceneConfig scene;
  for (int j = 0; j < 8; ++j) {
    scene.objects.push_back({j + 1, 0.055 + 0.006 * j});
  }
  return scene;
}

double illumination(double t, const CamSimConfig& cfg) {
  const double s = std::sin(2.0 * kPi * cfg.mains_hz * t);
  return 1.0 + cfg.flicker_depth * s * s;
}

std::vector<double> exposure_table(const CamSimConfig& cfg) {
  std::vector<double> table;
  const double ratio = std::pow(2.0, 1.0 / cfg.exposure_steps_per_octave);
  double e = cfg.e_min;
  while (e <= cfg.e_max * (1.0 + 1e-12)) {
    table.push_back(std::min(e, cfg.e_max));
    e *= ratio;
  }
  return table;  // nonempty: e_min itself always qualifies
}

FrameSignal capture_frame(std::int64_t k, double e, double g, const CamSimConfig& cfg,
                          const SceneConfig& scene, double mains_phase) {
  const double t = static_cast<double>(k) / cfg.fps;
  const double m = cfg.flicker_depth;
  const double f = cfg.mains_hz;

  // integral of 1 + m sin^2(2 pi f tau + phase) over [t, t + e]
  const double a1 = 4.0 * kPi * f * t + 2.0 * mains_phase;
  const double a2 = a1 + 4.0 * kPi * f * e;
  const double flicker_part = 0.5 * e - (std::sin(a2) - std::sin(a1)) / (8.0 * kPi * f);
  const double sensor = g * (e + m * flicker_part);
  const double captured = quantize_signal(sensor, cfg);

  FrameSignal sig;
  sig.frame_id = k;
  sig.exposure_s = e;
  sig.gain = g;
  sig.captured = captured;
  sig.sensor = sensor;
  sig.noise = cfg.read_noise * g;
  sig.per_object_snr.reserve(scene.objects.size());
  for (const auto& obj : scene.objects) {
    double snr;
    if (sig.noise > 0.0) {
      snr = obj.contrast * captured / sig.noise;
    } else {
      snr = captured > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    sig.per_object_snr.push_back(snr);
  }
  return sig;
}

std::pair<double, double> auto_controller_step(const FrameSignal& prev,
                                               const CamSimConfig& cfg) {
  const std::vector<double> table = exposure_table(cfg);
  const double e_top = table.back();

  const double e_prev = prev.exposure_s;
  const double g_prev = prev.gain;
  const double e_star = cfg.target_signal;
  const double e_meter = prev.sensor;  // metering runs on the sensor signal

  if (e_meter <= 0.0) return {e_top, cfg.g_max};  // darkness fallback

  const double factor = std::pow(e_star / e_meter, cfg.controller_alpha);
  const double e_cmd = std::clamp(e_prev * factor, cfg.e_min, e_top);

  double e_next = e_prev;
  if (e_cmd != e_prev) {
    // Largest ladder entry <= e_cmd.
    double e_snap = table.front();
    for (double entry : table) {
      if (entry <= e_cmd * (1.0 + 1e-12)) e_snap = entry;
    }
    // Brighter steps happen immediately; dimmer steps wait until gain has no
    // trim authority left, otherwise the gain loop absorbs over-exposure
    // without shutter hunting.
    if (e_snap > e_prev || (e_snap < e_prev && g_prev <= 1.0 + 1e-12)) {
      e_next = e_snap;
    }
  }

  double g_next;
  if (e_meter < e_star && e_next == e_prev) {
    // Exposure pinned (railed or held) and still under target: gain rises.
    g_next = std::clamp(g_prev * factor, 1.0, cfg.g_max);
    // Gain exhausted while the one-step command cannot reach the next rung:
    // force the rung, otherwise the loop parks under target forever.
    if (g_next >= cfg.g_max && cfg.g_max > 1.0 && e_next < e_top) {
      for (double entry : table) {
        if (entry > e_prev * (1.0 + 1e-12)) {
          e_next = entry;
          break;
        }
      }
    }
  } else {
    // Gain never rises while exposure can move; it decays when over target.
    g_next = std::clamp(g_prev * std::min(factor, 1.0), 1.0, cfg.g_max);
  }
  return {e_next, g_next};
}

double detect_probability(double snr, const SceneConfig& scene) {
  const double z = scene.detector_beta * (snr - scene.detector_theta);
  if (z > 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

SimulationResult simulate(const CamSimConfig& cam, const SceneConfig& scene) {
  cam.validate();
  scene.validate();

  SimulationResult result;
  result.signals.reserve(cam.n_frames);

  const std::vector<double> table = exposure_table(cam);
  double e = table.front();
  double g = 1.0;
  const int n_obj = static_cast<int>(scene.objects.size());

  for (int k = 0; k < cam.n_frames; ++k) {
    const double phase =
        2.0 * kPi * split_uniform(cam.seed, kPhaseStream, static_cast<std::uint64_t>(k));
    FrameSignal sig = capture_frame(k, e, g, cam, scene, phase);

    int tp = 0;
    for (int j = 0; j < n_obj; ++j) {
      const double p = detect_probability(sig.per_object_snr[j], scene);
      const double u = split_uniform(cam.seed, kDetectorStream,
                                     static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(j));
      if (u < p) ++tp;
    }

    result.tp_series.frame_ids.push_back(k);
    result.tp_series.tp.push_back(tp);
    result.tp_series.gt.push_back(n_obj);

    std::tie(e, g) = auto_controller_step(sig, cam);
    result.signals.push_back(std::move(sig));
  }
  return result;
}

void write_signals_csv(std::ostream& out, const std::vector<FrameSignal>& signals) {
  out << "frame_id,exposure_s,gain,E,sigma\n";
  for (const auto& s : signals) {
    out << s.frame_id << ',' << format_double(s.exposure_s) << ','
        << format_double(s.gain) << ',' << format_double(s.captured) << ','
        << format_double(s.noise) << '\n';
  }
}

}  // namespace vidflux
