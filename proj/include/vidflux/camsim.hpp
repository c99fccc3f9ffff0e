#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "vidflux/types.hpp"

namespace vidflux {

// Camera AUTO-parameter loop configuration. The user (like on a real IP
// camera) fixes only the maxima; exposure and gain move inside them.
struct CamSimConfig {
  double fps = 30.0;
  int n_frames = 1000;
  double e_max = 0.25;        // max exposure, seconds
  double e_min = 1.0 / 8000;  // min exposure, seconds
  double g_max = 8.0;         // max gain, >= 1
  double flicker_depth = 0.3; // m in [0,1]; 0 = flicker-free
  double mains_hz = 60.0;     // flicker at 2 x mains
  double target_signal = 1.0; // E*, controller setpoint
  double controller_alpha = 0.5;  // proportional-in-log step, (0, 1]
  double read_noise = 0.02;   // sigma0; per-frame noise level is sigma0 * gain
  std::optional<int> quantization_levels;  // compression surrogate, >= 2
  std::uint64_t seed = 1;
  // Shutter speeds form a discrete ladder e_min * 2^(k/steps) capped at
  // e_max; cameras expose only at tabulated speeds.
  int exposure_steps_per_octave = 3;

  void validate() const;  // throws std::invalid_argument
};

struct SceneObject {
  std::int64_t object_id = 0;
  double contrast = 1.0;  // in (0, 1]
};

// Static scene plus the surrogate detector: an object is detected with
// probability logistic(beta * (snr - theta)).
struct SceneConfig {
  std::vector<SceneObject> objects;
  double detector_beta = 8.0;
  double detector_theta = 1.0;

  void validate() const;
  static SceneConfig default_scene();
};

struct FrameSignal {
  std::int64_t frame_id = 0;
  double exposure_s = 0.0;
  double gain = 1.0;
  double captured = 0.0;  // E_k as the analytics sees it (quantized when enabled)
  double sensor = 0.0;    // pre-quantization sensor signal; the AUTO loop meters
                          // this, compression happens downstream of metering
  double noise = 0.0;     // sigma_k = sigma0 * gain
  std::vector<double> per_object_snr;
};

// Flicker waveform: L(t) = 1 + m * sin^2(2 pi mains t), periodic at 2 x mains.
double illumination(double t, const CamSimConfig& cfg);

// The shutter ladder (ascending, first entry e_min, last <= e_max).
std::vector<double> exposure_table(const CamSimConfig& cfg);

// Closed-form captured signal: gain times the integral of the flicker
// waveform over [t_k, t_k + e] with t_k = k / fps. `mains_phase` (radians)
// shifts the flicker relative to the frame clock; the mains grid and the
// camera clock are unsynchronized oscillators, so simulate() draws it per
// frame from the seeded PRNG. Phase only enters through the m term.
FrameSignal capture_frame(std::int64_t k, double e, double g, const CamSimConfig& cfg,
                          const SceneConfig& scene, double mains_phase = 0.0);

// One controller step from the previous frame's signal: exposure first
// (multiplicative in log, snapped to the shutter ladder; stepping down waits
// for gain to return to 1), then gain when exposure is pinned and the frame
// is still under target. E_prev <= 0 falls back to full exposure and gain.
std::pair<double, double> auto_controller_step(const FrameSignal& prev,
                                               const CamSimConfig& cfg);

double detect_probability(double snr, const SceneConfig& scene);

struct SimulationResult {
  std::vector<FrameSignal> signals;
  TpSeries tp_series;  // tp = detected count, gt = number of scene objects
};

// Closed-loop run: capture, sample detections, step the controller.
// Deterministic for a fixed seed; detector draws are split per
// (frame, object) so extending n_frames never changes earlier frames.
SimulationResult simulate(const CamSimConfig& cam, const SceneConfig& scene);

// CSV: `frame_id,exposure_s,gain,E,sigma`.
void write_signals_csv(std::ostream& out, const std::vector<FrameSignal>& signals);

}  // namespace vidflux
