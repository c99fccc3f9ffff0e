#pragma once

#include <iosfwd>

#include "vidflux/types.hpp"

namespace vidflux {

// Sliding-window fluctuation values over a TpSeries. One value per window
// start; windows whose mean ground truth is zero are skipped (the ratio is
// undefined there) and counted in `skipped`.
struct FluxSeries {
  int window = 2;
  std::vector<std::int64_t> start_frames;  // frame_id at each kept window start
  std::vector<double> values;
  std::size_t skipped = 0;
};

struct FluxSummary {
  double max = 0.0;
  double mean = 0.0;
  int window = 2;
};

// F2: |tp(i) - tp(i+1)| / mean(gt(i), gt(i+1)) for each consecutive pair.
FluxSeries f2(const TpSeries& series);

// Generalized moving window of length n >= 2, stride 1:
// (max tp - min tp) / mean(gt) over the window. n=2 reproduces F2 and
// n=10 reproduces F10.
FluxSeries fwindow(const TpSeries& series, int n);

// Max and mean of the kept window values. Values are plain ratios;
// percentages are a presentation concern (value * 100).
FluxSummary summarize(const FluxSeries& flux);

// CSV emission: `window_start_frame,value`.
void write_flux_csv(std::ostream& out, const FluxSeries& flux);

}  // namespace vidflux
