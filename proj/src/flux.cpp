#include "vidflux/flux.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "vidflux/io.hpp"

namespace vidflux {

FluxSeries fwindow(const TpSeries& series, int n) {
  if (n < 2) throw std::invalid_argument("window must be >= 2");
  if (series.size() < static_cast<std::size_t>(n)) {
    throw AlignmentError("series of length " + std::to_string(series.size()) +
                         " is shorter than window " + std::to_string(n));
  }

  FluxSeries flux;
  flux.window = n;
  const std::size_t count = series.size() - static_cast<std::size_t>(n) + 1;
  flux.start_frames.reserve(count);
  flux.values.reserve(count);

  for (std::size_t i = 0; i < count; ++i) {
    int tp_min = series.tp[i];
    int tp_max = series.tp[i];
    long gt_sum = 0;
    for (std::size_t j = i; j < i + static_cast<std::size_t>(n); ++j) {
      tp_min = std::min(tp_min, series.tp[j]);
      tp_max = std::max(tp_max, series.tp[j]);
      gt_sum += series.gt[j];
    }
    if (gt_sum == 0) {
      ++flux.skipped;
      continue;
    }
    const double gt_mean = static_cast<double>(gt_sum) / n;
    flux.start_frames.push_back(series.frame_ids[i]);
    flux.values.push_back(static_cast<double>(tp_max - tp_min) / gt_mean);
  }
  return flux;
}

FluxSeries f2(const TpSeries& series) { return fwindow(series, 2); }

FluxSummary summarize(const FluxSeries& flux) {
  if (flux.values.empty()) {
    throw AlignmentError("cannot summarize an empty fluctuation series");
  }
  FluxSummary s;
  s.window = flux.window;
  s.max = *std::max_element(flux.values.begin(), flux.values.end());
  double sum = 0.0;
  for (double v : flux.values) sum += v;
  s.mean = sum / static_cast<double>(flux.values.size());
  return s;
}

void write_flux_csv(std::ostream& out, const FluxSeries& flux) {
  out << "window_start_frame,value\n";
  for (std::size_t i = 0; i < flux.values.size(); ++i) {
    out << flux.start_frames[i] << ',' << format_double(flux.values[i]) << '\n';
  }
}

}  // namespace vidflux
