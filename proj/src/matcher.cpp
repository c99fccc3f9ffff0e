#include "vidflux/matcher.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "vidflux/assignment.hpp"

namespace vidflux {

namespace {

void check_config(const MatchConfig& cfg) {
  if (!(cfg.iou_threshold > 0.0 && cfg.iou_threshold <= 1.0)) {
    throw std::invalid_argument("iou_threshold must be in (0, 1]");
  }
}

// Cost baseline. Eligible pairs cost (kBase - iou), ineligible pairs cost
// exactly kBase, so the minimum-cost assignment maximizes total matched IoU
// and the number of ineligible slots used does not enter the objective.
constexpr double kBase = 2.0;

}  // namespace

double iou(const BBox& a, const BBox& b) {
  const double ix = std::max(a.x, b.x);
  const double iy = std::max(a.y, b.y);
  const double ix2 = std::min(a.x + a.w, b.x + b.w);
  const double iy2 = std::min(a.y + a.h, b.y + b.h);
  const double iw = ix2 - ix;
  const double ih = iy2 - iy;
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

FrameMatchResult match_frame(const std::vector<Detection>& dets,
                             const std::vector<GroundTruthObject>& gts,
                             const MatchConfig& cfg) {
  check_config(cfg);

  FrameMatchResult result;
  if (!dets.empty()) {
    result.frame_id = dets.front().frame_id;
  } else if (!gts.empty()) {
    result.frame_id = gts.front().frame_id;
  }
  for (const auto& d : dets) {
    if (d.frame_id != result.frame_id) {
      throw std::invalid_argument("match_frame: mixed frame_ids in detections");
    }
  }
  for (const auto& g : gts) {
    if (g.frame_id != result.frame_id) {
      throw std::invalid_argument("match_frame: mixed frame_ids in inputs");
    }
  }

  const int nd = static_cast<int>(dets.size());
  const int ng = static_cast<int>(gts.size());

  auto eligible_iou = [&](int di, int gi) {
    if (cfg.class_sensitive &&
        !same_class(dets[di].class_label, gts[gi].class_label)) {
      return 0.0;
    }
    double v = iou(dets[di].bbox, gts[gi].bbox);
    return v >= cfg.iou_threshold ? v : 0.0;
  };

  if (cfg.strategy == MatchStrategy::GreedyByConfidence) {
    std::vector<int> order(nd);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return dets[a].confidence > dets[b].confidence;
    });
    std::vector<char> gt_taken(ng, 0);
    for (int di : order) {
      int best_gt = -1;
      double best_iou = 0.0;
      for (int gi = 0; gi < ng; ++gi) {
        if (gt_taken[gi]) continue;
        double v = eligible_iou(di, gi);
        if (v > best_iou) {
          best_iou = v;
          best_gt = gi;
        }
      }
      if (best_gt >= 0) {
        gt_taken[best_gt] = 1;
        result.pairs.push_back({di, best_gt, best_iou});
      }
    }
  } else if (nd > 0 && ng > 0) {
    std::vector<std::vector<double>> cost(nd, std::vector<double>(ng, kBase));
    for (int di = 0; di < nd; ++di) {
      for (int gi = 0; gi < ng; ++gi) {
        double v = eligible_iou(di, gi);
        if (v > 0.0) cost[di][gi] = kBase - v;
      }
    }
    Assignment a = solve_assignment(cost);
    for (auto [di, gi] : a.pairs) {
      if (cost[di][gi] >= kBase) continue;  // ineligible slot, not a match
      result.pairs.push_back({di, gi, kBase - cost[di][gi]});
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.det_index < b.det_index; });
  result.tp = static_cast<int>(result.pairs.size());
  result.fp = nd - result.tp;
  result.fn = ng - result.tp;
  return result;
}

TpSeries count_series(const FrameSet& fs, const MatchConfig& cfg) {
  check_config(cfg);
  TpSeries series;
  series.frame_ids.reserve(fs.frames.size());
  for (std::int64_t frame : fs.frames) {
    FrameMatchResult r = match_frame(fs.detections(frame), fs.ground_truth(frame), cfg);
    series.frame_ids.push_back(frame);
    series.tp.push_back(r.tp);
    series.gt.push_back(static_cast<int>(fs.ground_truth(frame).size()));
  }
  return series;
}

}  // namespace vidflux
