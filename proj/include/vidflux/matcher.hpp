#pragma once

#include "vidflux/types.hpp"

namespace vidflux {

enum class MatchStrategy { GreedyByConfidence, OptimalAssignment };

struct MatchConfig {
  double iou_threshold = 0.5;  // in (0, 1]
  bool class_sensitive = true;
  MatchStrategy strategy = MatchStrategy::GreedyByConfidence;
};

struct MatchPair {
  int det_index = -1;
  int gt_index = -1;
  double iou = 0.0;
};

struct FrameMatchResult {
  std::int64_t frame_id = 0;
  std::vector<MatchPair> pairs;
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

// Intersection over union; 0 for disjoint boxes.
double iou(const BBox& a, const BBox& b);

// Match one frame's detections to its ground truth, one-to-one, at
// IoU >= cfg.iou_threshold (same class when class_sensitive).
//
// GreedyByConfidence walks detections in descending confidence (ties by
// ascending index) and takes the unmatched eligible gt with the highest IoU.
// OptimalAssignment maximizes the total IoU of the matched pairs via the
// assignment solver.
FrameMatchResult match_frame(const std::vector<Detection>& dets,
                             const std::vector<GroundTruthObject>& gts,
                             const MatchConfig& cfg);

// Per-frame match over the whole FrameSet, yielding tp(i)/gt(i).
TpSeries count_series(const FrameSet& fs, const MatchConfig& cfg);

}  // namespace vidflux
