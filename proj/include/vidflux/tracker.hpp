#pragma once

#include <iosfwd>
#include <optional>

#include "vidflux/kalman.hpp"
#include "vidflux/types.hpp"

namespace vidflux {

enum class TrackStatus { Tentative, Confirmed, Dead };

struct TrackerConfig {
  int max_age = 1;        // frames a track survives without a match
  int min_hits = 3;       // hits needed before a track is confirmed
  double iou_gate = 0.3;  // association gate on predicted-box IoU
  KalmanConfig kalman;
};

struct Track {
  int id = 0;  // assigned in creation order starting at 1
  KalmanState state;
  int hits = 0;
  int age_since_update = 0;
  TrackStatus status = TrackStatus::Tentative;
};

// Per-frame snapshot of a confirmed, matched track (MOT-style output row).
struct TrackRecord {
  std::int64_t frame_id = 0;
  int track_id = 0;
  BBox bbox;
};

struct ChurnReport {
  int total_track_ids = 0;      // every id ever created
  int confirmed_track_ids = 0;  // ids that reached Confirmed
  std::optional<int> ground_truth_tracks;
  std::optional<double> churn_ratio;  // confirmed / ground-truth tracks
};

struct TrackingResult {
  std::vector<Track> tracks;  // final state of every track ever created
  std::vector<TrackRecord> records;
  ChurnReport churn;
};

// SORT loop over the FrameSet's detections: predict, associate by IoU cost
// via the assignment solver, update matched tracks, spawn tracks for
// unmatched detections, retire tracks older than max_age. Walks the
// contiguous frame range; a gap in the log is a frame with no detections.
TrackingResult track_sequence(const FrameSet& fs, const TrackerConfig& cfg);

// Same, with ground-truth identities supplied for the churn ratio.
TrackingResult track_sequence(const FrameSet& fs, const TrackerConfig& cfg,
                              const std::vector<GroundTruthObject>& gts);

// Track CSV: `frame_id,track_id,x,y,w,h`.
void write_tracks_csv(std::ostream& out, const std::vector<TrackRecord>& records);

}  // namespace vidflux
