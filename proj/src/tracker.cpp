#include "vidflux/tracker.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "vidflux/assignment.hpp"
#include "vidflux/io.hpp"
#include "vidflux/matcher.hpp"

namespace vidflux {

namespace {

void check_config(const TrackerConfig& cfg) {
  if (cfg.max_age < 0) throw std::invalid_argument("max_age must be >= 0");
  if (cfg.min_hits < 1) throw std::invalid_argument("min_hits must be >= 1");
  if (!(cfg.iou_gate > 0.0 && cfg.iou_gate <= 1.0)) {
    throw std::invalid_argument("iou_gate must be in (0, 1]");
  }
}

constexpr double kBase = 2.0;  // cost of a gated-out pair; eligible cost is 1 - iou

}  // namespace

TrackingResult track_sequence(const FrameSet& fs, const TrackerConfig& cfg) {
  check_config(cfg);

  TrackingResult result;
  std::vector<Track> live;
  int next_id = 1;
  if (fs.frames.empty()) return result;

  // A gap in the log is a frame with no detections, and an undetected
  // object's track must age there, so walk the contiguous frame range.
  for (std::int64_t frame = fs.frames.front(); frame <= fs.frames.back(); ++frame) {
    const auto& dets = fs.detections(frame);
    const int nd = static_cast<int>(dets.size());
    const int nt = static_cast<int>(live.size());

    // Predict every live track into this frame.
    for (auto& tr : live) {
      tr.state = kalman_predict(tr.state, cfg.kalman);
      tr.age_since_update += 1;
    }

    // Associate predicted boxes with detections; cost = 1 - IoU, pairs below
    // the gate are priced so they never beat an eligible pair.
    std::vector<char> det_matched(nd, 0);
    if (nt > 0 && nd > 0) {
      std::vector<std::vector<double>> cost(nt, std::vector<double>(nd, kBase));
      std::vector<std::vector<double>> overlap(nt, std::vector<double>(nd, 0.0));
      for (int ti = 0; ti < nt; ++ti) {
        const BBox pred = state_to_bbox(live[ti].state);
        for (int di = 0; di < nd; ++di) {
          const double v = iou(pred, dets[di].bbox);
          overlap[ti][di] = v;
          if (v >= cfg.iou_gate) cost[ti][di] = 1.0 - v;
        }
      }
      Assignment a = solve_assignment(cost);
      for (auto [ti, di] : a.pairs) {
        if (overlap[ti][di] < cfg.iou_gate) continue;
        Track& tr = live[ti];
        tr.state = kalman_update(tr.state, dets[di].bbox, cfg.kalman);
        tr.hits += 1;
        tr.age_since_update = 0;
        if (tr.status == TrackStatus::Tentative && tr.hits >= cfg.min_hits) {
          tr.status = TrackStatus::Confirmed;
        }
        det_matched[di] = 1;
      }
    }

    // Unmatched detections spawn tentative tracks.
    for (int di = 0; di < nd; ++di) {
      if (det_matched[di]) continue;
      Track tr;
      tr.id = next_id++;
      tr.state = kalman_init(dets[di].bbox, cfg.kalman);
      tr.hits = 1;
      tr.age_since_update = 0;
      tr.status = tr.hits >= cfg.min_hits ? TrackStatus::Confirmed : TrackStatus::Tentative;
      live.push_back(tr);
    }

    // Emit confirmed tracks matched in this frame, in id order.
    std::vector<const Track*> emitted;
    for (const auto& tr : live) {
      if (tr.status == TrackStatus::Confirmed && tr.age_since_update == 0) {
        emitted.push_back(&tr);
      }
    }
    std::sort(emitted.begin(), emitted.end(),
              [](const Track* a, const Track* b) { return a->id < b->id; });
    for (const Track* tr : emitted) {
      result.records.push_back({frame, tr->id, state_to_bbox(tr->state)});
    }

    // Retire tracks that outlived max_age.
    auto it = live.begin();
    while (it != live.end()) {
      if (it->age_since_update > cfg.max_age) {
        it->status = TrackStatus::Dead;
        result.tracks.push_back(*it);
        it = live.erase(it);
      } else {
        ++it;
      }
    }
  }

  for (const auto& tr : live) result.tracks.push_back(tr);
  std::sort(result.tracks.begin(), result.tracks.end(),
            [](const Track& a, const Track& b) { return a.id < b.id; });

  result.churn.total_track_ids = static_cast<int>(result.tracks.size());
  for (const auto& tr : result.tracks) {
    // hits reaching min_hits is exactly "was ever confirmed", also for tracks
    // that died later.
    if (tr.hits >= cfg.min_hits) result.churn.confirmed_track_ids += 1;
  }
  return result;
}

TrackingResult track_sequence(const FrameSet& fs, const TrackerConfig& cfg,
                              const std::vector<GroundTruthObject>& gts) {
  TrackingResult result = track_sequence(fs, cfg);
  std::set<std::int64_t> ids;
  for (const auto& g : gts) ids.insert(g.object_id);
  result.churn.ground_truth_tracks = static_cast<int>(ids.size());
  if (!ids.empty()) {
    result.churn.churn_ratio =
        static_cast<double>(result.churn.confirmed_track_ids) / static_cast<double>(ids.size());
  }
  return result;
}

void write_tracks_csv(std::ostream& out, const std::vector<TrackRecord>& records) {
  out << "frame_id,track_id,x,y,w,h\n";
  for (const auto& r : records) {
    out << r.frame_id << ',' << r.track_id << ',' << format_double(r.bbox.x) << ','
        << format_double(r.bbox.y) << ',' << format_double(r.bbox.w) << ','
        << format_double(r.bbox.h) << '\n';
  }
}

}  // namespace vidflux
