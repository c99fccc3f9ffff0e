#include "vidflux/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace vidflux {

bool BBox::valid() const {
  return w > 0.0 && h > 0.0 && std::isfinite(x) && std::isfinite(y) &&
         std::isfinite(w) && std::isfinite(h);
}

const std::vector<Detection>& FrameSet::detections(std::int64_t frame_id) const {
  static const std::vector<Detection> empty;
  auto it = detections_by_frame.find(frame_id);
  return it == detections_by_frame.end() ? empty : it->second;
}

const std::vector<GroundTruthObject>& FrameSet::ground_truth(
    std::int64_t frame_id) const {
  static const std::vector<GroundTruthObject> empty;
  auto it = ground_truth_by_frame.find(frame_id);
  return it == ground_truth_by_frame.end() ? empty : it->second;
}

std::string to_lower_ascii(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

bool same_class(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

FrameSet build_frameset(const std::vector<Detection>& dets,
                        const std::vector<GroundTruthObject>& gts) {
  FrameSet fs;
  for (const auto& d : dets) fs.detections_by_frame[d.frame_id].push_back(d);
  for (const auto& g : gts) fs.ground_truth_by_frame[g.frame_id].push_back(g);

  for (const auto& [frame_id, _] : fs.detections_by_frame) fs.frames.push_back(frame_id);
  for (const auto& [frame_id, _] : fs.ground_truth_by_frame) {
    if (!fs.detections_by_frame.count(frame_id)) fs.frames.push_back(frame_id);
  }
  std::sort(fs.frames.begin(), fs.frames.end());
  return fs;
}

}  // namespace vidflux
