#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vidflux {

// Thrown when two series that must be aligned (same length / enough frames)
// are not. CLI maps this to exit code 3.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Axis-aligned box, top-left corner plus size, pixel units.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  bool valid() const;
};

struct Detection {
  std::int64_t frame_id = 0;
  BBox bbox;
  std::string class_label;
  double confidence = 0.0;
};

struct GroundTruthObject {
  std::int64_t frame_id = 0;
  std::int64_t object_id = 0;  // persistent identity across frames
  BBox bbox;
  std::string class_label;
};

// Per-video container: ordered frame ids plus the records observed on each.
// Frames mentioned by neither input are absent; frames with records on one
// side only map to an empty list on the other.
struct FrameSet {
  std::vector<std::int64_t> frames;  // strictly increasing
  std::map<std::int64_t, std::vector<Detection>> detections_by_frame;
  std::map<std::int64_t, std::vector<GroundTruthObject>> ground_truth_by_frame;

  const std::vector<Detection>& detections(std::int64_t frame_id) const;
  const std::vector<GroundTruthObject>& ground_truth(std::int64_t frame_id) const;
};

// tp(i)/gt(i) per frame: the input of every fluctuation metric.
struct TpSeries {
  std::vector<std::int64_t> frame_ids;
  std::vector<int> tp;
  std::vector<int> gt;

  std::size_t size() const { return frame_ids.size(); }
};

std::string to_lower_ascii(std::string s);

// Class labels compare case-insensitively (detectors disagree on casing).
bool same_class(const std::string& a, const std::string& b);

FrameSet build_frameset(const std::vector<Detection>& dets,
                        const std::vector<GroundTruthObject>& gts);

}  // namespace vidflux
