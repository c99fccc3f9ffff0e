#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vidflux/types.hpp"

namespace vidflux {

enum class LogFormat { Jsonl, Csv };

// Malformed input; carries the 1-based line number and the offending field.
// CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Detection CSV: `frame_id,class,confidence,x,y,w,h`, header optional.
// Detection JSONL: one object per line, keys `frame`, `class`, `conf`,
// `bbox` = [x, y, w, h].
std::vector<Detection> parse_detection_log(std::istream& in, LogFormat format);
std::vector<Detection> parse_detection_log(const std::string& text, LogFormat format);

// Ground-truth CSV (MOT-style): `frame_id,object_id,x,y,w,h,class`.
std::vector<GroundTruthObject> parse_ground_truth(std::istream& in);
std::vector<GroundTruthObject> parse_ground_truth(const std::string& text);

// TpSeries CSV: `frame_id,tp,gt`.
TpSeries parse_tp_series(std::istream& in);
TpSeries parse_tp_series(const std::string& text);

void write_detection_csv(std::ostream& out, const std::vector<Detection>& dets);
void write_detection_jsonl(std::ostream& out, const std::vector<Detection>& dets);
void write_ground_truth_csv(std::ostream& out, const std::vector<GroundTruthObject>& gts);
void write_tp_series_csv(std::ostream& out, const TpSeries& series);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

std::string read_file(const std::string& path);  // throws ParseError if unreadable
void write_file(const std::string& path, const std::string& content);

}  // namespace vidflux
