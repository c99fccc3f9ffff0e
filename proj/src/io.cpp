#include "vidflux/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace vidflux {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int_field(const std::string& raw, std::size_t line,
                             const std::string& field) {
  const std::string s = trim(raw);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, field, "expected integer, got \"" + raw + "\"");
  }
  return value;
}

double parse_double_field(const std::string& raw, std::size_t line,
                          const std::string& field) {
  const std::string s = trim(raw);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(line, field, "expected finite number, got \"" + raw + "\"");
  }
  return value;
}

BBox parse_bbox_fields(const std::string& xs, const std::string& ys,
                       const std::string& ws, const std::string& hs,
                       std::size_t line) {
  BBox b;
  b.x = parse_double_field(xs, line, "x");
  b.y = parse_double_field(ys, line, "y");
  b.w = parse_double_field(ws, line, "w");
  b.h = parse_double_field(hs, line, "h");
  if (b.w <= 0.0) throw ParseError(line, "w", "box width must be > 0");
  if (b.h <= 0.0) throw ParseError(line, "h", "box height must be > 0");
  return b;
}

// Every CSV format here leads with a frame_id column; only that exact name
// marks a header. Anything else on line 1 is data and parses (or errors) as
// such.
bool looks_like_header(const std::string& line) {
  auto fields = split_csv(line);
  if (fields.empty()) return false;
  return same_class(trim(fields[0]), "frame_id");
}

// Iterates non-empty lines, tracking 1-based line numbers.
template <typename Fn>
void for_each_line(std::istream& in, bool skip_header, Fn fn) {
  std::string line;
  std::size_t lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (first_content) {
      first_content = false;
      if (skip_header && looks_like_header(line)) continue;
    }
    fn(line, lineno);
  }
}

Detection parse_detection_csv_line(const std::string& line, std::size_t lineno) {
  auto f = split_csv(line);
  if (f.size() != 7) {
    throw ParseError(lineno, "record",
                     "expected 7 fields (frame_id,class,confidence,x,y,w,h), got " +
                         std::to_string(f.size()));
  }
  Detection d;
  d.frame_id = parse_int_field(f[0], lineno, "frame_id");
  if (d.frame_id < 0) throw ParseError(lineno, "frame_id", "frame_id must be >= 0");
  d.class_label = trim(f[1]);
  if (d.class_label.empty()) throw ParseError(lineno, "class", "class label is empty");
  d.confidence = parse_double_field(f[2], lineno, "confidence");
  if (d.confidence < 0.0 || d.confidence > 1.0) {
    throw ParseError(lineno, "confidence", "confidence must be in [0,1]");
  }
  d.bbox = parse_bbox_fields(f[3], f[4], f[5], f[6], lineno);
  return d;
}

Detection parse_detection_jsonl_line(const std::string& line, std::size_t lineno) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(lineno, "record", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(lineno, "record", "expected a JSON object");
  for (const char* key : {"frame", "class", "conf", "bbox"}) {
    if (!j.contains(key)) throw ParseError(lineno, key, "missing key");
  }
  Detection d;
  try {
    d.frame_id = j["frame"].get<std::int64_t>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(lineno, "frame", "expected integer");
  }
  if (d.frame_id < 0) throw ParseError(lineno, "frame", "frame must be >= 0");
  if (!j["class"].is_string()) throw ParseError(lineno, "class", "expected string");
  d.class_label = j["class"].get<std::string>();
  if (!j["conf"].is_number()) throw ParseError(lineno, "conf", "expected number");
  d.confidence = j["conf"].get<double>();
  if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
    throw ParseError(lineno, "conf", "confidence must be in [0,1]");
  }
  const auto& bb = j["bbox"];
  if (!bb.is_array() || bb.size() != 4 || !bb[0].is_number() || !bb[1].is_number() ||
      !bb[2].is_number() || !bb[3].is_number()) {
    throw ParseError(lineno, "bbox", "expected [x,y,w,h]");
  }
  d.bbox = BBox{bb[0].get<double>(), bb[1].get<double>(), bb[2].get<double>(),
                bb[3].get<double>()};
  if (!d.bbox.valid()) throw ParseError(lineno, "bbox", "box must have w,h > 0 and finite coordinates");
  return d;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::vector<Detection> parse_detection_log(std::istream& in, LogFormat format) {
  std::vector<Detection> dets;
  if (format == LogFormat::Csv) {
    for_each_line(in, /*skip_header=*/true, [&](const std::string& line, std::size_t n) {
      dets.push_back(parse_detection_csv_line(line, n));
    });
  } else {
    for_each_line(in, /*skip_header=*/false, [&](const std::string& line, std::size_t n) {
      dets.push_back(parse_detection_jsonl_line(line, n));
    });
  }
  return dets;
}

std::vector<Detection> parse_detection_log(const std::string& text, LogFormat format) {
  std::istringstream in(text);
  return parse_detection_log(in, format);
}

std::vector<GroundTruthObject> parse_ground_truth(std::istream& in) {
  std::vector<GroundTruthObject> gts;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for_each_line(in, /*skip_header=*/true, [&](const std::string& line, std::size_t n) {
    auto f = split_csv(line);
    if (f.size() != 7) {
      throw ParseError(n, "record",
                       "expected 7 fields (frame_id,object_id,x,y,w,h,class), got " +
                           std::to_string(f.size()));
    }
    GroundTruthObject g;
    g.frame_id = parse_int_field(f[0], n, "frame_id");
    if (g.frame_id < 0) throw ParseError(n, "frame_id", "frame_id must be >= 0");
    g.object_id = parse_int_field(f[1], n, "object_id");
    g.bbox = parse_bbox_fields(f[2], f[3], f[4], f[5], n);
    g.class_label = trim(f[6]);
    if (g.class_label.empty()) throw ParseError(n, "class", "class label is empty");
    if (!seen.insert({g.frame_id, g.object_id}).second) {
      throw ParseError(n, "object_id",
                       "duplicate (frame_id, object_id) = (" + std::to_string(g.frame_id) +
                           ", " + std::to_string(g.object_id) + ")");
    }
    gts.push_back(std::move(g));
  });
  return gts;
}

std::vector<GroundTruthObject> parse_ground_truth(const std::string& text) {
  std::istringstream in(text);
  return parse_ground_truth(in);
}

TpSeries parse_tp_series(std::istream& in) {
  TpSeries s;
  for_each_line(in, /*skip_header=*/true, [&](const std::string& line, std::size_t n) {
    auto f = split_csv(line);
    if (f.size() != 3) {
      throw ParseError(n, "record", "expected 3 fields (frame_id,tp,gt), got " +
                                        std::to_string(f.size()));
    }
    std::int64_t frame = parse_int_field(f[0], n, "frame_id");
    std::int64_t tp = parse_int_field(f[1], n, "tp");
    std::int64_t gt = parse_int_field(f[2], n, "gt");
    if (tp < 0) throw ParseError(n, "tp", "tp must be >= 0");
    if (gt < 0) throw ParseError(n, "gt", "gt must be >= 0");
    s.frame_ids.push_back(frame);
    s.tp.push_back(static_cast<int>(tp));
    s.gt.push_back(static_cast<int>(gt));
  });
  return s;
}

TpSeries parse_tp_series(const std::string& text) {
  std::istringstream in(text);
  return parse_tp_series(in);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_detection_csv(std::ostream& out, const std::vector<Detection>& dets) {
  out << "frame_id,class,confidence,x,y,w,h\n";
  for (const auto& d : dets) {
    out << d.frame_id << ',' << d.class_label << ',' << format_double(d.confidence)
        << ',' << format_double(d.bbox.x) << ',' << format_double(d.bbox.y) << ','
        << format_double(d.bbox.w) << ',' << format_double(d.bbox.h) << '\n';
  }
}

void write_detection_jsonl(std::ostream& out, const std::vector<Detection>& dets) {
  for (const auto& d : dets) {
    nlohmann::json j;
    j["frame"] = d.frame_id;
    j["class"] = d.class_label;
    j["conf"] = d.confidence;
    j["bbox"] = {d.bbox.x, d.bbox.y, d.bbox.w, d.bbox.h};
    out << j.dump() << '\n';
  }
}

void write_ground_truth_csv(std::ostream& out, const std::vector<GroundTruthObject>& gts) {
  out << "frame_id,object_id,x,y,w,h,class\n";
  for (const auto& g : gts) {
    out << g.frame_id << ',' << g.object_id << ',' << format_double(g.bbox.x) << ','
        << format_double(g.bbox.y) << ',' << format_double(g.bbox.w) << ','
        << format_double(g.bbox.h) << ',' << g.class_label << '\n';
  }
}

void write_tp_series_csv(std::ostream& out, const TpSeries& series) {
  out << "frame_id,tp,gt\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.frame_ids[i] << ',' << series.tp[i] << ',' << series.gt[i] << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "file", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace vidflux
