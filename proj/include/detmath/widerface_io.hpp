#pragma once

#include "detmath/bbox.hpp"
#include "detmath/evaluator.hpp"
#include "detmath/nms.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace detmath {

/// Malformed input; line() is the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// WiderFace per-face attribute columns, retained verbatim.
struct FaceAttributes {
    int blur = 0;
    int expression = 0;
    int illumination = 0;
    int invalid = 0;
    int occlusion = 0;
    int pose = 0;

    bool operator==(const FaceAttributes&) const = default;
};

struct ImageRecord {
    std::string image_path;
    std::vector<BBox> faces;
    std::vector<FaceAttributes> attributes; // parallel to faces
};

struct DetectionRecord {
    std::string image_path;
    std::vector<Detection> detections;
};

struct ParseReport {
    std::size_t images = 0;
    std::size_t boxes_kept = 0;
    std::size_t dropped_degenerate = 0; // w <= 0 or h <= 0
    std::size_t dropped_invalid = 0;    // ground-truth invalid flag set
};

struct GroundTruthFile {
    std::vector<ImageRecord> records;
    ParseReport report;
};

struct DetectionFile {
    std::vector<DetectionRecord> records;
    ParseReport report;
};

/// Parses the bbx_gt layout: path line, count line, then count lines of
/// "x y w h blur expression illumination invalid occlusion pose". Boxes
/// convert (x,y,w,h) -> (x,y,x+w,y+h); degenerate or invalid entries are
/// dropped and counted. A zero count followed by the dataset's
/// conventional all-zero stub line yields an empty face list.
GroundTruthFile parse_ground_truth(std::istream& in);

/// Parses the submission layout: path line, count line, then
/// "x y w h score" lines. Scores outside [0,1] are parse errors.
DetectionFile parse_detections(std::istream& in);

void write_ground_truth(std::ostream& out, std::span<const ImageRecord> records);
void write_detections(std::ostream& out, std::span<const DetectionRecord> records);

/// Parses "path,subset" lines (subset one of easy/medium/hard). Duplicate
/// paths are errors.
std::map<std::string, Subset> parse_subset_list(std::istream& in);

/// Per-subset AP summary as an aligned text table.
void write_ap_summary(std::ostream& out, std::span<const SubsetCurve> results);

/// PR curve points as CSV "subset,threshold,precision,recall", values in
/// 6-decimal fixed format, newline-terminated. Header always present.
void write_pr_csv(std::ostream& out, std::span<const SubsetCurve> results);

/// Both halves of the evaluation report.
void write_eval_report(std::ostream& summary_out, std::ostream& csv_out,
                       std::span<const SubsetCurve> results);

} // namespace detmath
