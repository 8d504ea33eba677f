#pragma once

#include "detmath/bbox.hpp"
#include "detmath/nms.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace detmath {

enum class Subset { easy, medium, hard };

const char* subset_name(Subset s);

/// One image's detections, ground truths and difficulty subset.
struct EvalRecord {
    std::string image_path;
    std::vector<Detection> detections;
    std::vector<BBox> gts;
    Subset subset = Subset::easy;
};

struct PrPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct PrCurve {
    std::vector<PrPoint> points; // threshold descending, recall non-decreasing
    double ap = 0.0;
};

struct SubsetCurve {
    Subset subset = Subset::easy;
    PrCurve curve;
};

/// Score plus the TP/FP outcome of one detection.
struct ScoredFlag {
    double score = 0.0;
    bool tp = false;
};

/// Greedy matching in descending score order (score ties keep input order):
/// a detection is TP iff its best-IoU not-yet-matched ground truth reaches
/// the threshold, and that ground truth is then consumed. Returned flags
/// are aligned with the input detection order.
std::vector<bool> match_and_score(std::span<const Detection> dets, std::span<const BBox> gts,
                                  double iou_threshold);

/// All-points interpolated average precision: one PR point per distinct
/// score threshold, precision interpolated to its running maximum from the
/// high-recall side. With no ground truth, AP is 1 when there are no
/// detections (nothing to find, nothing claimed) and 0 otherwise.
PrCurve average_precision(std::span<const ScoredFlag> dets, std::size_t total_gt);

/// Per-subset pooled evaluation. Detections are matched per image, pooled
/// within each subset in a canonical order (score desc, image path,
/// detection index), and reduced to one curve per subset present, in enum
/// order. Deterministic under record permutation and thread count.
std::vector<SubsetCurve> evaluate(std::span<const EvalRecord> records, double iou_threshold,
                                  unsigned threads = 1);

} // namespace detmath
