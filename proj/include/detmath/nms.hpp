#pragma once

#include "detmath/bbox.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace detmath {

struct Detection {
    BBox box;
    double score;

    Detection(BBox box, double score);
};

/// Greedy non-maximum suppression. Candidates are visited in descending
/// score (ties to the lower original index); one is kept iff its IoU with
/// every already-kept detection is <= threshold. Returns kept indices in
/// keep order.
std::vector<std::size_t> nms(std::span<const Detection> dets, double iou_threshold);

/// Groups prediction indices by their assigned ground-truth index. Groups
/// are emitted in ascending gt-index order; within a group, input order is
/// preserved.
std::vector<std::vector<std::size_t>> partition_by_target(std::span<const std::size_t> assigned_gt);

} // namespace detmath
