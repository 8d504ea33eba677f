#pragma once

#include "detmath/bbox.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace detmath {

enum class SampleLabel { negative, positive };

/// One prediction/ground-truth pairing produced by assign_samples.
struct Sample {
    std::size_t pred_index = 0;
    std::optional<std::size_t> gt_index;
    double iou = 0.0;
    SampleLabel label = SampleLabel::negative;
    double weight = 1.0;
};

struct AssignResult {
    std::vector<Sample> samples;
    double mu = 0.0; // the adaptive threshold used for this call
};

/// Arithmetic mean of the candidate IoUs. Errors on an empty sequence.
double adaptive_threshold(std::span<const double> ious);

/// Matches every prediction to its best-IoU ground truth (ties to the
/// lowest index), computes mu as the mean of those IoUs over this call,
/// labels iou >= mu as positive, and attaches the slide weight. mu is
/// per-call scoped; aggregate across calls yourself if you need a wider
/// scope.
AssignResult assign_samples(std::span<const BBox> preds, std::span<const BBox> gts);

} // namespace detmath
