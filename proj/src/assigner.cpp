#include "detmath/assigner.hpp"

#include "detmath/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace detmath {

double adaptive_threshold(std::span<const double> ious) {
    if (ious.empty()) {
        throw std::invalid_argument("adaptive_threshold: no candidates to assign");
    }
    double sum = 0.0;
    for (double v : ious) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("adaptive_threshold: iou outside [0,1]");
        }
        sum += v;
    }
    return sum / static_cast<double>(ious.size());
}

namespace {

// slide_weight extended to the boundary values mu = 0 and mu = 1, which a
// degenerate candidate set (all IoUs equal 0 or 1) can produce. Same
// piecewise formula; only the mu domain differs from the public op.
double slide_weight_at(double x, double mu) {
    if (mu > 0.0 && mu < 1.0) return slide_weight(x, mu);
    if (x <= mu - 0.1) return 1.0;
    if (x < mu) return std::exp(1.0 - mu);
    return std::exp(1.0 - x);
}

} // namespace

AssignResult assign_samples(std::span<const BBox> preds, std::span<const BBox> gts) {
    if (preds.empty() || gts.empty()) {
        throw std::invalid_argument("assign_samples: preds and gts must be non-empty");
    }
    AssignResult out;
    out.samples.reserve(preds.size());
    std::vector<double> best_ious(preds.size(), 0.0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        std::size_t best_j = 0;
        double best = -1.0;
        for (std::size_t j = 0; j < gts.size(); ++j) {
            const double v = iou(preds[i], gts[j]);
            if (v > best) {
                best = v;
                best_j = j;
            }
        }
        best_ious[i] = best;
        Sample s;
        s.pred_index = i;
        s.gt_index = best_j;
        s.iou = best;
        out.samples.push_back(s);
    }
    out.mu = adaptive_threshold(best_ious);
    for (Sample& s : out.samples) {
        s.label = s.iou >= out.mu ? SampleLabel::positive : SampleLabel::negative;
        s.weight = slide_weight_at(s.iou, out.mu);
    }
    return out;
}

} // namespace detmath
