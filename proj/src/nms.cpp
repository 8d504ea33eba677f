#include "detmath/nms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace detmath {

Detection::Detection(BBox box_, double score_) : box(box_), score(score_) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw std::invalid_argument("Detection: score must be in [0,1]");
    }
}

std::vector<std::size_t> nms(std::span<const Detection> dets, double iou_threshold) {
    if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
        throw std::invalid_argument("nms: threshold must be in [0,1]");
    }
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
        return a < b;
    });

    std::vector<std::size_t> kept;
    for (std::size_t idx : order) {
        bool keep = true;
        for (std::size_t k : kept) {
            if (iou(dets[idx].box, dets[k].box) > iou_threshold) {
                keep = false;
                break;
            }
        }
        if (keep) kept.push_back(idx);
    }
    return kept;
}

std::vector<std::vector<std::size_t>> partition_by_target(std::span<const std::size_t> assigned_gt) {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < assigned_gt.size(); ++i) {
        groups[assigned_gt[i]].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    out.reserve(groups.size());
    for (auto& [gt, members] : groups) {
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace detmath
