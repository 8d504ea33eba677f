#include "detmath/evaluator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace detmath {

const char* subset_name(Subset s) {
    switch (s) {
        case Subset::easy: return "easy";
        case Subset::medium: return "medium";
        case Subset::hard: return "hard";
    }
    return "?";
}

std::vector<bool> match_and_score(std::span<const Detection> dets, std::span<const BBox> gts,
                                  double iou_threshold) {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
        throw std::invalid_argument("match_and_score: threshold must be in (0,1]");
    }
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });

    std::vector<bool> flags(dets.size(), false);
    std::vector<bool> consumed(gts.size(), false);
    for (std::size_t idx : order) {
        double best = 0.0;
        std::size_t best_j = gts.size();
        for (std::size_t j = 0; j < gts.size(); ++j) {
            if (consumed[j]) continue;
            const double v = iou(dets[idx].box, gts[j]);
            if (v > best) { // ties keep the lower gt index
                best = v;
                best_j = j;
            }
        }
        if (best_j < gts.size() && best >= iou_threshold) {
            consumed[best_j] = true;
            flags[idx] = true;
        }
    }
    return flags;
}

PrCurve average_precision(std::span<const ScoredFlag> dets, std::size_t total_gt) {
    PrCurve curve;
    if (dets.empty()) {
        curve.ap = total_gt == 0 ? 1.0 : 0.0;
        return curve;
    }

    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });

    std::size_t tp = 0, fp = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        dets[order[k]].tp ? ++tp : ++fp;
        const bool last_of_threshold =
            k + 1 == order.size() || dets[order[k + 1]].score != dets[order[k]].score;
        if (!last_of_threshold) continue;
        PrPoint p;
        p.threshold = dets[order[k]].score;
        p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        p.recall = total_gt == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(total_gt);
        curve.points.push_back(p);
    }

    // Interpolated precision: running max from the high-recall end.
    std::vector<double> interp(curve.points.size());
    double run = 0.0;
    for (std::size_t k = curve.points.size(); k-- > 0;) {
        run = std::max(run, curve.points[k].precision);
        interp[k] = run;
    }
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
        ap += (curve.points[k].recall - prev_recall) * interp[k];
        prev_recall = curve.points[k].recall;
    }
    curve.ap = ap;
    return curve;
}

namespace {

struct PooledDet {
    double score;
    bool tp;
    const std::string* path;
    std::size_t det_index;
};

} // namespace

std::vector<SubsetCurve> evaluate(std::span<const EvalRecord> records, double iou_threshold,
                                  unsigned threads) {
    if (records.empty()) {
        throw std::invalid_argument("evaluate: at least one record required");
    }
    {
        std::map<std::string, Subset> seen;
        for (const EvalRecord& r : records) {
            const auto [it, inserted] = seen.emplace(r.image_path, r.subset);
            if (!inserted && it->second != r.subset) {
                throw std::invalid_argument("evaluate: image '" + r.image_path +
                                            "' assigned to more than one subset");
            }
        }
    }

    // Per-image matching, optionally across threads; results land in a
    // pre-sized slot per record so the merge order is fixed.
    std::vector<std::vector<bool>> flags(records.size());
    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            flags[i] = match_and_score(records[i].detections, records[i].gts, iou_threshold);
        }
    };
    if (threads <= 1 || records.size() < 2) {
        worker(0, records.size());
    } else {
        const std::size_t n = std::min<std::size_t>(threads, records.size());
        std::vector<std::thread> pool;
        const std::size_t chunk = (records.size() + n - 1) / n;
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(records.size(), begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<SubsetCurve> out;
    for (Subset subset : {Subset::easy, Subset::medium, Subset::hard}) {
        std::vector<PooledDet> pooled;
        std::size_t total_gt = 0;
        bool present = false;
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (records[i].subset != subset) continue;
            present = true;
            total_gt += records[i].gts.size();
            for (std::size_t d = 0; d < records[i].detections.size(); ++d) {
                pooled.push_back(
                    {records[i].detections[d].score, flags[i][d], &records[i].image_path, d});
            }
        }
        if (!present) continue;
        std::sort(pooled.begin(), pooled.end(), [](const PooledDet& a, const PooledDet& b) {
            if (a.score != b.score) return a.score > b.score;
            if (*a.path != *b.path) return *a.path < *b.path;
            return a.det_index < b.det_index;
        });
        std::vector<ScoredFlag> ranked;
        ranked.reserve(pooled.size());
        for (const PooledDet& d : pooled) ranked.push_back({d.score, d.tp});
        out.push_back({subset, average_precision(ranked, total_gt)});
    }
    return out;
}

} // namespace detmath
