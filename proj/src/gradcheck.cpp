#include "detmath/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace detmath {

FiniteDiffReport finite_diff_check(const LossFn& loss, std::span<const double> point,
                                   double step, double tol) {
    if (!(step > 0.0) || !(tol > 0.0)) {
        throw std::invalid_argument("finite_diff_check: step and tol must be positive");
    }
    FiniteDiffReport rep;
    rep.tol = tol;
    const LossValue base = loss(point);
    if (base.grad.size() != point.size()) {
        throw std::invalid_argument("finite_diff_check: gradient length mismatch");
    }
    std::vector<double> x(point.begin(), point.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + step;
        const double fp = loss(x).value;
        x[i] = orig - step;
        const double fm = loss(x).value;
        x[i] = orig;

        const double fwd = (fp - base.value) / step;
        const double bwd = (base.value - fm) / step;
        // One-sided slopes that disagree mean a kink or jump inside
        // [x-step, x+step]: not a differentiable sample point.
        if (std::abs(fwd - bwd) > 1e-2 * std::max({1.0, std::abs(fwd), std::abs(bwd)})) {
            ++rep.coords_skipped;
            continue;
        }
        const double numeric = (fp - fm) / (2.0 * step);
        const double analytic = base.grad[i];
        const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        const double rel = std::abs(analytic - numeric) / denom;
        rep.max_rel_error = std::max(rep.max_rel_error, rel);
        ++rep.coords_checked;
    }
    return rep;
}

void merge_reports(FiniteDiffReport& into, const FiniteDiffReport& from) {
    into.coords_checked += from.coords_checked;
    into.coords_skipped += from.coords_skipped;
    into.max_rel_error = std::max(into.max_rel_error, from.max_rel_error);
    if (into.tol == 0.0) into.tol = from.tol;
}

namespace {

// Random boxes that keep every piecewise seam (corner ties, overlap
// boundaries, argmax switches, the smooth_ln knee and the overlap clamp)
// at least `margin` away from the sample point.
constexpr double kMargin = 0.02;

BBox random_box(std::mt19937_64& rng, double lo, double hi, double min_size, double max_size) {
    std::uniform_real_distribution<double> pos(lo, hi);
    std::uniform_real_distribution<double> size(min_size, max_size);
    const double x1 = pos(rng);
    const double y1 = pos(rng);
    return {x1, y1, x1 + size(rng), y1 + size(rng)};
}

bool corners_separated(const BBox& a, const BBox& b) {
    return std::abs(a.x1 - b.x1) > kMargin && std::abs(a.x2 - b.x2) > kMargin &&
           std::abs(a.y1 - b.y1) > kMargin && std::abs(a.y2 - b.y2) > kMargin;
}

bool overlap_interior(const BBox& a, const BBox& b) {
    const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    return iw > kMargin && ih > kMargin;
}

std::vector<double> flatten(std::span<const BBox> boxes) {
    std::vector<double> v;
    v.reserve(4 * boxes.size());
    for (const BBox& b : boxes) {
        v.push_back(b.x1);
        v.push_back(b.y1);
        v.push_back(b.x2);
        v.push_back(b.y2);
    }
    return v;
}

std::vector<BBox> unflatten(std::span<const double> v) {
    std::vector<BBox> boxes;
    boxes.reserve(v.size() / 4);
    for (std::size_t i = 0; i + 3 < v.size(); i += 4) {
        boxes.emplace_back(v[i], v[i + 1], v[i + 2], v[i + 3]);
    }
    return boxes;
}

// Overlapping pred/gt pair for the regression loss, seams kept clear.
std::pair<BBox, BBox> sample_regression_pair(std::mt19937_64& rng) {
    for (;;) {
        const BBox gt = random_box(rng, 10.0, 60.0, 8.0, 30.0);
        std::uniform_real_distribution<double> shift(-4.0, 4.0);
        std::uniform_real_distribution<double> resize(0.7, 1.3);
        const double w = gt.width() * resize(rng);
        const double h = gt.height() * resize(rng);
        const double x1 = gt.x1 + shift(rng);
        const double y1 = gt.y1 + shift(rng);
        BBox pred{x1, y1, x1 + w, y1 + h};
        if (corners_separated(pred, gt) && overlap_interior(pred, gt) &&
            w2_distance(box_to_gaussian(pred), box_to_gaussian(gt)) > kMargin) {
            return {pred, gt};
        }
    }
}

struct RepGtCase {
    std::vector<BBox> preds;
    std::vector<std::size_t> assigned;
    std::vector<BBox> gts;
};

RepGtCase sample_repgt_case(std::mt19937_64& rng, const SmoothLnConfig& cfg) {
    for (;;) {
        RepGtCase c;
        // Two ground truths side by side, two predictions each attached to
        // one and leaning into the other.
        const BBox g0 = random_box(rng, 10.0, 20.0, 12.0, 20.0);
        const BBox g1{g0.x2 + std::uniform_real_distribution<double>(-6.0, -2.0)(rng), g0.y1 + 0.7,
                      g0.x2 + 14.0, g0.y2 + 0.9};
        c.gts = {g0, g1};
        std::uniform_real_distribution<double> lean(2.0, 6.0);
        const double d0 = lean(rng);
        c.preds.push_back(BBox{g0.x1 + d0, g0.y1 + 0.3, g0.x2 + d0, g0.y2 + 0.5});
        const double d1 = lean(rng);
        c.preds.push_back(BBox{g1.x1 - d1, g1.y1 - 0.4, g1.x2 - d1, g1.y2 - 0.2});
        c.assigned = {0, 1};

        bool ok = true;
        for (std::size_t i = 0; i < c.preds.size() && ok; ++i) {
            const BBox& rep = c.gts[1 - c.assigned[i]];
            const double x = iog(c.preds[i], rep);
            ok = overlap_interior(c.preds[i], rep) && corners_separated(c.preds[i], rep) &&
                 corners_separated(c.preds[i], c.gts[c.assigned[i]]) && x > kMargin &&
                 x < 1.0 - kMargin && std::abs(x - cfg.sigma) > kMargin;
            for (std::size_t j = 0; j < c.preds.size() && ok; ++j) {
                ok = i == j || corners_separated(c.preds[i], c.preds[j]);
            }
        }
        if (ok) return c;
    }
}

struct RepBoxCase {
    std::vector<BBox> preds;
    std::vector<std::size_t> assigned;
};

RepBoxCase sample_repbox_case(std::mt19937_64& rng, const SmoothLnConfig& cfg) {
    for (;;) {
        RepBoxCase c;
        const BBox base = random_box(rng, 10.0, 40.0, 12.0, 20.0);
        std::uniform_real_distribution<double> off(3.0, 7.0);
        const double d = off(rng);
        c.preds.push_back(base);
        c.preds.push_back(BBox{base.x1 + d, base.y1 + 0.6, base.x2 + d, base.y2 + 0.9});
        // A third prediction in the first group, overlapping neither seam.
        c.preds.push_back(BBox{base.x1 + 0.3, base.y1 + d, base.x2 + 0.7, base.y2 + d});
        c.assigned = {0, 1, 0};

        bool ok = true;
        for (std::size_t i = 0; i < c.preds.size() && ok; ++i) {
            for (std::size_t j = i + 1; j < c.preds.size() && ok; ++j) {
                if (!corners_separated(c.preds[i], c.preds[j])) ok = false;
                if (c.assigned[i] == c.assigned[j]) continue;
                const double x = iou(c.preds[i], c.preds[j]);
                ok = ok && overlap_interior(c.preds[i], c.preds[j]) && x > kMargin &&
                     x < 1.0 - kMargin && std::abs(x - cfg.sigma) > kMargin;
            }
        }
        if (ok) return c;
    }
}

} // namespace

std::vector<RegMixConfig> default_gradcheck_mixes() {
    return {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {0.4, 0.6}, {0.6, 0.4}};
}

std::vector<GradSuiteResult> run_gradient_suite(std::uint64_t seed, std::size_t points_per_loss,
                                                double step, double tol,
                                                std::span<const RegMixConfig> mixes) {
    std::vector<GradSuiteResult> results;
    const NwdConfig nwd_cfg{};

    for (const RegMixConfig& mix : mixes) {
        std::mt19937_64 rng(seed);
        GradSuiteResult res;
        char name[64];
        std::snprintf(name, sizeof(name), "regression iou=%.1f nwd=%.1f", mix.alpha_iou,
                      mix.alpha_nwd);
        res.name = name;
        for (std::size_t p = 0; p < points_per_loss; ++p) {
            const auto [pred, gt] = sample_regression_pair(rng);
            const LossFn fn = [&](std::span<const double> x) {
                return regression_loss(BBox{x[0], x[1], x[2], x[3]}, gt, mix, nwd_cfg);
            };
            const double point[4] = {pred.x1, pred.y1, pred.x2, pred.y2};
            merge_reports(res.report, finite_diff_check(fn, point, step, tol));
            ++res.points;
        }
        results.push_back(std::move(res));
    }

    {
        const SmoothLnConfig cfg{0.5};
        std::mt19937_64 rng(seed + 1);
        GradSuiteResult res;
        res.name = "repgt sigma=0.5";
        for (std::size_t p = 0; p < points_per_loss; ++p) {
            const RepGtCase c = sample_repgt_case(rng, cfg);
            const LossFn fn = [&](std::span<const double> x) {
                const std::vector<BBox> preds = unflatten(x);
                return repgt_loss(preds, c.assigned, c.gts, cfg);
            };
            merge_reports(res.report, finite_diff_check(fn, flatten(c.preds), step, tol));
            ++res.points;
        }
        results.push_back(std::move(res));
    }

    {
        const SmoothLnConfig cfg{0.0};
        std::mt19937_64 rng(seed + 2);
        GradSuiteResult res;
        res.name = "repbox sigma=0";
        for (std::size_t p = 0; p < points_per_loss; ++p) {
            const RepBoxCase c = sample_repbox_case(rng, cfg);
            const LossFn fn = [&](std::span<const double> x) {
                const std::vector<BBox> preds = unflatten(x);
                return repbox_loss(preds, c.assigned, cfg, 1e-7);
            };
            merge_reports(res.report, finite_diff_check(fn, flatten(c.preds), step, tol));
            ++res.points;
        }
        results.push_back(std::move(res));
    }

    return results;
}

} // namespace detmath
