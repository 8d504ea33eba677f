#include "detmath/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace detmath {

SmoothLnConfig::SmoothLnConfig(double sigma_) : sigma(sigma_) {
    if (!(sigma >= 0.0 && sigma < 1.0)) {
        throw std::invalid_argument("SmoothLnConfig: sigma must be in [0,1)");
    }
}

RegMixConfig::RegMixConfig(double alpha_iou_, double alpha_nwd_)
    : alpha_iou(alpha_iou_), alpha_nwd(alpha_nwd_) {
    if (!(alpha_iou >= 0.0 && alpha_iou <= 1.0 && alpha_nwd >= 0.0 && alpha_nwd <= 1.0)) {
        throw std::invalid_argument("RegMixConfig: weights must be in [0,1]");
    }
    if (std::abs(alpha_iou + alpha_nwd - 1.0) > 1e-12) {
        throw std::invalid_argument("RegMixConfig: weights must sum to 1");
    }
}

double smooth_ln(double x, const SmoothLnConfig& cfg) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::domain_error("smooth_ln: x must be in [0,1)");
    }
    if (x <= cfg.sigma) {
        return -std::log1p(-x);
    }
    return (x - cfg.sigma) / (1.0 - cfg.sigma) - std::log1p(-cfg.sigma);
}

double smooth_ln_deriv(double x, const SmoothLnConfig& cfg) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::domain_error("smooth_ln_deriv: x must be in [0,1)");
    }
    if (x <= cfg.sigma) {
        return 1.0 / (1.0 - x);
    }
    return 1.0 / (1.0 - cfg.sigma);
}

double slide_weight(double x, double mu) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("slide_weight: x must be in [0,1]");
    }
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::invalid_argument("slide_weight: mu must be in (0,1)");
    }
    if (x <= mu - 0.1) return 1.0;
    if (x < mu) return std::exp(1.0 - mu);
    return std::exp(1.0 - x);
}

namespace detail {

namespace {

// Overlap of the two intervals [a1,a2] and [b1,b2] with the derivative of
// the overlap width with respect to each endpoint. Derivatives are the
// one-sided choice at exact corner ties; gradient checks resample there.
struct Overlap1D {
    double w;
    double d_a1, d_a2, d_b1, d_b2;
};

Overlap1D interval_overlap(double a1, double a2, double b1, double b2) {
    Overlap1D o{};
    const double lo = std::max(a1, b1);
    const double hi = std::min(a2, b2);
    o.w = hi - lo;
    o.d_a1 = (a1 >= b1) ? -1.0 : 0.0;
    o.d_b1 = (a1 >= b1) ? 0.0 : -1.0;
    o.d_a2 = (a2 <= b2) ? 1.0 : 0.0;
    o.d_b2 = (a2 <= b2) ? 0.0 : 1.0;
    return o;
}

struct Intersection {
    double area = 0.0;
    double da[4] = {0, 0, 0, 0};
    double db[4] = {0, 0, 0, 0};
};

Intersection intersection_with_grad(const BBox& a, const BBox& b) {
    Intersection r{};
    const Overlap1D ox = interval_overlap(a.x1, a.x2, b.x1, b.x2);
    if (ox.w <= 0.0) return r;
    const Overlap1D oy = interval_overlap(a.y1, a.y2, b.y1, b.y2);
    if (oy.w <= 0.0) return r;
    r.area = ox.w * oy.w;
    r.da[0] = oy.w * ox.d_a1;
    r.da[1] = ox.w * oy.d_a1;
    r.da[2] = oy.w * ox.d_a2;
    r.da[3] = ox.w * oy.d_a2;
    r.db[0] = oy.w * ox.d_b1;
    r.db[1] = ox.w * oy.d_b1;
    r.db[2] = oy.w * ox.d_b2;
    r.db[3] = ox.w * oy.d_b2;
    return r;
}

// d area / d (x1, y1, x2, y2)
void area_grad(const BBox& b, double out[4]) {
    out[0] = -b.height();
    out[1] = -b.width();
    out[2] = b.height();
    out[3] = b.width();
}

} // namespace

ValueGrad4 iou_with_grad(const BBox& a, const BBox& b) {
    ValueGrad4 r{};
    const Intersection inter = intersection_with_grad(a, b);
    if (inter.area <= 0.0) return r;
    const double u = a.area() + b.area() - inter.area;
    r.value = inter.area / u;
    double areag_a[4], areag_b[4];
    area_grad(a, areag_a);
    area_grad(b, areag_b);
    for (int k = 0; k < 4; ++k) {
        const double du_a = areag_a[k] - inter.da[k];
        const double du_b = areag_b[k] - inter.db[k];
        r.da[k] = (inter.da[k] * u - inter.area * du_a) / (u * u);
        r.db[k] = (inter.db[k] * u - inter.area * du_b) / (u * u);
    }
    return r;
}

ValueGrad4 iog_with_grad(const BBox& p, const BBox& g) {
    ValueGrad4 r{};
    const Intersection inter = intersection_with_grad(p, g);
    const double ag = g.area();
    r.value = inter.area / ag;
    if (inter.area <= 0.0) return r;
    double areag_g[4];
    area_grad(g, areag_g);
    for (int k = 0; k < 4; ++k) {
        r.da[k] = inter.da[k] / ag;
        r.db[k] = (inter.db[k] * ag - inter.area * areag_g[k]) / (ag * ag);
    }
    return r;
}

ValueGrad4 nwd_with_grad(const BBox& a, const BBox& b, const NwdConfig& cfg) {
    const GaussianBox ga = box_to_gaussian(a);
    const GaussianBox gb = box_to_gaussian(b);
    const double d[4] = {ga.cx - gb.cx, ga.cy - gb.cy, ga.hw - gb.hw, ga.hh - gb.hh};
    const double w2 = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
    ValueGrad4 r{};
    r.value = std::exp(-w2 / cfg.c);
    if (w2 <= 0.0) return r; // minimum; subgradient zero
    // Corner sensitivities of (cx, cy, hw, hh): cx/cy get 1/2 from both
    // corners, hw/hh get -1/2 from the low corner and +1/2 from the high one.
    const double dw2_dcx = d[0] / w2;
    const double dw2_dcy = d[1] / w2;
    const double dw2_dhw = d[2] / w2;
    const double dw2_dhh = d[3] / w2;
    const double scale = -r.value / cfg.c;
    r.da[0] = scale * (0.5 * dw2_dcx - 0.5 * dw2_dhw);
    r.da[1] = scale * (0.5 * dw2_dcy - 0.5 * dw2_dhh);
    r.da[2] = scale * (0.5 * dw2_dcx + 0.5 * dw2_dhw);
    r.da[3] = scale * (0.5 * dw2_dcy + 0.5 * dw2_dhh);
    r.db[0] = -scale * (0.5 * dw2_dcx - 0.5 * dw2_dhw);
    r.db[1] = -scale * (0.5 * dw2_dcy - 0.5 * dw2_dhh);
    r.db[2] = -scale * (0.5 * dw2_dcx + 0.5 * dw2_dhw);
    r.db[3] = -scale * (0.5 * dw2_dcy + 0.5 * dw2_dhh);
    return r;
}

namespace {

// smooth_ln over a clamped overlap ratio; derivative is zero in the
// clamped region.
struct ClampedSln {
    double value;
    double deriv;
};

ClampedSln smooth_ln_clamped(double x, const SmoothLnConfig& cfg) {
    const double hi = 1.0 - kOverlapClamp;
    if (x > hi) {
        return {smooth_ln(hi, cfg), 0.0};
    }
    const double xc = std::max(x, 0.0);
    return {smooth_ln(xc, cfg), smooth_ln_deriv(xc, cfg)};
}

} // namespace

} // namespace detail

LossValue repgt_loss(std::span<const BBox> preds, std::span<const std::size_t> assigned_gt,
                     std::span<const BBox> gts, const SmoothLnConfig& cfg) {
    if (preds.size() != assigned_gt.size()) {
        throw std::invalid_argument("repgt_loss: preds and assigned_gt sizes differ");
    }
    LossValue out;
    if (preds.empty()) return out;
    if (gts.empty()) {
        throw std::invalid_argument("repgt_loss: at least one ground truth required");
    }
    for (std::size_t a : assigned_gt) {
        if (a >= gts.size()) {
            throw std::out_of_range("repgt_loss: assigned gt index out of range");
        }
    }

    out.grad.assign(4 * preds.size(), 0.0);
    const double n = static_cast<double>(preds.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        // Repulsion target: best-IoU ground truth other than the assigned
        // one, ties to the lowest index.
        std::size_t rep = gts.size();
        double best = -1.0;
        for (std::size_t j = 0; j < gts.size(); ++j) {
            if (j == assigned_gt[i]) continue;
            const double v = iou(preds[i], gts[j]);
            if (v > best) {
                best = v;
                rep = j;
            }
        }
        if (rep == gts.size()) continue; // no other gt exists

        const detail::ValueGrad4 g = detail::iog_with_grad(preds[i], gts[rep]);
        if (g.value <= 0.0) continue;
        const detail::ClampedSln s = detail::smooth_ln_clamped(g.value, cfg);
        sum += s.value;
        for (int k = 0; k < 4; ++k) {
            out.grad[4 * i + k] = s.deriv * g.da[k] / n;
        }
    }
    out.value = sum / n;
    return out;
}

LossValue repbox_loss(std::span<const BBox> preds, std::span<const std::size_t> assigned_gt,
                      const SmoothLnConfig& cfg, double epsilon) {
    if (preds.size() != assigned_gt.size()) {
        throw std::invalid_argument("repbox_loss: preds and assigned_gt sizes differ");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("repbox_loss: epsilon must be positive");
    }
    LossValue out;
    out.grad.assign(4 * preds.size(), 0.0);
    if (preds.size() < 2) return out;

    double numerator = 0.0;
    std::size_t overlapping = 0;
    std::vector<double> num_grad(4 * preds.size(), 0.0);
    for (std::size_t i = 0; i + 1 < preds.size(); ++i) {
        for (std::size_t j = i + 1; j < preds.size(); ++j) {
            if (assigned_gt[i] == assigned_gt[j]) continue;
            const detail::ValueGrad4 g = detail::iou_with_grad(preds[i], preds[j]);
            if (g.value > 0.0) ++overlapping;
            const detail::ClampedSln s = detail::smooth_ln_clamped(g.value, cfg);
            numerator += s.value;
            for (int k = 0; k < 4; ++k) {
                num_grad[4 * i + k] += s.deriv * g.da[k];
                num_grad[4 * j + k] += s.deriv * g.db[k];
            }
        }
    }
    const double denom = static_cast<double>(overlapping) + epsilon;
    out.value = numerator / denom;
    for (std::size_t k = 0; k < num_grad.size(); ++k) {
        out.grad[k] = num_grad[k] / denom;
    }
    return out;
}

LossValue regression_loss(const BBox& pred, const BBox& gt, const RegMixConfig& mix,
                          const NwdConfig& nwd_cfg) {
    const detail::ValueGrad4 gi = detail::iou_with_grad(pred, gt);
    const detail::ValueGrad4 gn = detail::nwd_with_grad(pred, gt, nwd_cfg);
    LossValue out;
    out.value = mix.alpha_iou * (1.0 - gi.value) + mix.alpha_nwd * (1.0 - gn.value);
    out.grad.resize(4);
    for (int k = 0; k < 4; ++k) {
        out.grad[k] = -mix.alpha_iou * gi.da[k] - mix.alpha_nwd * gn.da[k];
    }
    return out;
}

} // namespace detmath
