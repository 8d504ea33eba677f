#pragma once

#include "detmath/bbox.hpp"
#include "detmath/gaussian.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace detmath {

/// Smoothing parameter for smooth_ln, sigma in [0,1).
struct SmoothLnConfig {
    double sigma = 0.5;

    SmoothLnConfig() = default;
    explicit SmoothLnConfig(double sigma);
};

/// Weights for the mixed IoU/NWD regression loss. alpha_iou + alpha_nwd = 1,
/// enforced at construction.
struct RegMixConfig {
    double alpha_iou;
    double alpha_nwd;

    RegMixConfig(double alpha_iou, double alpha_nwd);
};

/// Loss value plus partial derivatives with respect to each predicted-box
/// coordinate. Layout: (x1, y1, x2, y2) per prediction, in input order, so
/// grad.size() == 4 * number of predictions. Ground-truth coordinates are
/// treated as constants.
struct LossValue {
    double value = 0.0;
    std::vector<double> grad;
};

/// Piecewise log-linear penalty on x in [0,1):
///   -ln(1-x)                      for x <= sigma
///   (x-sigma)/(1-sigma) - ln(1-sigma)  for x > sigma
/// Continuous and once-differentiable at x = sigma; monotone; zero at zero.
double smooth_ln(double x, const SmoothLnConfig& cfg);

/// First derivative of smooth_ln: 1/(1-x) below sigma, 1/(1-sigma) above.
double smooth_ln_deriv(double x, const SmoothLnConfig& cfg);

/// Repulsion-from-ground-truth loss. For each prediction, the repulsion
/// target is the non-assigned ground truth with the largest IoU (ties break
/// to the lowest index); predictions with no other ground truth, or with
/// zero IoG to their repulsion target, contribute zero. The result is the
/// mean smooth_ln(IoG) over all predictions passed in.
LossValue repgt_loss(std::span<const BBox> preds, std::span<const std::size_t> assigned_gt,
                     std::span<const BBox> gts, const SmoothLnConfig& cfg);

/// Repulsion-between-predictions loss over unordered pairs assigned to
/// different ground truths: sum of smooth_ln(IoU) over cross-group pairs,
/// divided by the count of overlapping cross-group pairs plus epsilon.
LossValue repbox_loss(std::span<const BBox> preds, std::span<const std::size_t> assigned_gt,
                      const SmoothLnConfig& cfg, double epsilon);

/// Piecewise sample weight for x in [0,1], mu in (0,1):
///   1        for x <= mu-0.1
///   e^(1-mu) for mu-0.1 < x < mu
///   e^(1-x)  for x >= mu
/// Continuous at mu; the step up at mu-0.1 is part of the shape.
double slide_weight(double x, double mu);

/// Mixed box regression loss alpha_iou*(1-IoU) + alpha_nwd*(1-NWD), with
/// analytic partials with respect to the four pred corners. Zero iff the
/// boxes coincide.
LossValue regression_loss(const BBox& pred, const BBox& gt, const RegMixConfig& mix,
                          const NwdConfig& nwd_cfg);

namespace detail {

// Inputs to smooth_ln are clamped to [0, 1-kOverlapClamp] so duplicated
// boxes (overlap exactly 1) keep the loss and gradient finite.
inline constexpr double kOverlapClamp = 1e-7;

struct ValueGrad4 {
    double value = 0.0;
    double da[4] = {0, 0, 0, 0}; // d/d(a.x1, a.y1, a.x2, a.y2)
    double db[4] = {0, 0, 0, 0};
};

ValueGrad4 iou_with_grad(const BBox& a, const BBox& b);
ValueGrad4 iog_with_grad(const BBox& p, const BBox& g);
ValueGrad4 nwd_with_grad(const BBox& a, const BBox& b, const NwdConfig& cfg);

} // namespace detail

} // namespace detmath
