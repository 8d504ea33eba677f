#pragma once

#include "detmath/losses.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace detmath {

/// Loss closure over a flat coordinate vector (x1,y1,x2,y2 per prediction).
using LossFn = std::function<LossValue(std::span<const double>)>;

struct FiniteDiffReport {
    std::size_t coords_checked = 0;
    /// Coordinates where the one-sided differences disagree, i.e. a
    /// piecewise seam lies within one step of the sample point. Skipped.
    std::size_t coords_skipped = 0;
    double max_rel_error = 0.0;
    double tol = 0.0;

    bool passed() const { return coords_checked > 0 && max_rel_error < tol; }
};

/// Central-difference check of the analytic gradient of `loss` at `point`.
/// Relative error per coordinate is |analytic - numeric| scaled by the
/// larger magnitude (floored at 1e-6).
FiniteDiffReport finite_diff_check(const LossFn& loss, std::span<const double> point,
                                   double step, double tol);

/// Accumulate one report into another (suite aggregation).
void merge_reports(FiniteDiffReport& into, const FiniteDiffReport& from);

struct GradSuiteResult {
    std::string name;
    std::size_t points = 0;
    FiniteDiffReport report;
};

/// Runs the full gradient verification suite: the mixed regression loss at
/// every weighting in `mixes`, plus repgt_loss and repbox_loss, each on
/// `points_per_loss` random configurations sampled away from piecewise
/// seams. Deterministic for a fixed seed.
std::vector<GradSuiteResult> run_gradient_suite(std::uint64_t seed, std::size_t points_per_loss,
                                                double step, double tol,
                                                std::span<const RegMixConfig> mixes);

/// The weightings exercised by default: pure IoU, pure NWD, and the three
/// blended settings.
std::vector<RegMixConfig> default_gradcheck_mixes();

} // namespace detmath
