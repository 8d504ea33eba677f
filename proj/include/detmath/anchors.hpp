#pragma once

#include "detmath/bbox.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace detmath {

/// Anchor scales for one detection layer. Scales are kept at full
/// precision; format_anchor_scale rounds for display.
struct AnchorSpec {
    std::string layer;
    int stride = 0;
    double ratio = 0.0;           // height/width
    std::vector<double> scales;   // strictly increasing anchor edges, pixels
};

/// Scales follow base * 2^(k/3) within a level; each level's base is the
/// first-level base scaled by stride ratio, so bases double when strides
/// double. Layers are named P<log2 stride> for power-of-two strides.
std::vector<AnchorSpec> generate_anchor_set(double base, std::span<const int> strides,
                                            int octaves, double ratio);

/// Two-decimal display rounding; integral values print bare ("16", not
/// "16.00") and fractional values keep trailing zeros ("25.40").
std::string format_anchor_scale(double scale);

/// "[16, 20.16, 25.40]" for one level.
std::string format_scale_list(std::span<const double> scales);

enum class AnchorDimConvention {
    area_preserving, // w = s/sqrt(r), h = s*sqrt(r): keeps s = sqrt(w*h)
    width_scaled,    // w = s, h = s*r
};

/// Anchor width/height from an edge scale and an h/w ratio.
std::pair<double, double> anchor_dims(double scale, double ratio,
                                      AnchorDimConvention conv = AnchorDimConvention::area_preserving);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0; // hi = +inf for the overflow bin
    std::size_t count = 0;
};

struct RatioStats {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    std::vector<HistogramBin> histogram; // width-0.1 bins over [0,3) + overflow
};

/// Height/width statistics of ground-truth boxes. Median of an even count
/// is the midpoint of the two central values.
RatioStats aspect_ratio_stats(std::span<const BBox> gts);

} // namespace detmath
