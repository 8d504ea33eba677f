#include "detmath/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace detmath {

std::vector<AnchorSpec> generate_anchor_set(double base, std::span<const int> strides,
                                            int octaves, double ratio) {
    if (!(base > 0.0)) throw std::invalid_argument("generate_anchor_set: base must be positive");
    if (octaves < 1) throw std::invalid_argument("generate_anchor_set: octaves must be >= 1");
    if (!(ratio > 0.0)) throw std::invalid_argument("generate_anchor_set: ratio must be positive");
    if (strides.empty()) throw std::invalid_argument("generate_anchor_set: no strides");
    for (int s : strides) {
        if (s < 1) throw std::invalid_argument("generate_anchor_set: strides must be >= 1");
    }

    std::vector<AnchorSpec> out;
    out.reserve(strides.size());
    for (int stride : strides) {
        AnchorSpec spec;
        spec.stride = stride;
        spec.ratio = ratio;
        const double level_base = base * static_cast<double>(stride) / strides[0];
        for (int k = 0; k < octaves; ++k) {
            spec.scales.push_back(level_base * std::exp2(static_cast<double>(k) / 3.0));
        }
        const double log2s = std::log2(static_cast<double>(stride));
        if (log2s == std::floor(log2s)) {
            spec.layer = "P" + std::to_string(static_cast<int>(log2s));
        } else {
            spec.layer = "S" + std::to_string(stride);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::string format_anchor_scale(double scale) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", scale);
    std::string s(buf);
    if (s.size() > 3 && s.compare(s.size() - 3, 3, ".00") == 0) {
        s.resize(s.size() - 3);
    }
    return s;
}

std::string format_scale_list(std::span<const double> scales) {
    std::string s = "[";
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (i > 0) s += ", ";
        s += format_anchor_scale(scales[i]);
    }
    s += "]";
    return s;
}

std::pair<double, double> anchor_dims(double scale, double ratio, AnchorDimConvention conv) {
    if (!(scale > 0.0 && ratio > 0.0)) {
        throw std::invalid_argument("anchor_dims: scale and ratio must be positive");
    }
    if (conv == AnchorDimConvention::width_scaled) {
        return {scale, scale * ratio};
    }
    const double r = std::sqrt(ratio);
    return {scale / r, scale * r};
}

RatioStats aspect_ratio_stats(std::span<const BBox> gts) {
    if (gts.empty()) {
        throw std::invalid_argument("aspect_ratio_stats: empty input");
    }
    RatioStats stats;
    stats.count = gts.size();
    std::vector<double> ratios;
    ratios.reserve(gts.size());
    double sum = 0.0;
    for (const BBox& b : gts) {
        const double r = b.height() / b.width();
        ratios.push_back(r);
        sum += r;
    }
    stats.mean = sum / static_cast<double>(ratios.size());

    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    stats.median = (n % 2 == 1) ? ratios[n / 2] : (ratios[n / 2 - 1] + ratios[n / 2]) / 2.0;

    constexpr double kBinWidth = 0.1;
    constexpr int kBins = 30; // [0, 3), plus one overflow bin
    stats.histogram.resize(kBins + 1);
    for (int i = 0; i < kBins; ++i) {
        stats.histogram[i].lo = i * kBinWidth;
        stats.histogram[i].hi = (i + 1) * kBinWidth;
    }
    stats.histogram[kBins].lo = kBins * kBinWidth;
    stats.histogram[kBins].hi = std::numeric_limits<double>::infinity();
    for (double r : ratios) {
        const int idx = std::min(static_cast<int>(r / kBinWidth), kBins);
        ++stats.histogram[idx].count;
    }
    return stats;
}

} // namespace detmath
