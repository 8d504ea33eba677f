#include "detmath/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace detmath {

GaussianBox::GaussianBox(double cx_, double cy_, double hw_, double hh_)
    : cx(cx_), cy(cy_), hw(hw_), hh(hh_) {
    if (!(std::isfinite(cx) && std::isfinite(cy) && std::isfinite(hw) && std::isfinite(hh))) {
        throw std::invalid_argument("GaussianBox: non-finite field");
    }
    if (!(hw > 0.0 && hh > 0.0)) {
        throw std::invalid_argument("GaussianBox: half-extents must be positive");
    }
}

NwdConfig::NwdConfig(double c_) : c(c_) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("NwdConfig: normalization constant must be positive");
    }
}

GaussianBox box_to_gaussian(const BBox& b) {
    return {(b.x1 + b.x2) / 2.0, (b.y1 + b.y2) / 2.0, (b.x2 - b.x1) / 2.0, (b.y2 - b.y1) / 2.0};
}

BBox gaussian_to_box(const GaussianBox& g) {
    return {g.cx - g.hw, g.cy - g.hh, g.cx + g.hw, g.cy + g.hh};
}

double w2_distance(const GaussianBox& a, const GaussianBox& b) {
    const double dcx = a.cx - b.cx;
    const double dcy = a.cy - b.cy;
    const double dhw = a.hw - b.hw;
    const double dhh = a.hh - b.hh;
    return std::sqrt(dcx * dcx + dcy * dcy + dhw * dhw + dhh * dhh);
}

double nwd(const GaussianBox& a, const GaussianBox& b, const NwdConfig& cfg) {
    if (!(cfg.c > 0.0)) {
        throw std::invalid_argument("nwd: normalization constant must be positive");
    }
    return std::exp(-w2_distance(a, b) / cfg.c);
}

} // namespace detmath
