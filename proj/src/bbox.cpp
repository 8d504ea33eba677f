#include "detmath/bbox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace detmath {

BBox::BBox(double x1_, double y1_, double x2_, double y2_)
    : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
    if (!(std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2))) {
        throw std::invalid_argument("BBox: non-finite coordinate");
    }
    if (!(x2 > x1 && y2 > y1)) {
        throw std::invalid_argument("BBox: degenerate box (" + std::to_string(x1) + "," +
                                    std::to_string(y1) + "," + std::to_string(x2) + "," +
                                    std::to_string(y2) + ")");
    }
}

static double intersection_area(const BBox& a, const BBox& b) {
    const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    if (iw <= 0.0) return 0.0;
    const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (ih <= 0.0) return 0.0;
    return iw * ih;
}

double iou(const BBox& a, const BBox& b) {
    const double inter = intersection_area(a, b);
    if (inter <= 0.0) return 0.0;
    return inter / (a.area() + b.area() - inter);
}

double iog(const BBox& p, const BBox& g) {
    return intersection_area(p, g) / g.area();
}

std::vector<std::vector<double>> pairwise_iou(std::span<const BBox> as,
                                              std::span<const BBox> bs) {
    std::vector<std::vector<double>> m(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) {
        m[i].resize(bs.size());
        for (std::size_t j = 0; j < bs.size(); ++j) {
            m[i][j] = iou(as[i], bs[j]);
        }
    }
    return m;
}

} // namespace detmath
