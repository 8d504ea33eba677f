#pragma once

#include <span>
#include <vector>

namespace detmath {

/// Axis-aligned box in continuous image coordinates, corner convention
/// x1 < x2, y1 < y2. Width is x2 - x1 with no "+1" pixel correction.
/// Degenerate boxes (w <= 0 or h <= 0) are rejected at construction.
struct BBox {
    double x1, y1, x2, y2;

    BBox(double x1, double y1, double x2, double y2);

    double width() const { return x2 - x1; }
    double height() const { return y2 - y1; }
    double area() const { return width() * height(); }

    bool operator==(const BBox&) const = default;
};

/// Intersection over union, area(a∩b)/area(a∪b). Symmetric, in [0,1],
/// 0 when disjoint.
double iou(const BBox& a, const BBox& b);

/// Intersection over ground truth, area(p∩g)/area(g). Asymmetric, in [0,1];
/// 1 when g is contained in p.
double iog(const BBox& p, const BBox& g);

/// Batched IoU: entry (i,j) equals iou(as[i], bs[j]). Empty inputs give an
/// empty matrix.
std::vector<std::vector<double>> pairwise_iou(std::span<const BBox> as,
                                              std::span<const BBox> bs);

} // namespace detmath
