#pragma once

#include "detmath/bbox.hpp"

namespace detmath {

/// 2-D Gaussian model of a box: center plus half-extents, all in pixels.
struct GaussianBox {
    double cx, cy; // center
    double hw, hh; // half-width w/2 and half-height h/2, both > 0

    GaussianBox(double cx, double cy, double hw, double hh);

    bool operator==(const GaussianBox&) const = default;
};

/// Normalization constant for nwd(). Dataset-dependent; the default is this
/// toolkit's convention (order of the mean absolute face size in pixels at
/// WiderFace training resolution). Override via NwdConfig or the CLI.
struct NwdConfig {
    double c = 12.8;

    NwdConfig() = default;
    explicit NwdConfig(double c);
};

GaussianBox box_to_gaussian(const BBox& b);
BBox gaussian_to_box(const GaussianBox& g);

/// Euclidean norm of the (cx, cy, hw, hh) difference vector. Zero iff the
/// two Gaussians are identical.
double w2_distance(const GaussianBox& a, const GaussianBox& b);

/// Normalized Wasserstein distance exp(-W2/C), in (0,1]; 1 iff a == b.
double nwd(const GaussianBox& a, const GaussianBox& b, const NwdConfig& cfg);

} // namespace detmath
