#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <vector>

namespace detmath {

/// One conv/pool stage. Padding is carried for completeness but does not
/// enter the receptive-field size (it shifts offsets, not extent).
struct LayerSpec {
    int kernel = 1;
    int stride = 1;
    int dilation = 1;
    int padding = 0;

    LayerSpec() = default;
    LayerSpec(int kernel, int stride, int dilation = 1, int padding = 0);

    int effective_kernel() const { return dilation * (kernel - 1) + 1; }
};

/// Accumulated receptive field of a layer chain: theoretical size in input
/// pixels and cumulative stride (jump).
struct ReceptiveField {
    std::int64_t size = 1;
    std::int64_t jump = 1;

    bool operator==(const ReceptiveField&) const = default;
};

/// Fold one layer onto an accumulated receptive field:
/// size' = size + (effective_kernel - 1) * jump, jump' = jump * stride.
ReceptiveField rf_extend(ReceptiveField rf, const LayerSpec& layer);

/// Receptive field of a whole chain, starting from size 1, jump 1.
ReceptiveField receptive_field_chain(std::span<const LayerSpec> layers);

/// Suggested anchor edge: the theoretical receptive field scaled down by
/// the effective-receptive-field ratio, erf_ratio in (0,1].
double effective_anchor_size(const ReceptiveField& trf, double erf_ratio);

/// Exponential normalization mapping attention logits from [0,1] to [1,e].
/// Monotone; multiplying features by the result never attenuates them.
double seam_exp_norm(double z);

/// Parses a chain file: one layer per line, "kernel stride dilation padding",
/// blank lines and '#' comments ignored. Errors carry the line number.
std::vector<LayerSpec> parse_layer_chain(std::istream& in);

} // namespace detmath
