#include "detmath/arch_calc.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace detmath {

LayerSpec::LayerSpec(int kernel_, int stride_, int dilation_, int padding_)
    : kernel(kernel_), stride(stride_), dilation(dilation_), padding(padding_) {
    if (kernel < 1 || stride < 1 || dilation < 1 || padding < 0) {
        throw std::invalid_argument("LayerSpec: kernel/stride/dilation >= 1, padding >= 0");
    }
}

ReceptiveField rf_extend(ReceptiveField rf, const LayerSpec& layer) {
    if (layer.kernel < 1 || layer.stride < 1 || layer.dilation < 1 || layer.padding < 0) {
        throw std::invalid_argument("rf_extend: invalid layer");
    }
    rf.size += static_cast<std::int64_t>(layer.effective_kernel() - 1) * rf.jump;
    rf.jump *= layer.stride;
    return rf;
}

ReceptiveField receptive_field_chain(std::span<const LayerSpec> layers) {
    if (layers.empty()) {
        throw std::invalid_argument("receptive_field_chain: empty chain");
    }
    ReceptiveField rf;
    for (const LayerSpec& layer : layers) {
        rf = rf_extend(rf, layer);
    }
    return rf;
}

double effective_anchor_size(const ReceptiveField& trf, double erf_ratio) {
    if (!(erf_ratio > 0.0 && erf_ratio <= 1.0)) {
        throw std::invalid_argument("effective_anchor_size: erf_ratio must be in (0,1]");
    }
    return static_cast<double>(trf.size) * erf_ratio;
}

double seam_exp_norm(double z) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw std::domain_error("seam_exp_norm: z must be in [0,1]");
    }
    return std::exp(z);
}

std::vector<LayerSpec> parse_layer_chain(std::istream& in) {
    std::vector<LayerSpec> layers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string tok;
        int vals[4] = {0, 0, 1, 0};
        int n = 0;
        while (fields >> tok) {
            if (n >= 4) {
                throw std::runtime_error("chain line " + std::to_string(line_no) +
                                         ": expected 4 fields (kernel stride dilation padding)");
            }
            int v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw std::runtime_error("chain line " + std::to_string(line_no) +
                                         ": non-integer field '" + tok + "'");
            }
            vals[n++] = v;
        }
        if (n == 0) continue; // blank or comment-only line
        if (n != 4) {
            throw std::runtime_error("chain line " + std::to_string(line_no) +
                                     ": expected 4 fields (kernel stride dilation padding)");
        }
        try {
            layers.emplace_back(vals[0], vals[1], vals[2], vals[3]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("chain line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return layers;
}

} // namespace detmath
