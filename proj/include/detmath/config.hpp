#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace detmath {

/// Tool-wide settings: a flat key=value file, overridden by CLI flags.
/// Unknown keys are rejected so a typo cannot silently fall back to a
/// default.
struct ToolConfig {
    double nwd_c = 12.8;
    double sigma_repgt = 0.5;
    double sigma_repbox = 0.0;
    double epsilon = 1e-7;
    double alpha_iou = 0.5; // alpha_nwd is 1 - alpha_iou
    double nms_iou = 0.5;
    double eval_iou = 0.5;
    double erf_ratio = 0.3;
    double anchor_base = 16.0;
    std::vector<int> anchor_strides = {4, 8, 16};
    int anchor_octaves = 3;
    double anchor_ratio = 1.2;
    std::string gt_path;
    std::string det_path;
    std::string chain_path;
    std::string subsets_path;
    std::string out_path;
};

/// Applies key=value lines ('#' comments and blanks ignored) onto cfg.
/// Unknown keys or malformed values raise ParseError.
void apply_config_file(ToolConfig& cfg, std::istream& in);

/// Range-checks every field against its module's contract; throws
/// std::invalid_argument naming the offending key.
void validate_config(const ToolConfig& cfg);

/// Emits the effective configuration as key=value lines, one per field.
void print_config(std::ostream& out, const ToolConfig& cfg);

} // namespace detmath
