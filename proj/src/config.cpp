#include "detmath/config.hpp"

#include "detmath/widerface_io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace detmath {

namespace {

double to_double(const std::string& v, std::size_t line_no) {
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(line_no, "expected a number, got '" + v + "'");
    }
    return d;
}

int to_int(const std::string& v, std::size_t line_no) {
    int d = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(line_no, "expected an integer, got '" + v + "'");
    }
    return d;
}

std::vector<int> to_int_list(const std::string& v, std::size_t line_no) {
    std::vector<int> out;
    std::string item;
    std::istringstream stream(v);
    while (std::getline(stream, item, ',')) {
        out.push_back(to_int(item, line_no));
    }
    if (out.empty()) {
        throw ParseError(line_no, "expected a comma-separated integer list");
    }
    return out;
}

std::string strip(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    const std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_file(ToolConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (strip(line).empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected key=value");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));

        if (key == "nwd_c") {
            cfg.nwd_c = to_double(value, line_no);
        } else if (key == "sigma_repgt") {
            cfg.sigma_repgt = to_double(value, line_no);
        } else if (key == "sigma_repbox") {
            cfg.sigma_repbox = to_double(value, line_no);
        } else if (key == "epsilon") {
            cfg.epsilon = to_double(value, line_no);
        } else if (key == "alpha_iou") {
            cfg.alpha_iou = to_double(value, line_no);
        } else if (key == "nms_iou") {
            cfg.nms_iou = to_double(value, line_no);
        } else if (key == "eval_iou") {
            cfg.eval_iou = to_double(value, line_no);
        } else if (key == "erf_ratio") {
            cfg.erf_ratio = to_double(value, line_no);
        } else if (key == "anchor_base") {
            cfg.anchor_base = to_double(value, line_no);
        } else if (key == "anchor_strides") {
            cfg.anchor_strides = to_int_list(value, line_no);
        } else if (key == "anchor_octaves") {
            cfg.anchor_octaves = to_int(value, line_no);
        } else if (key == "anchor_ratio") {
            cfg.anchor_ratio = to_double(value, line_no);
        } else if (key == "gt") {
            cfg.gt_path = value;
        } else if (key == "det") {
            cfg.det_path = value;
        } else if (key == "chain") {
            cfg.chain_path = value;
        } else if (key == "subsets") {
            cfg.subsets_path = value;
        } else if (key == "out") {
            cfg.out_path = value;
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }
}

void validate_config(const ToolConfig& cfg) {
    const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (!(cfg.nwd_c > 0.0)) fail("nwd_c must be > 0");
    if (!(cfg.sigma_repgt >= 0.0 && cfg.sigma_repgt < 1.0)) fail("sigma_repgt must be in [0,1)");
    if (!(cfg.sigma_repbox >= 0.0 && cfg.sigma_repbox < 1.0)) fail("sigma_repbox must be in [0,1)");
    if (!(cfg.epsilon > 0.0)) fail("epsilon must be > 0");
    if (!(cfg.alpha_iou >= 0.0 && cfg.alpha_iou <= 1.0)) fail("alpha_iou must be in [0,1]");
    if (!(cfg.nms_iou >= 0.0 && cfg.nms_iou <= 1.0)) fail("nms_iou must be in [0,1]");
    if (!(cfg.eval_iou > 0.0 && cfg.eval_iou <= 1.0)) fail("eval_iou must be in (0,1]");
    if (!(cfg.erf_ratio > 0.0 && cfg.erf_ratio <= 1.0)) fail("erf_ratio must be in (0,1]");
    if (!(cfg.anchor_base > 0.0)) fail("anchor_base must be > 0");
    if (cfg.anchor_strides.empty()) fail("anchor_strides must be non-empty");
    for (int s : cfg.anchor_strides) {
        if (s < 1) fail("anchor_strides entries must be >= 1");
    }
    if (cfg.anchor_octaves < 1) fail("anchor_octaves must be >= 1");
    if (!(cfg.anchor_ratio > 0.0)) fail("anchor_ratio must be > 0");
}

void print_config(std::ostream& out, const ToolConfig& cfg) {
    out << "nwd_c=" << cfg.nwd_c << "\n";
    out << "sigma_repgt=" << cfg.sigma_repgt << "\n";
    out << "sigma_repbox=" << cfg.sigma_repbox << "\n";
    out << "epsilon=" << cfg.epsilon << "\n";
    out << "alpha_iou=" << cfg.alpha_iou << "\n";
    out << "nms_iou=" << cfg.nms_iou << "\n";
    out << "eval_iou=" << cfg.eval_iou << "\n";
    out << "erf_ratio=" << cfg.erf_ratio << "\n";
    out << "anchor_base=" << cfg.anchor_base << "\n";
    out << "anchor_strides=";
    for (std::size_t i = 0; i < cfg.anchor_strides.size(); ++i) {
        if (i > 0) out << ',';
        out << cfg.anchor_strides[i];
    }
    out << "\n";
    out << "anchor_octaves=" << cfg.anchor_octaves << "\n";
    out << "anchor_ratio=" << cfg.anchor_ratio << "\n";
    out << "gt=" << cfg.gt_path << "\n";
    out << "det=" << cfg.det_path << "\n";
    out << "chain=" << cfg.chain_path << "\n";
    out << "subsets=" << cfg.subsets_path << "\n";
    out << "out=" << cfg.out_path << "\n";
}

} // namespace detmath
