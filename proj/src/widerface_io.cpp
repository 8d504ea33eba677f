#include "detmath/widerface_io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string_view>

namespace detmath {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "non-numeric field '" + std::string(tok) + "'");
    }
    return v;
}

int parse_int(std::string_view tok, std::size_t line_no) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "non-integer field '" + std::string(tok) + "'");
    }
    return v;
}

// Line source with a one-line pushback, used to peek past zero-count stubs.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (pushed_) {
            line = *pushed_;
            pushed_.reset();
            ++line_no_;
            return true;
        }
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no_;
        return true;
    }

    void push_back(std::string line) {
        pushed_ = std::move(line);
        --line_no_;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::optional<std::string> pushed_;
    std::size_t line_no_ = 0;
};

bool is_blank(const std::string& line) { return split_ws(line).empty(); }

std::string trimmed(const std::string& line) {
    const std::size_t b = line.find_first_not_of(" \t\r");
    const std::size_t e = line.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return line.substr(b, e - b + 1);
}

// The conventional stub under a zero count: a line of all-zero numbers.
bool is_zero_stub(const std::string& line) {
    const auto toks = split_ws(line);
    if (toks.size() < 4) return false;
    for (std::string_view t : toks) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || v != 0.0) return false;
    }
    return true;
}

long parse_count_line(LineReader& reader, const std::string& path) {
    std::string line;
    if (!reader.next(line)) {
        throw ParseError(reader.line_no() + 1, "missing count line after '" + path + "'");
    }
    const auto toks = split_ws(line);
    if (toks.size() != 1) {
        throw ParseError(reader.line_no(), "expected a bare face count after '" + path + "'");
    }
    const long n = parse_int(toks[0], reader.line_no());
    if (n < 0) {
        throw ParseError(reader.line_no(), "negative count");
    }
    return n;
}

// Shortest representation that parses back to the same double.
std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

} // namespace

GroundTruthFile parse_ground_truth(std::istream& in) {
    GroundTruthFile out;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (is_blank(line)) continue;
        ImageRecord rec;
        rec.image_path = trimmed(line);
        const long declared = parse_count_line(reader, rec.image_path);

        if (declared == 0) {
            // Conventional single zero-line may or may not be present.
            if (reader.next(line) && !is_zero_stub(line)) {
                reader.push_back(line);
            }
        }
        for (long i = 0; i < declared; ++i) {
            if (!reader.next(line)) {
                throw ParseError(reader.line_no() + 1, "truncated record for '" + rec.image_path +
                                                           "': declared " +
                                                           std::to_string(declared) + " faces, got " +
                                                           std::to_string(i));
            }
            const auto toks = split_ws(line);
            if (toks.size() != 10) {
                throw ParseError(reader.line_no(),
                                 "expected 10 fields (x y w h blur expression illumination "
                                 "invalid occlusion pose), got " +
                                     std::to_string(toks.size()));
            }
            const double x = parse_double(toks[0], reader.line_no());
            const double y = parse_double(toks[1], reader.line_no());
            const double w = parse_double(toks[2], reader.line_no());
            const double h = parse_double(toks[3], reader.line_no());
            FaceAttributes attrs;
            attrs.blur = parse_int(toks[4], reader.line_no());
            attrs.expression = parse_int(toks[5], reader.line_no());
            attrs.illumination = parse_int(toks[6], reader.line_no());
            attrs.invalid = parse_int(toks[7], reader.line_no());
            attrs.occlusion = parse_int(toks[8], reader.line_no());
            attrs.pose = parse_int(toks[9], reader.line_no());

            if (w <= 0.0 || h <= 0.0) {
                ++out.report.dropped_degenerate;
                continue;
            }
            if (attrs.invalid == 1) {
                ++out.report.dropped_invalid;
                continue;
            }
            rec.faces.emplace_back(x, y, x + w, y + h);
            rec.attributes.push_back(attrs);
            ++out.report.boxes_kept;
        }
        ++out.report.images;
        out.records.push_back(std::move(rec));
    }
    return out;
}

DetectionFile parse_detections(std::istream& in) {
    DetectionFile out;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (is_blank(line)) continue;
        DetectionRecord rec;
        rec.image_path = trimmed(line);
        const long declared = parse_count_line(reader, rec.image_path);

        if (declared == 0) {
            if (reader.next(line) && !is_zero_stub(line)) {
                reader.push_back(line);
            }
        }
        for (long i = 0; i < declared; ++i) {
            if (!reader.next(line)) {
                throw ParseError(reader.line_no() + 1, "truncated record for '" + rec.image_path +
                                                           "': declared " +
                                                           std::to_string(declared) +
                                                           " detections, got " + std::to_string(i));
            }
            const auto toks = split_ws(line);
            if (toks.size() != 5) {
                throw ParseError(reader.line_no(), "expected 5 fields (x y w h score), got " +
                                                       std::to_string(toks.size()));
            }
            const double x = parse_double(toks[0], reader.line_no());
            const double y = parse_double(toks[1], reader.line_no());
            const double w = parse_double(toks[2], reader.line_no());
            const double h = parse_double(toks[3], reader.line_no());
            const double score = parse_double(toks[4], reader.line_no());
            if (!(score >= 0.0 && score <= 1.0)) {
                throw ParseError(reader.line_no(),
                                 "score outside [0,1]: " + std::string(toks[4]));
            }
            if (w <= 0.0 || h <= 0.0) {
                ++out.report.dropped_degenerate;
                continue;
            }
            rec.detections.emplace_back(BBox{x, y, x + w, y + h}, score);
            ++out.report.boxes_kept;
        }
        ++out.report.images;
        out.records.push_back(std::move(rec));
    }
    return out;
}

void write_ground_truth(std::ostream& out, std::span<const ImageRecord> records) {
    for (const ImageRecord& rec : records) {
        out << rec.image_path << "\n" << rec.faces.size() << "\n";
        if (rec.faces.empty()) {
            out << "0 0 0 0 0 0 0 0 0 0\n";
            continue;
        }
        for (std::size_t i = 0; i < rec.faces.size(); ++i) {
            const BBox& b = rec.faces[i];
            const FaceAttributes a =
                i < rec.attributes.size() ? rec.attributes[i] : FaceAttributes{};
            out << format_number(b.x1) << ' ' << format_number(b.y1) << ' '
                << format_number(b.width()) << ' ' << format_number(b.height()) << ' ' << a.blur
                << ' ' << a.expression << ' ' << a.illumination << ' ' << a.invalid << ' '
                << a.occlusion << ' ' << a.pose << "\n";
        }
    }
}

void write_detections(std::ostream& out, std::span<const DetectionRecord> records) {
    for (const DetectionRecord& rec : records) {
        out << rec.image_path << "\n" << rec.detections.size() << "\n";
        for (const Detection& d : rec.detections) {
            out << format_number(d.box.x1) << ' ' << format_number(d.box.y1) << ' '
                << format_number(d.box.width()) << ' ' << format_number(d.box.height()) << ' '
                << format_number(d.score) << "\n";
        }
    }
}

std::map<std::string, Subset> parse_subset_list(std::istream& in) {
    std::map<std::string, Subset> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line) || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError(line_no, "expected 'path,subset'");
        }
        const std::string path = line.substr(0, comma);
        const std::string name = line.substr(comma + 1);
        Subset subset;
        if (name == "easy") {
            subset = Subset::easy;
        } else if (name == "medium") {
            subset = Subset::medium;
        } else if (name == "hard") {
            subset = Subset::hard;
        } else {
            throw ParseError(line_no, "unknown subset '" + name + "'");
        }
        if (!out.emplace(path, subset).second) {
            throw ParseError(line_no, "image '" + path + "' assigned to more than one subset");
        }
    }
    return out;
}

void write_ap_summary(std::ostream& out, std::span<const SubsetCurve> results) {
    out << "subset    AP\n";
    char buf[64];
    for (const SubsetCurve& r : results) {
        std::snprintf(buf, sizeof(buf), "%-8s  %.6f\n", subset_name(r.subset), r.curve.ap);
        out << buf;
    }
}

void write_pr_csv(std::ostream& out, std::span<const SubsetCurve> results) {
    out << "subset,threshold,precision,recall\n";
    char buf[128];
    for (const SubsetCurve& r : results) {
        for (const PrPoint& p : r.curve.points) {
            std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", subset_name(r.subset),
                          p.threshold, p.precision, p.recall);
            out << buf;
        }
    }
}

void write_eval_report(std::ostream& summary_out, std::ostream& csv_out,
                       std::span<const SubsetCurve> results) {
    write_ap_summary(summary_out, results);
    write_pr_csv(csv_out, results);
}

} // namespace detmath
