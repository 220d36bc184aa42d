#include "firsim/gcode.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace firsim {

namespace {

constexpr double kMinFeedMmMin = 1e-9;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

struct Word {
    char letter;
    double value;
};

// Tokenize "G01 X1.5 Y-2" into letter/value words.
std::vector<Word> split_words(std::string_view body, int line_no) {
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError(line_no, std::string("unexpected character '") + c + "'");
        const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        ++i;
        std::size_t start = i;
        while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])) &&
               !std::isalpha(static_cast<unsigned char>(body[i])))
            ++i;
        std::string_view num = body.substr(start, i - start);
        double value = 0.0;
        if (num.empty() || !parse_double(num, value))
            throw ParseError(line_no, std::string("malformed number after '") + letter + "' word");
        words.push_back({letter, value});
    }
    return words;
}

} // namespace

void ProgramConfig::validate() const {
    if (default_feed_mm_min && !(*default_feed_mm_min > 0.0))
        throw ConfigError("default feed must be positive");
    if (!(tolerance_mm > 0.0)) throw ConfigError("tolerance must be positive");
    if (!(max_jerk > 0.0)) throw ConfigError("jerk limit must be positive");
    if (filter_count != 2 && filter_count != 3) throw ConfigError("filter count must be 2 or 3");
    if (!(sample_time_s > 0.0)) throw ConfigError("sample time must be positive");
    if (!(feed_override > 0.0) || feed_override > 2.0)
        throw ConfigError("feed override must be in (0, 2]");
    if (!(rapid_feed_mm_min > 0.0)) throw ConfigError("rapid feed must be positive");
}

CLBlock make_block(int index, const Vec3& start, const Vec3& end, double feed_mm_s, bool rapid) {
    CLBlock b;
    b.index = index;
    b.start = start;
    b.end = end;
    b.feed = feed_mm_s;
    b.length = distance(start, end);
    b.unit_dir = b.length > 0.0 ? (end - start) / b.length : Vec3{};
    b.rapid = rapid;
    return b;
}

std::vector<CLBlock> normalize_blocks(std::vector<CLBlock> raw) {
    std::vector<CLBlock> out;
    out.reserve(raw.size());
    for (const CLBlock& b : raw) {
        if (b.length <= 0.0) continue;
        if (!out.empty() && distance(out.back().end, b.start) > 1e-9)
            throw ParseError(0, "discontinuous path between blocks " +
                                    std::to_string(out.back().index) + " and " +
                                    std::to_string(b.index));
        out.push_back(b);
    }
    if (out.empty()) throw ParseError(0, "empty program after normalization");
    for (std::size_t k = 0; k < out.size(); ++k) out[k].index = static_cast<int>(k);
    return out;
}

Program parse_program(std::string_view text, const ProgramConfig& defaults) {
    Program program;
    program.config = defaults;

    Vec3 position{};
    std::optional<double> modal_feed_mm_min = defaults.default_feed_mm_min;

    std::vector<CLBlock> raw;
    std::vector<int> raw_lines;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        // strip ; comments
        if (std::size_t semi = line.find(';'); semi != std::string_view::npos)
            line = line.substr(0, semi);
        std::string_view body = trim(line);
        if (body.empty()) continue;

        if (body.front() == '(') {
            if (body.back() != ')') throw ParseError(line_no, "unterminated comment");
            std::string_view inner = trim(body.substr(1, body.size() - 2));
            // tolerance directive: (TOL <mm>)
            if (inner.size() >= 3) {
                std::string head(inner.substr(0, 3));
                for (char& c : head) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                if (head == "TOL") {
                    std::string_view arg = trim(inner.substr(3));
                    double tol = 0.0;
                    if (!parse_double(arg, tol) || !(tol > 0.0))
                        throw ParseError(line_no, "malformed tolerance directive");
                    program.config.tolerance_mm = tol;
                }
            }
            continue;
        }
        if (body.find('(') != std::string_view::npos)
            throw ParseError(line_no, "inline comments are not supported");

        std::vector<Word> words = split_words(body, line_no);

        int gcode = -1;
        std::optional<double> wx, wy, wz, wf;
        for (const Word& w : words) {
            switch (w.letter) {
            case 'N':
                break; // line numbers carry no state
            case 'G': {
                const double rounded = std::round(w.value);
                if (rounded != w.value || (rounded != 0.0 && rounded != 1.0))
                    throw ParseError(line_no, "unsupported command G" + std::to_string(w.value));
                if (gcode >= 0) throw ParseError(line_no, "multiple G words on one line");
                gcode = static_cast<int>(rounded);
                break;
            }
            case 'X':
            case 'Y':
            case 'Z': {
                auto& slot = w.letter == 'X' ? wx : (w.letter == 'Y' ? wy : wz);
                if (slot) throw ParseError(line_no, std::string("duplicate ") + w.letter + " word");
                slot = w.value;
                break;
            }
            case 'F':
                if (wf) throw ParseError(line_no, "duplicate F word");
                if (!(w.value > kMinFeedMmMin)) throw ParseError(line_no, "feed must be positive");
                wf = w.value;
                break;
            default:
                throw ParseError(line_no, std::string("unsupported command ") + w.letter +
                                              std::to_string(w.value));
            }
        }

        if (gcode < 0) throw ParseError(line_no, "missing G word");
        if (wf) modal_feed_mm_min = *wf;

        Vec3 target = position;
        if (wx) target.x = *wx;
        if (wy) target.y = *wy;
        if (wz) target.z = *wz;

        const bool rapid = gcode == 0;
        double feed_mm_min;
        if (rapid) {
            feed_mm_min = program.config.rapid_feed_mm_min;
        } else {
            if (!modal_feed_mm_min)
                throw ParseError(line_no, "no feedrate in effect (no F word seen and no default)");
            feed_mm_min = *modal_feed_mm_min;
        }

        raw.push_back(make_block(static_cast<int>(raw.size()), position, target,
                                 feed_mm_min / 60.0, rapid));
        raw_lines.push_back(line_no);
        position = target;
    }

    if (raw.empty()) throw ParseError(line_no, "program contains no motion");

    // normalize, keeping the surviving blocks' source lines
    std::vector<int> keep;
    {
        std::vector<CLBlock> out;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i].length <= 0.0) continue;
            out.push_back(raw[i]);
            keep.push_back(raw_lines[i]);
        }
        if (out.empty()) throw ParseError(line_no, "empty program after normalization");
        for (std::size_t k = 0; k < out.size(); ++k) out[k].index = static_cast<int>(k);
        program.blocks = std::move(out);
        program.source_lines = std::move(keep);
    }
    return program;
}

std::string to_gcode(const Program& program) {
    std::string out;
    out.reserve(program.blocks.size() * 48);
    char buf[160];
    for (const CLBlock& b : program.blocks) {
        if (b.rapid) {
            std::snprintf(buf, sizeof(buf), "G00 X%.12g Y%.12g Z%.12g\n", b.end.x, b.end.y,
                          b.end.z);
        } else {
            std::snprintf(buf, sizeof(buf), "G01 X%.12g Y%.12g Z%.12g F%.12g\n", b.end.x, b.end.y,
                          b.end.z, b.feed * 60.0);
        }
        out += buf;
    }
    return out;
}

} // namespace firsim
