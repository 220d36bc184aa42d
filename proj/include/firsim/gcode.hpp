#pragma once

#include "firsim/vec3.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace firsim {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProgramConfig {
    std::optional<double> default_feed_mm_min; // modal F seed; unset -> first G01 must carry F
    double tolerance_mm = 0.02;                // corner blending error budget
    double max_jerk = 50000.0;                 // mm/s^3
    int filter_count = 3;                      // 2 or 3
    double sample_time_s = 0.001;
    double feed_override = 1.0;                // (0, 2]
    double rapid_feed_mm_min = 10000.0;        // planning feed for G00 moves

    void validate() const;
};

/// One linear move with resolved modal state. Feed is stored in mm/s.
struct CLBlock {
    int index = 0;
    Vec3 start;
    Vec3 end;
    double feed = 0.0; // mm/s
    double length = 0.0;
    Vec3 unit_dir;
    bool rapid = false;
};

struct Program {
    std::vector<CLBlock> blocks;
    ProgramConfig config;
    std::vector<int> source_lines; // block index -> 1-based source line
};

/// Parse a linear-move part program. Supported words: N, G00, G01, X, Y, Z, F
/// (case-insensitive, one command per line); "( ... )" and "; ..." comments;
/// the "(TOL <mm>)" directive overrides the configured tolerance.
/// Coordinates are absolute mm, feeds mm/min. Unspecified axes and feeds
/// inherit the modal state. Zero-length moves are dropped during
/// normalization. Throws ParseError with a 1-based line number.
Program parse_program(std::string_view text, const ProgramConfig& defaults);

/// Drop zero-length moves, renumber, and enforce chain continuity
/// (blocks[k].end == blocks[k+1].start). Throws ParseError on a gap or when
/// nothing remains.
std::vector<CLBlock> normalize_blocks(std::vector<CLBlock> raw);

/// Render blocks back to G-code text (feeds in mm/min). Round-trips through
/// parse_program to identical geometry.
std::string to_gcode(const Program& program);

/// Rebuild derived fields (length, unit_dir) of a block from its endpoints.
CLBlock make_block(int index, const Vec3& start, const Vec3& end, double feed_mm_s,
                   bool rapid = false);

} // namespace firsim
