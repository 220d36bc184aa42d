#pragma once

#include "firsim/corner_blending.hpp"
#include "firsim/gcode.hpp"

#include <span>
#include <string>
#include <vector>

namespace firsim {

/// One span of the synchronized axis command: every axis holds a constant
/// velocity (one component of the vector) for the duration. Storing the
/// vector per span keeps the three axis trains on a shared time base by
/// construction.
struct PulseSegment {
    double duration = 0.0;
    Vec3 velocity; // mm/s per axis
};

struct PulseTrain {
    std::vector<PulseSegment> segments;
    Vec3 start_point;

    double total_duration() const;
    Vec3 displacement() const;
    /// (amplitude, duration) view of one axis (0 = X, 1 = Y, 2 = Z).
    std::vector<std::pair<double, double>> axis_pulses(int axis) const;
};

struct BlockPlan {
    int index = 0;
    double length = 0.0;       // mm
    double feed = 0.0;         // mm/s, after override
    double pulse_duration = 0.0; // adjusted T_v, s
};

struct PlanReport {
    std::vector<BlockPlan> blocks;
    std::vector<CornerPlan> corners;
    std::vector<std::string> warnings;
    double time_constant = 0.0;
    int filter_count = 0;
};

/// One blend plan per interior junction: the corner angle from the adjoining
/// unit vectors, alpha from the tolerance at the smaller of the two feeds,
/// and the blending pulse parameters. Unattainable tolerances degrade to a
/// full stop and are reported through the plan flags.
std::vector<CornerPlan> plan_corners(std::span<const CLBlock> blocks, double tolerance_mm,
                                     const FilterChain& chain);

/// Main-pulse duration of a block after subtracting the area the adjoining
/// blending pulses contribute: T_v = L/F - a_prev*Tb_prev - a_next*Tb_next.
/// The alpha arguments are the blend amplitudes relative to this block's own
/// feed. A negative result signals a segment shorter than its blend windows;
/// the planner resolves it by shrinking the adjoining alphas.
double adjusted_pulse_duration(double length, double feed, double alpha_prev, double tb_prev,
                               double alpha_next, double tb_next);

struct PlannedProgram {
    PulseTrain train;
    PlanReport report;
};

/// Build the synchronized per-axis pulse train: per block a main pulse at
/// the commanded feed, and per junction two back-to-back blending pulses
/// (one along each adjoining direction). Pulse areas reproduce the axis
/// displacements exactly. Corner plans are taken by value because short
/// segments may force their alphas down.
PlannedProgram plan_pulse_train(std::span<const CLBlock> blocks, std::vector<CornerPlan> corners,
                                const FilterChain& chain);

/// Full planning pipeline for a parsed program: feed override, time-constant
/// sizing from the jerk limit and the largest planned feed, corner planning,
/// and pulse-train synthesis.
PlannedProgram plan_program(const Program& program);

/// The filter chain plan_program would use for this program.
FilterChain chain_for_program(const Program& program);

} // namespace firsim
