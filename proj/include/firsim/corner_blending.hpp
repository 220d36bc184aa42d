#pragma once

#include "firsim/fir_kinematics.hpp"
#include "firsim/vec3.hpp"

#include <vector>

namespace firsim {

/// Blend decision for one interior junction.
struct CornerPlan {
    int junction_index = 0;   // junction j sits between blocks j and j+1
    double corner_angle = 0.0; // theta, rad; pi = collinear continuation, 0 = reversal
    double alpha = 1.0;        // feed scale in [0, 1]
    double corner_feed = 0.0;  // F_c = alpha * min(adjoining feeds), mm/s
    double blend_duration = 0.0; // per-side blending pulse width T_b, s
    double predicted_error = 0.0; // closed-form corner deviation, mm
    bool full_stop = false;       // junction degraded to a stop-and-go
    bool tolerance_attainable = true;
    double crossing_time = -1.0; // command-stream junction time, filled by the planner
};

/// Interior corner angle between two unit direction vectors: pi for a
/// collinear continuation (no deviation), 0 for a full reversal.
double corner_angle(const Vec3& u1, const Vec3& u2);

/// Closed-form maximum corner deviation of a blended junction at feed scale
/// alpha. Linear in feed and time constant; vanishes at theta = pi.
/// For a 3-filter chain the alpha = 0 intercept is strictly positive (the
/// blend window is shorter than the total delay, so the feed never reaches
/// zero).
double tcp_error(double feed, double time_constant, double alpha, double theta, int filter_count);

struct AlphaResult {
    double alpha = 0.0;
    bool attainable = true;
    double floor_error = 0.0; // tcp_error at alpha = 0 (nonzero only for 3 filters)
};

/// Largest alpha in [0, 1] whose predicted corner deviation stays within
/// tolerance_mm, found by a seeded scan plus bisection to |dalpha| <= 1e-9.
/// When the tolerance sits below the 3-filter alpha = 0 floor the result is
/// flagged unattainable and carries the floor; callers degrade the junction
/// to a full stop.
AlphaResult max_alpha(double feed, double time_constant, double theta, double tolerance_mm,
                      int filter_count);

struct BlendPulse {
    double corner_feed = 0.0;    // F_c, mm/s
    double blend_duration = 0.0; // T_b per side, s
};

/// Blending pulse parameters for a junction at feed scale alpha.
/// F_c = alpha * feed. For alpha > 0 the per-side pulse width is
/// T_b = T1 * (1 - alpha), the transition window under which the closed-form
/// corner error above is exact. alpha = 0 requests a stop-and-go junction,
/// whose zero-amplitude window must span the full filter delay: T_b = T_d/2.
BlendPulse blend_pulse_params(double feed, double alpha, const FilterChain& chain);

/// Kinematic profile of the axis that starts moving at a blended junction:
/// a pulse at alpha*feed for T_b followed by the full feed, filtered by the
/// chain. Evaluating velocity/displacement at half the total delay gives the
/// cornering feed contribution and the corner-deviation leg length.
PiecewiseProfile blending_kinematics(double feed, double time_constant, double alpha,
                                     int filter_count);

struct LimitCurveRow {
    double theta_deg = 0.0;
    double tolerance_mm = 0.0;
    int filters = 0;
    double alpha = 0.0;
    double corner_feed_mm_min = 0.0;
};

/// Cornering feed limit curves: for each angle on the grid and each
/// tolerance, the maximum alpha and resulting cornering feed for 2- and
/// 3-filter chains modelling the same machine. The two chains share the
/// total delay (anchored by the jerk limit applied to the 3-filter chain:
/// T_d = 3 * sqrt(F / max_jerk), T1 = T_d / n), the configuration under
/// which the 2-vs-3 comparison is meaningful.
std::vector<LimitCurveRow> limit_curve_table(const std::vector<double>& theta_deg_grid,
                                             const std::vector<double>& tolerances_mm,
                                             double feed_mm_min, double max_jerk,
                                             const std::vector<int>& filter_counts);

} // namespace firsim
