#pragma once

#include "firsim/piecewise.hpp"

namespace firsim {

/// Cascade of identical first-order FIR (box) filters. Each stage is a
/// unit-area rectangular impulse of width time_constant; the cascade delays
/// every signal by count * time_constant in total.
struct FilterChain {
    int count = 3;
    double time_constant = 0.0;

    FilterChain(int count_, double time_constant_);
    double total_delay() const { return count * time_constant; }
};

/// Time constant that keeps the peak jerk of a feed step delta_feed at or
/// below max_jerk: peak jerk of the filtered profile is delta_feed / T1^2.
double time_constant_from_jerk(double delta_feed, double max_jerk);

/// Time constant recovered from a measured acceleration-phase duration: the
/// acceleration phase of an n-stage cascade lasts exactly n * T1.
double identify_time_constant(double accel_duration, int filter_count);

/// Kinematic profile of one velocity pulse through a filter cascade, kept as
/// exact piecewise polynomials so durations, areas and peaks are closed-form.
struct PiecewiseProfile {
    PiecewisePoly displacement;
    PiecewisePoly velocity;
    PiecewisePoly acceleration;
    PiecewisePoly jerk;
    double feed = 0.0;           // commanded pulse amplitude, mm/s
    double pulse_duration = 0.0; // unfiltered pulse width, s

    double duration() const { return velocity.empty() ? 0.0 : velocity.end(); }
};

struct ProfileSample {
    double position = 0.0;
    double velocity = 0.0;
    double acceleration = 0.0;
    double jerk = 0.0;
};

/// Rectangular pulse (feed, pulse_duration) through count identical filters.
/// Short pulses (pulse_duration < total delay) are handled by the same
/// convolution algebra and simply never reach the commanded feed.
PiecewiseProfile analytic_profile_matching(double feed, double pulse_duration,
                                           const FilterChain& chain);

/// Rectangular pulse through two first-order filters with distinct time
/// constants. The constants may be passed in either order; the convolution
/// is symmetric in them.
PiecewiseProfile analytic_profile_distinct(double feed, double pulse_duration, double tc_a,
                                           double tc_b);

/// Evaluate a profile at time t. Times before the profile clamp to the
/// initial rest state, times at or past the end clamp to the terminal rest
/// state with the full displacement accumulated.
ProfileSample evaluate_profile(const PiecewiseProfile& profile, double t);

/// Build a profile (displacement/velocity/acceleration/jerk views) from an
/// arbitrary piecewise-polynomial velocity command filtered n times.
PiecewiseProfile filter_command(const PiecewisePoly& command, const FilterChain& chain,
                                double feed, double pulse_duration);

} // namespace firsim
