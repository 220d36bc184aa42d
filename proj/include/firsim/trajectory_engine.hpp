#pragma once

#include "firsim/feed_planner.hpp"

#include <iosfwd>
#include <memory>

namespace firsim {

/// Exact evaluator for a pulse train passed through the filter cascade.
/// The cascade's impulse response (an n-fold box convolution with compact
/// support) and its running integrals are kept as piecewise polynomials;
/// every query reduces to the train segments overlapping one kernel window,
/// so results carry no quadrature error and no cancellation growth on long
/// programs.
class FilteredSignal {
public:
    FilteredSignal(const PulseTrain& train, const FilterChain& chain);

    Vec3 velocity(double t) const;
    Vec3 acceleration(double t) const;
    Vec3 jerk(double t) const;
    Vec3 position(double t) const;

    double command_duration() const { return knots_.back(); }
    double total_delay() const { return total_delay_; }
    /// Filtered motion lasts the command duration plus the filter delay.
    double duration() const { return command_duration() + total_delay_; }
    Vec3 start_point() const { return start_; }

private:
    Vec3 window_sum(double t, const PiecewisePoly& weight, double before, double after) const;

    std::vector<double> knots_;      // segment boundaries, knots_[0] = 0
    std::vector<Vec3> values_;       // segment velocities
    std::vector<Vec3> prefix_disp_;  // displacement accumulated before segment m
    Vec3 start_;
    double total_delay_ = 0.0;
    PiecewisePoly kernel_;       // impulse response of the cascade
    PiecewisePoly kernel_rate_;  // its derivative
    PiecewisePoly kernel_step_;  // its integral (step response), tail 1
    PiecewisePoly kernel_ramp_;  // integral of the step response
};

struct KinematicTrace {
    double sample_time = 0.0;
    Vec3 start_point;
    double total_delay = 0.0;
    std::vector<double> px, py, pz;
    std::vector<double> vx, vy, vz;
    std::vector<double> ax, ay, az;
    std::vector<double> jx, jy, jz;
    std::vector<double> v_tan;      // mm/s
    std::vector<double> arc_length; // filled with positions
    std::shared_ptr<const FilteredSignal> signal;

    std::size_t size() const { return v_tan.size(); }
    double time_at(std::size_t i) const { return static_cast<double>(i) * sample_time; }
    double duration() const { return v_tan.empty() ? 0.0 : time_at(v_tan.size() - 1); }
    bool has_positions() const { return !px.empty(); }
    Vec3 position_at(std::size_t i) const { return {px[i], py[i], pz[i]}; }
};

/// Sample the filtered axis velocities (plus acceleration, jerk and the
/// tangential feed) on a uniform grid. The sample time must resolve the
/// filter: Ts <= T1 / 10. Positions are added by integrate_positions.
KinematicTrace filter_pulse_train(const PulseTrain& train, const FilterChain& chain,
                                  double sample_time);

/// Fill the position arrays by integrating the filtered velocities from the
/// program start point (exact piecewise integration), plus the running path
/// length used by arc-length queries.
void integrate_positions(KinematicTrace& trace);

/// Predicted machining time in closed form: the sum of the main pulse
/// durations, both blending pulses of every junction, and the filter delay.
double cycle_time(const PlanReport& report, const FilterChain& chain);

/// Smallest distance from a junction point to the sampled path (piecewise
/// linear interpolation) inside the blend window around the junction
/// crossing; this is the measured counterpart of the closed-form corner
/// error. crossing_time is the command-stream junction time; the filtered
/// closest approach happens half the filter delay later.
double measure_contour_error(const KinematicTrace& trace, const Vec3& junction,
                             double crossing_time);

/// Tangential feed at a query time, linearly interpolated.
double feature_velocity(const KinematicTrace& trace, double time);

/// Tangential feed where the path first reaches the given arc length.
double feature_velocity_at_arc_length(const KinematicTrace& trace, double arc_length);

/// One row per sample: time, positions, velocities, accelerations, jerks,
/// and the tangential feed in mm/min. Locale-independent, deterministic.
void write_csv(std::ostream& os, const KinematicTrace& trace);

} // namespace firsim
