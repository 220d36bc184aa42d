#include "firsim/fir_kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace firsim {

FilterChain::FilterChain(int count_, double time_constant_)
    : count(count_), time_constant(time_constant_) {
    if (count != 2 && count != 3) throw std::invalid_argument("filter count must be 2 or 3");
    if (!(time_constant > 0.0)) throw std::invalid_argument("time constant must be positive");
}

double time_constant_from_jerk(double delta_feed, double max_jerk) {
    if (!(delta_feed > 0.0)) throw std::invalid_argument("feed step must be positive");
    if (!(max_jerk > 0.0)) throw std::invalid_argument("jerk limit must be positive");
    return std::sqrt(delta_feed / max_jerk);
}

double identify_time_constant(double accel_duration, int filter_count) {
    if (!(accel_duration > 0.0)) throw std::invalid_argument("acceleration duration must be positive");
    if (filter_count != 2 && filter_count != 3)
        throw std::invalid_argument("filter count must be 2 or 3");
    return accel_duration / filter_count;
}

PiecewiseProfile filter_command(const PiecewisePoly& command, const FilterChain& chain,
                                double feed, double pulse_duration) {
    PiecewisePoly v = command;
    for (int i = 0; i < chain.count; ++i) v = v.convolved_with_box(chain.time_constant);
    PiecewiseProfile p;
    p.displacement = v.antiderivative();
    p.acceleration = v.derivative();
    p.jerk = p.acceleration.derivative();
    p.velocity = std::move(v);
    p.feed = feed;
    p.pulse_duration = pulse_duration;
    return p;
}

PiecewiseProfile analytic_profile_matching(double feed, double pulse_duration,
                                           const FilterChain& chain) {
    if (feed < 0.0) throw std::invalid_argument("feed must be nonnegative");
    if (feed == 0.0) return PiecewiseProfile{{}, {}, {}, {}, 0.0, pulse_duration};
    if (!(pulse_duration > 0.0)) throw std::invalid_argument("pulse duration must be positive");
    return filter_command(PiecewisePoly::constant_pulse(feed, 0.0, pulse_duration), chain, feed,
                          pulse_duration);
}

PiecewiseProfile analytic_profile_distinct(double feed, double pulse_duration, double tc_a,
                                           double tc_b) {
    if (feed < 0.0) throw std::invalid_argument("feed must be nonnegative");
    if (!(tc_a > 0.0) || !(tc_b > 0.0)) throw std::invalid_argument("time constants must be positive");
    if (feed == 0.0) return PiecewiseProfile{{}, {}, {}, {}, 0.0, pulse_duration};
    if (!(pulse_duration > 0.0)) throw std::invalid_argument("pulse duration must be positive");

    PiecewisePoly v = PiecewisePoly::constant_pulse(feed, 0.0, pulse_duration)
                          .convolved_with_box(tc_a)
                          .convolved_with_box(tc_b);
    PiecewiseProfile p;
    p.displacement = v.antiderivative();
    p.acceleration = v.derivative();
    p.jerk = p.acceleration.derivative();
    p.velocity = std::move(v);
    p.feed = feed;
    p.pulse_duration = pulse_duration;
    return p;
}

ProfileSample evaluate_profile(const PiecewiseProfile& profile, double t) {
    ProfileSample s;
    if (profile.velocity.empty()) return s;
    const double t0 = profile.velocity.start();
    const double t1 = profile.velocity.end();
    if (t <= t0) {
        s.jerk = profile.jerk.eval(t0);
        return s;
    }
    if (t >= t1) {
        s.position = profile.displacement.tail_value();
        return s;
    }
    s.position = profile.displacement.eval(t);
    s.velocity = profile.velocity.eval(t);
    s.acceleration = profile.acceleration.eval(t);
    s.jerk = profile.jerk.eval(t);
    return s;
}

} // namespace firsim
