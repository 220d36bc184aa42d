#include "firsim/corner_blending.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace firsim {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double corner_error_scale(double alpha, int filter_count) {
    const double a = alpha;
    if (filter_count == 2) {
        // alpha * (-a^3 + a^2 + 1) / 6
        return a * (-a * a * a + a * a + 1.0) / 6.0;
    }
    // (-16a^5 - 16a^4 + 8a^3 + 16a^2 + 85a + 1) / 384
    const double q =
        ((((-16.0 * a - 16.0) * a + 8.0) * a + 16.0) * a + 85.0) * a + 1.0;
    return std::abs(q) / 384.0;
}

} // namespace

double corner_angle(const Vec3& u1, const Vec3& u2) {
    const double turn = std::atan2(u1.cross(u2).norm(), u1.dot(u2));
    return std::numbers::pi - turn;
}

double tcp_error(double feed, double time_constant, double alpha, double theta, int filter_count) {
    if (!(feed > 0.0) || !(time_constant > 0.0))
        throw std::invalid_argument("feed and time constant must be positive");
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0, 1]");
    if (theta < 0.0 || theta > std::numbers::pi + 1e-12)
        throw std::invalid_argument("corner angle must be in [0, pi]");
    if (filter_count != 2 && filter_count != 3)
        throw std::invalid_argument("filter count must be 2 or 3");
    const double geom = std::sqrt(std::max(0.0, std::cos(theta) + 1.0));
    return kSqrt2 * feed * time_constant * corner_error_scale(alpha, filter_count) * geom;
}

AlphaResult max_alpha(double feed, double time_constant, double theta, double tolerance_mm,
                      int filter_count) {
    if (!(feed > 0.0) || !(time_constant > 0.0))
        throw std::invalid_argument("feed and time constant must be positive");
    if (tolerance_mm < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    if (theta < 0.0 || theta > std::numbers::pi + 1e-12)
        throw std::invalid_argument("corner angle must be in [0, pi]");

    const auto err = [&](double a) {
        return tcp_error(feed, time_constant, a, theta, filter_count);
    };

    AlphaResult res;
    res.floor_error = err(0.0);

    if (err(1.0) <= tolerance_mm) {
        res.alpha = 1.0;
        return res;
    }
    if (res.floor_error > tolerance_mm) {
        // only possible for the 3-filter chain, whose alpha = 0 error is
        // strictly positive
        res.alpha = 0.0;
        res.attainable = false;
        return res;
    }

    // Seeded scan: the error grows with alpha apart from a sub-1e-5 ripple
    // just below alpha = 1; scanning before bisecting keeps the bracket
    // valid regardless.
    constexpr int kScanPoints = 64;
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double a = static_cast<double>(i) / kScanPoints;
        if (err(a) <= tolerance_mm) {
            lo = a;
        } else {
            hi = a;
            break;
        }
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (err(mid) <= tolerance_mm)
            lo = mid;
        else
            hi = mid;
    }
    res.alpha = lo;
    return res;
}

BlendPulse blend_pulse_params(double feed, double alpha, const FilterChain& chain) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0, 1]");
    if (feed < 0.0) throw std::invalid_argument("feed must be nonnegative");
    BlendPulse p;
    p.corner_feed = alpha * feed;
    if (alpha == 0.0) {
        // stop-and-go: the zero-feed window (both sides together) must cover
        // the whole filter delay so the velocity actually reaches zero
        p.blend_duration = 0.5 * chain.total_delay();
    } else {
        p.blend_duration = chain.time_constant * (1.0 - alpha);
    }
    return p;
}

PiecewiseProfile blending_kinematics(double feed, double time_constant, double alpha,
                                     int filter_count) {
    if (!(feed > 0.0) || !(time_constant > 0.0))
        throw std::invalid_argument("feed and time constant must be positive");
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0, 1]");
    const FilterChain chain(filter_count, time_constant);
    const BlendPulse pulse = blend_pulse_params(feed, alpha, chain);
    if (pulse.blend_duration > time_constant + 1e-12)
        throw std::domain_error("unmodeled blend regime: blend pulse exceeds the time constant");

    // Outgoing-axis command: corner feed for T_b, then full feed. The
    // command extends well past the evaluation horizon so the profile around
    // half the total delay is unaffected by the cut-off.
    const double horizon = 2.0 * chain.total_delay() + 2.0 * pulse.blend_duration + time_constant;
    PiecewisePoly cmd;
    if (pulse.blend_duration > 0.0 && pulse.corner_feed != feed) {
        cmd = PiecewisePoly{{0.0, pulse.blend_duration, horizon},
                            {Poly::constant(pulse.corner_feed), Poly::constant(feed)}};
    } else {
        cmd = PiecewisePoly::constant_pulse(feed, 0.0, horizon);
    }
    return filter_command(cmd, chain, feed, pulse.blend_duration);
}

std::vector<LimitCurveRow> limit_curve_table(const std::vector<double>& theta_deg_grid,
                                             const std::vector<double>& tolerances_mm,
                                             double feed_mm_min, double max_jerk,
                                             const std::vector<int>& filter_counts) {
    if (theta_deg_grid.empty()) throw std::invalid_argument("empty angle grid");
    if (tolerances_mm.empty()) throw std::invalid_argument("empty tolerance list");
    if (filter_counts.empty()) throw std::invalid_argument("empty filter list");
    const double feed = feed_mm_min / 60.0;
    const double total_delay = 3.0 * time_constant_from_jerk(feed, max_jerk);

    std::vector<LimitCurveRow> rows;
    rows.reserve(theta_deg_grid.size() * tolerances_mm.size() * filter_counts.size());
    for (double theta_deg : theta_deg_grid) {
        const double theta = theta_deg * std::numbers::pi / 180.0;
        for (double tol : tolerances_mm) {
            for (int n : filter_counts) {
                const double tc = total_delay / n;
                const AlphaResult a = max_alpha(feed, tc, theta, tol, n);
                rows.push_back({theta_deg, tol, n, a.alpha, a.alpha * feed_mm_min});
            }
        }
    }
    return rows;
}

} // namespace firsim
