#include "firsim/feed_planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace firsim {

namespace {

constexpr double kDegenerateDuration = 1e-12;

std::string format_um(double mm) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", mm * 1000.0);
    return buf;
}

} // namespace

double PulseTrain::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

Vec3 PulseTrain::displacement() const {
    Vec3 d;
    for (const auto& s : segments) d += s.velocity * s.duration;
    return d;
}

std::vector<std::pair<double, double>> PulseTrain::axis_pulses(int axis) const {
    std::vector<std::pair<double, double>> out;
    out.reserve(segments.size());
    for (const auto& s : segments) out.emplace_back(s.velocity[axis], s.duration);
    return out;
}

std::vector<CornerPlan> plan_corners(std::span<const CLBlock> blocks, double tolerance_mm,
                                     const FilterChain& chain) {
    std::vector<CornerPlan> plans;
    if (blocks.size() < 2) return plans;
    plans.reserve(blocks.size() - 1);
    for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
        const CLBlock& in = blocks[j];
        const CLBlock& out = blocks[j + 1];
        CornerPlan plan;
        plan.junction_index = static_cast<int>(j);
        plan.corner_angle = corner_angle(in.unit_dir, out.unit_dir);
        const double feed = std::min(in.feed, out.feed);
        const AlphaResult sol =
            max_alpha(feed, chain.time_constant, plan.corner_angle, tolerance_mm, chain.count);
        plan.alpha = sol.alpha;
        plan.tolerance_attainable = sol.attainable;
        plan.full_stop = !sol.attainable;
        const BlendPulse pulse = blend_pulse_params(feed, plan.alpha, chain);
        plan.corner_feed = pulse.corner_feed;
        plan.blend_duration = pulse.blend_duration;
        plan.predicted_error =
            plan.full_stop ? 0.0
                           : tcp_error(feed, chain.time_constant, plan.alpha, plan.corner_angle,
                                       chain.count);
        plans.push_back(plan);
    }
    return plans;
}

double adjusted_pulse_duration(double length, double feed, double alpha_prev, double tb_prev,
                               double alpha_next, double tb_next) {
    if (!(length > 0.0) || !(feed > 0.0))
        throw std::invalid_argument("length and feed must be positive");
    return length / feed - alpha_prev * tb_prev - alpha_next * tb_next;
}

PlannedProgram plan_pulse_train(std::span<const CLBlock> blocks, std::vector<CornerPlan> corners,
                                const FilterChain& chain) {
    if (blocks.empty()) throw std::invalid_argument("no blocks to plan");
    if (corners.size() + 1 != blocks.size() && !(blocks.size() == 1 && corners.empty()))
        throw std::invalid_argument("corner plan count must be block count - 1");

    PlannedProgram out;
    out.report.time_constant = chain.time_constant;
    out.report.filter_count = chain.count;

    const std::size_t n_blocks = blocks.size();
    std::vector<double> tv(n_blocks, 0.0);

    // Effective blend amplitude relative to a block's own feed. With equal
    // adjoining feeds this is the junction alpha itself; with unequal feeds
    // it scales by Fc/F so the pulse-area identity stays exact.
    const auto effective_alpha = [&](const CornerPlan& c, const CLBlock& b) {
        return b.feed > 0.0 ? c.corner_feed / b.feed : 0.0;
    };

    const auto recompute = [&](std::size_t k) {
        const CLBlock& b = blocks[k];
        const double ap = k > 0 ? effective_alpha(corners[k - 1], b) : 0.0;
        const double tp = k > 0 ? corners[k - 1].blend_duration : 0.0;
        const double an = k < corners.size() ? effective_alpha(corners[k], b) : 0.0;
        const double tn = k < corners.size() ? corners[k].blend_duration : 0.0;
        tv[k] = adjusted_pulse_duration(b.length, b.feed, ap, tp, an, tn);
    };
    for (std::size_t k = 0; k < n_blocks; ++k) recompute(k);

    // Segments shorter than their blend windows: shrink the adjoining
    // junction alphas (which can only tighten the corner error) until every
    // main pulse is nonnegative.
    std::vector<bool> warned(corners.size(), false);
    for (int pass = 0; pass < 400; ++pass) {
        bool any_negative = false;
        for (std::size_t k = 0; k < n_blocks; ++k) {
            if (tv[k] >= -kDegenerateDuration) continue;
            any_negative = true;
            for (std::size_t j : {k > 0 ? k - 1 : corners.size(), k < corners.size() ? k : corners.size()}) {
                if (j >= corners.size()) continue;
                CornerPlan& c = corners[j];
                if (c.alpha <= 0.0) continue;
                c.alpha *= 0.9;
                if (c.alpha < 1e-6) c.alpha = 0.0;
                const double feed =
                    std::min(blocks[j].feed, blocks[j + 1].feed);
                const BlendPulse pulse = blend_pulse_params(feed, c.alpha, chain);
                c.corner_feed = pulse.corner_feed;
                c.blend_duration = pulse.blend_duration;
                c.full_stop = c.alpha == 0.0;
                c.predicted_error =
                    c.full_stop ? 0.0
                                : tcp_error(feed, chain.time_constant, c.alpha, c.corner_angle,
                                            chain.count);
                if (!warned[j]) {
                    warned[j] = true;
                    out.report.warnings.push_back(
                        "short segment at block " + std::to_string(k) +
                        ": reduced blend at junction " + std::to_string(j));
                }
            }
            if (k > 0) recompute(k - 1);
            recompute(k);
            if (k + 1 < n_blocks) recompute(k + 1);
        }
        if (!any_negative) break;
    }
    for (std::size_t k = 0; k < n_blocks; ++k) tv[k] = std::max(0.0, tv[k]);

    for (const CornerPlan& c : corners) {
        if (!c.tolerance_attainable)
            out.report.warnings.push_back(
                "tolerance unattainable at junction " + std::to_string(c.junction_index) +
                " (floor " + format_um(tcp_error(std::min(blocks[c.junction_index].feed,
                                                          blocks[c.junction_index + 1].feed),
                                                 chain.time_constant, 0.0, c.corner_angle,
                                                 chain.count)) +
                " um): full stop planned");
    }

    // Assemble: main pulse of block k, then the junction k blend pair.
    out.train.start_point = blocks.front().start;
    double elapsed = 0.0;
    const auto push = [&](double duration, const Vec3& v) {
        if (duration <= kDegenerateDuration) {
            elapsed += std::max(0.0, duration);
            return;
        }
        out.train.segments.push_back({duration, v});
        elapsed += duration;
    };
    for (std::size_t k = 0; k < n_blocks; ++k) {
        const CLBlock& b = blocks[k];
        push(tv[k], b.unit_dir * b.feed);
        if (k < corners.size()) {
            CornerPlan& c = corners[k];
            push(c.blend_duration, b.unit_dir * c.corner_feed);
            c.crossing_time = elapsed;
            push(c.blend_duration, blocks[k + 1].unit_dir * c.corner_feed);
        }
        out.report.blocks.push_back({b.index, b.length, b.feed, tv[k]});
    }
    out.report.corners = std::move(corners);
    return out;
}

FilterChain chain_for_program(const Program& program) {
    program.config.validate();
    double max_feed = 0.0;
    for (const CLBlock& b : program.blocks)
        max_feed = std::max(max_feed, b.feed * program.config.feed_override);
    if (!(max_feed > 0.0)) throw ConfigError("program has no positive feed");
    const double tc = time_constant_from_jerk(max_feed, program.config.max_jerk);
    return FilterChain(program.config.filter_count, tc);
}

PlannedProgram plan_program(const Program& program) {
    const FilterChain chain = chain_for_program(program);
    std::vector<CLBlock> scaled(program.blocks.begin(), program.blocks.end());
    for (CLBlock& b : scaled) b.feed *= program.config.feed_override;
    auto corners = plan_corners(scaled, program.config.tolerance_mm, chain);
    return plan_pulse_train(scaled, std::move(corners), chain);
}

} // namespace firsim
