#include "firsim/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firsim {

namespace {
constexpr double kKnotMergeTol = 1e-12;
} // namespace

void Poly::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly::eval(double h) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly::constant(0.0);
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Poly{std::move(d)};
}

Poly Poly::antiderivative(double c0) const {
    std::vector<double> a(coeffs_.size() + 1);
    a[0] = c0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    return Poly{std::move(a)};
}

Poly Poly::shifted(double dx) const {
    // Binomial expansion of p(h + dx); degrees here stay tiny (<= 6).
    if (coeffs_.empty()) return Poly{};
    std::vector<double> res(coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double dxpow = 1.0;
            for (std::size_t m = 0; m < i - j; ++m) dxpow *= dx;
            double comb = 1.0;
            for (std::size_t m = 0; m < j; ++m)
                comb = comb * static_cast<double>(i - m) / static_cast<double>(m + 1);
            res[j] += coeffs_[i] * comb * dxpow;
        }
    }
    return Poly{std::move(res)};
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
    return Poly{std::move(r)};
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] -= o.coeffs_[i];
    return Poly{std::move(r)};
}

Poly Poly::operator*(double s) const {
    std::vector<double> r = coeffs_;
    for (double& c : r) c *= s;
    return Poly{std::move(r)};
}

PiecewisePoly::PiecewisePoly(std::vector<double> knots, std::vector<Poly> segments, double head,
                             double tail)
    : knots_(std::move(knots)), segments_(std::move(segments)), head_(head), tail_(tail) {
    if (!knots_.empty() && knots_.size() != segments_.size() + 1)
        throw std::invalid_argument("piecewise poly: knot/segment count mismatch");
}

PiecewisePoly PiecewisePoly::constant_pulse(double value, double t_start, double t_end) {
    if (!(t_end > t_start)) throw std::invalid_argument("constant_pulse: empty interval");
    return PiecewisePoly{{t_start, t_end}, {Poly::constant(value)}};
}

std::size_t PiecewisePoly::segment_index(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    if (it == knots_.begin()) return 0;
    std::size_t idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return std::min(idx, segments_.size() - 1);
}

double PiecewisePoly::eval(double t) const {
    if (segments_.empty()) return 0.0;
    if (t < knots_.front()) return head_;
    if (t >= knots_.back()) return tail_;
    const std::size_t i = segment_index(t);
    return segments_[i].eval(t - knots_[i]);
}

PiecewisePoly PiecewisePoly::derivative() const {
    std::vector<Poly> d;
    d.reserve(segments_.size());
    for (const auto& p : segments_) d.push_back(p.derivative());
    return PiecewisePoly{knots_, std::move(d), 0.0, 0.0};
}

PiecewisePoly PiecewisePoly::antiderivative() const {
    std::vector<Poly> a;
    a.reserve(segments_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        Poly ai = segments_[i].antiderivative(acc);
        acc = ai.eval(knots_[i + 1] - knots_[i]);
        a.push_back(std::move(ai));
    }
    return PiecewisePoly{knots_, std::move(a), 0.0, acc};
}

Poly PiecewisePoly::local_at(double t, double at) const {
    if (segments_.empty()) return Poly::constant(0.0);
    if (t < knots_.front()) return Poly::constant(head_);
    if (t >= knots_.back()) return Poly::constant(tail_);
    const std::size_t i = segment_index(t);
    return segments_[i].shifted(at - knots_[i]);
}

PiecewisePoly PiecewisePoly::convolved_with_box(double width) const {
    if (!(width > 0.0)) throw std::invalid_argument("box width must be positive");
    if (segments_.empty()) return {};

    const PiecewisePoly integral = antiderivative();

    std::vector<double> pts;
    pts.reserve(2 * knots_.size());
    for (double k : knots_) pts.push_back(k);
    for (double k : knots_) pts.push_back(k + width);
    std::sort(pts.begin(), pts.end());
    const double span = std::max(1.0, pts.back() - pts.front());
    std::vector<double> merged;
    for (double p : pts) {
        if (merged.empty() || p - merged.back() > kKnotMergeTol * span) merged.push_back(p);
    }

    std::vector<Poly> segs;
    segs.reserve(merged.size() - 1);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const double a = merged[i];
        const double mid = 0.5 * (a + merged[i + 1]);
        // g(a + h) = (I(a + h) - I(a + h - width)) / width, with each side
        // taken from the piece containing the segment midpoint.
        Poly lead = integral.local_at(mid, a);
        Poly lag = integral.local_at(mid - width, a - width);
        segs.push_back((lead - lag) * (1.0 / width));
    }
    return PiecewisePoly{std::move(merged), std::move(segs), 0.0, 0.0};
}

} // namespace firsim
