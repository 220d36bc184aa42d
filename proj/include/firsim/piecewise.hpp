#pragma once

#include <cstddef>
#include <vector>

namespace firsim {

/// Dense polynomial in ascending-power coefficients, evaluated in a local
/// coordinate (the owning segment subtracts its start time first).
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static Poly constant(double c) { return Poly{{c}}; }

    double eval(double h) const;
    Poly derivative() const;
    /// Antiderivative with constant term c0.
    Poly antiderivative(double c0 = 0.0) const;
    /// Coefficients of p(h + dx) as a polynomial in h.
    Poly shifted(double dx) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(double s) const;

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Piecewise polynomial with compact support. Segment i covers
/// [knot i, knot i+1) and stores its polynomial in local time t - knot[i].
/// Values before the first knot are head_value(), values at or beyond the
/// last knot are tail_value(); both are zero for signals and the head/total
/// for running integrals.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<double> knots, std::vector<Poly> segments, double head = 0.0,
                  double tail = 0.0);

    static PiecewisePoly constant_pulse(double value, double t_start, double t_end);

    double eval(double t) const;
    double start() const { return knots_.empty() ? 0.0 : knots_.front(); }
    double end() const { return knots_.empty() ? 0.0 : knots_.back(); }
    bool empty() const { return segments_.empty(); }

    PiecewisePoly derivative() const;
    /// Running integral from the start of support; constant (the total) after
    /// the support ends.
    PiecewisePoly antiderivative() const;
    /// Convolution with a unit-area box of the given width: the moving
    /// average (1/w) * integral over [t-w, t]. Exact; raises degree by one.
    PiecewisePoly convolved_with_box(double width) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Poly>& segments() const { return segments_; }
    double head_value() const { return head_; }
    double tail_value() const { return tail_; }

private:
    /// Polynomial of the piece containing t, rebased so h = t - at is local.
    Poly local_at(double t, double at) const;
    std::size_t segment_index(double t) const;

    std::vector<double> knots_;
    std::vector<Poly> segments_;
    double head_ = 0.0;
    double tail_ = 0.0;
};

} // namespace firsim
