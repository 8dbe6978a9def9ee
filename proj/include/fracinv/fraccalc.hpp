#pragma once

#include "fracinv/time_series.hpp"

namespace fracinv {

/// Radius of the quartic bump kernel used by mollify().
class MollifierSpec {
public:
    explicit MollifierSpec(double radius);
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

/// Riemann-Liouville integral J^beta f, beta in [0, 1].
///
/// Product-trapezoid rule: the kernel (t-s)^{beta-1}/Gamma(beta) is integrated
/// exactly against the piecewise-linear interpolant of f, so the result is exact
/// at the nodes whenever f is piecewise linear on the grid.
TimeSeries rl_integral(const TimeSeries& f, double beta);

/// Caputo derivative by the L1 scheme.
///
/// For alpha < 1 the node-0 value is 0; the L1 sum is used from node 1 on.
/// For alpha = 1 this is the classical derivative with second-order central
/// differences inside and second-order one-sided differences at both ends.
/// Requires at least two steps.
TimeSeries caputo_derivative(const TimeSeries& f, FractionalOrder alpha);

/// Riemann-Liouville derivative, beta in [0, 1).
///
/// Computed as f(0) t^{-beta}/Gamma(1-beta) plus the Caputo part. The singular
/// term is not representable at t = 0, so node 0 holds the Caputo part only.
TimeSeries rl_derivative(const TimeSeries& f, double beta);

/// (f*g)(t_l) = int_0^{t_l} f(s) g(t_l - s) ds, exact for piecewise-linear f and g.
TimeSeries convolve(const TimeSeries& f, const TimeSeries& g);

/// zeta_eps(t) = 15/(16 eps) (1 + t/eps)^2 (1 - t/eps)^2 on |t| <= eps.
double mollifier_kernel(double t, double eps);

/// Mollification with the odd-reflection extension
///   2f(0) - f(-t) on [-eps, 0),  f on [0, T],  2f(T) - f(2T - t) on (T, T + eps].
/// The extension is piecewise linear between reflected nodes and the kernel is
/// integrated exactly on every piece. Affine data are reproduced exactly.
TimeSeries mollify(const TimeSeries& f, MollifierSpec spec);

/// Mittag-Leffler function E_{alpha,beta}(z) for real z.
///
/// alpha in (0, 2], beta > 0. Power series near the origin and on the positive
/// axis; on the negative axis an asymptotic expansion when it converges to full
/// precision, otherwise a positive-axis integral representation (alpha < 1) or a
/// parabolic Laplace-inversion contour (alpha >= 1). Relative accuracy is near
/// 1e-15 for alpha < 1 and better than 1e-10 for alpha >= 1.
double mittag_leffler(double alpha, double beta, double z);

/// Empirical constant c0 with |E_{alpha,1}(-eta)| (1 + eta) <= c0 for
/// alpha in (0, 1], eta >= 0.
inline constexpr double kMittagLefflerBound = 1.0;

namespace detail {

// Linear operator form of mollify() for repeated application on one grid.
class MollifierOperator {
public:
    MollifierOperator(const TimeGrid& grid, MollifierSpec spec);
    TimeSeries apply(const TimeSeries& f) const;
    const TimeGrid& grid() const noexcept { return grid_; }

private:
    struct Entry {
        std::size_t column;
        double weight;
    };
    TimeGrid grid_;
    std::vector<std::vector<Entry>> rows_;
};

// (l+1)^p - l^p without cancellation.
double forward_power_difference(double l, double p);

// (d+1)^p - 2 d^p + (d-1)^p, d >= 1, without cancellation.
double second_power_difference(double d, double p);

}  // namespace detail

}  // namespace fracinv
