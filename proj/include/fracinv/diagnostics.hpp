#pragma once

#include "fracinv/forward.hpp"
#include "fracinv/time_series.hpp"

#include <random>
#include <stdexcept>

namespace fracinv::diagnostics {

enum class RciVariant { a, b };

/// Data for the reverse convolution inequality.
///
/// f1 and f2 share one grid over local time r in [0, T0 + delta - eta]: f1 holds
/// f1(eta + r), f2 holds f2(r). T0 - eta and delta must be whole multiples of the step.
struct RciInstance {
    TimeSeries f1;
    TimeSeries f2;
    double eta;
    double T0;
    double delta;
    RciVariant variant;
};

struct RciReport {
    double lhs;
    double rhs;
    double slack;  // rhs - lhs
    RciVariant variant;
};

/// lhs = ||f1||_{L1(eta,T0)} ||f2||_{L1(0,delta)}
/// rhs = || int_eta^t f1(s) f2(t-s) ds ||_{L1(eta,T0+delta)}  (+ 2 ||f1||_{L1(T0,T0+delta)} ||f2||_{L1(0,delta)} for b)
/// Throws std::domain_error when f2 has negative values or f1 changes sign where it must not.
RciReport check_rci(const RciInstance& instance);

/// Random valid instance: degree <= 5 polynomials with coefficients in [-1, 1];
/// f2 = |p|, f1 made one-signed (on the whole interval for a, up to T0 for b) by
/// taking the absolute value or adding the largest magnitude.
RciInstance random_rci_instance(std::mt19937_64& rng, RciVariant variant);

/// Kernel mass vanishes on (0, delta).
class PositivityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// 1 / int_0^delta v, integrating the piecewise-linear interpolant of the kernel.
double compute_b_delta(const TimeSeries& kernel, double delta);

/// int_0^delta of the piecewise-linear interpolant of f.
double integral_to(const TimeSeries& f, double delta);

/// max |J^{1-alpha} u(x0, .) - rho * v| / max |rho * v|, absolute when the denominator is below 1e-14.
double duhamel_residual(const TimeSeries& rho, const forward::SpaceTimeField& field, const TimeSeries& kernel,
                        FractionalOrder alpha, double x0);

}  // namespace fracinv::diagnostics
