#pragma once

#include "fracinv/fraccalc.hpp"
#include "fracinv/time_series.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace fracinv::inverse {

enum class Variant { plain, shifted, mollified };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

struct IterationConfig {
    double K = 0.2;
    double stop_eps = 1e-5;
    std::size_t max_iters = 5000;
    Variant variant = Variant::plain;
    std::optional<MollifierSpec> mollifier;

    void validate() const;
};

struct ReconstructionTrace {
    std::vector<TimeSeries> iterates;  // iterates[m] = rho_m, iterates[0] = 0
    std::vector<double> update_norms;  // update_norms[m-1] = ||rho_m - rho_{m-1}||_{L2}
    std::size_t iterations_used = 0;
    bool converged = false;

    const TimeSeries& result() const { return iterates.back(); }
};

/// Non-finite iterate during reconstruct().
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t iteration, const std::string& what)
        : std::runtime_error(what), iteration_(iteration) {}
    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Fixed-point reconstruction of rho from point data u_*(x0, .) and the kernel v(x0, .):
///
///   rho_1     = (1/K) d_t^alpha u_*
///   rho_{m+1} = rho_1 + rho_m - (1/K) int_0^t rho_m'(s) v(t - s) ds
///
/// The convolution treats the iterate as piecewise linear, so rho_m' is the slope on
/// each interval, integrated exactly against the piecewise-linear kernel. The shifted
/// variant moves the derivative onto the kernel (interval slopes of v) and is the same
/// operator after summation by parts. The mollified variant replaces the data by its
/// mollification and every rho_m by its mollification, both in the convolution and in
/// the additive term.
///
/// Stops when ||rho_{m+1} - rho_m||_{L2(0,T)} <= stop_eps or after max_iters updates.
ReconstructionTrace reconstruct(const TimeSeries& data, const TimeSeries& kernel, FractionalOrder alpha,
                                const IterationConfig& cfg);

/// d_t^alpha of data with data(0) = 0 (|data(0)| <= 1e-10, std::domain_error otherwise).
TimeSeries caputo_of_data(const TimeSeries& data, FractionalOrder alpha);

/// Phi_1 = 1 - v/K, Phi_m = Phi_{m-1} * Phi_1; returns Phi_1 .. Phi_{m_max}.
std::vector<TimeSeries> residual_phi_sequence(const TimeSeries& kernel, double K, std::size_t m_max);

/// data + sigma * max|data| * U(-1, 1), one draw per node from a generator seeded with `seed`.
TimeSeries add_noise(const TimeSeries& data, double sigma, std::uint64_t seed);

namespace detail {

// int_0^{t_l} rho'(s) v(t_l - s) ds with rho piecewise linear and v piecewise linear.
class DerivativeConvolution {
public:
    explicit DerivativeConvolution(const TimeSeries& kernel);
    TimeSeries apply(const TimeSeries& rho) const;

private:
    TimeGrid grid_;
    std::vector<double> cell_means_;  // (v_k + v_{k-1}) / 2, k = 1..L
};

// v(0) rho(t) - v(t) rho(0) + int_0^t rho(t - s) v'(s) ds with v' the interval slopes.
class ShiftedConvolution {
public:
    explicit ShiftedConvolution(const TimeSeries& kernel);
    TimeSeries apply(const TimeSeries& rho) const;

private:
    TimeSeries kernel_;
    std::vector<double> increments_;  // v_{k+1} - v_k, k = 0..L-1
};

}  // namespace detail

}  // namespace fracinv::inverse
