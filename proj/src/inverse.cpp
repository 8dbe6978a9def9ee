#include "fracinv/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace fracinv::inverse {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::plain: return "plain";
        case Variant::shifted: return "shifted";
        case Variant::mollified: return "mollified";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    if (name == "plain") return Variant::plain;
    if (name == "shifted") return Variant::shifted;
    if (name == "mollified") return Variant::mollified;
    throw std::invalid_argument("unknown iteration variant '" + std::string(name) + "'");
}

void IterationConfig::validate() const {
    if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("IterationConfig: K must be positive");
    if (!(stop_eps > 0.0)) throw std::invalid_argument("IterationConfig: stop_eps must be positive");
    if (max_iters < 1) throw std::invalid_argument("IterationConfig: max_iters must be at least 1");
    if ((variant == Variant::mollified) != mollifier.has_value())
        throw std::invalid_argument("IterationConfig: a mollifier is required by, and only by, the mollified variant");
}

namespace detail {

DerivativeConvolution::DerivativeConvolution(const TimeSeries& kernel)
    : grid_(kernel.grid()), cell_means_(kernel.size(), 0.0) {
    for (std::size_t k = 1; k < kernel.size(); ++k) cell_means_[k] = 0.5 * (kernel[k] + kernel[k - 1]);
}

TimeSeries DerivativeConvolution::apply(const TimeSeries& rho) const {
    std::vector<double> slope(rho.size() - 1);
    for (std::size_t i = 0; i + 1 < rho.size(); ++i) slope[i] = rho[i + 1] - rho[i];
    std::vector<double> out(rho.size(), 0.0);
    for (std::size_t l = 1; l < out.size(); ++l) {
        double s = 0.0;
        for (std::size_t i = 0; i < l; ++i) s += slope[i] * cell_means_[l - i];
        out[l] = s;
    }
    return TimeSeries(grid_, std::move(out));
}

ShiftedConvolution::ShiftedConvolution(const TimeSeries& kernel)
    : kernel_(kernel), increments_(kernel.size() - 1) {
    for (std::size_t k = 0; k + 1 < kernel.size(); ++k) increments_[k] = kernel[k + 1] - kernel[k];
}

TimeSeries ShiftedConvolution::apply(const TimeSeries& rho) const {
    std::vector<double> out(rho.size(), 0.0);
    for (std::size_t l = 1; l < out.size(); ++l) {
        double s = kernel_[0] * rho[l] - kernel_[l] * rho[0];
        for (std::size_t i = 0; i < l; ++i) s += increments_[i] * 0.5 * (rho[l - i] + rho[l - i - 1]);
        out[l] = s;
    }
    return TimeSeries(kernel_.grid(), std::move(out));
}

}  // namespace detail

namespace {

void check_kernel(const TimeSeries& kernel, double K) {
    const auto v = kernel.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo < -1e-12) throw std::invalid_argument("kernel must be nonnegative");
    if (*hi > K)
        throw std::invalid_argument("kernel maximum " + std::to_string(*hi) + " exceeds K = " + std::to_string(K));
}

}  // namespace

TimeSeries caputo_of_data(const TimeSeries& data, FractionalOrder alpha) {
    if (std::abs(data[0]) > 1e-10)
        throw std::domain_error("caputo_of_data: observation must vanish at t = 0");
    return caputo_derivative(data, alpha);
}

ReconstructionTrace reconstruct(const TimeSeries& data, const TimeSeries& kernel, FractionalOrder alpha,
                                const IterationConfig& cfg) {
    require_same_grid(data, kernel, "reconstruct");
    cfg.validate();
    check_kernel(kernel, cfg.K);

    const double inv_k = 1.0 / cfg.K;
    const TimeGrid& grid = data.grid();

    std::optional<fracinv::detail::MollifierOperator> smoother;
    TimeSeries first(grid);
    if (cfg.variant == Variant::mollified) {
        smoother.emplace(grid, *cfg.mollifier);
        first = inv_k * caputo_derivative(smoother->apply(data), alpha);
    } else {
        first = inv_k * caputo_of_data(data, alpha);
    }

    const detail::DerivativeConvolution derivative_conv(kernel);
    const detail::ShiftedConvolution shifted_conv(kernel);

    ReconstructionTrace trace;
    trace.iterates.emplace_back(grid);
    trace.iterates.push_back(first);
    trace.update_norms.push_back(l2_norm(first));

    while (trace.update_norms.back() > cfg.stop_eps && trace.iterates.size() - 1 < cfg.max_iters) {
        const TimeSeries& current = trace.iterates.back();
        const std::size_t m = trace.iterates.size();

        TimeSeries base = current;
        TimeSeries conv(grid);
        switch (cfg.variant) {
            case Variant::plain: conv = derivative_conv.apply(current); break;
            case Variant::shifted: conv = shifted_conv.apply(current); break;
            case Variant::mollified:
                base = smoother->apply(current);
                conv = derivative_conv.apply(base);
                break;
        }

        std::vector<double> next(grid.size());
        for (std::size_t l = 0; l < next.size(); ++l) {
            next[l] = first[l] + base[l] - inv_k * conv[l];
            if (!std::isfinite(next[l]))
                throw DivergenceError(m, "reconstruct: non-finite iterate at iteration " + std::to_string(m));
        }
        TimeSeries updated(grid, std::move(next));
        trace.update_norms.push_back(l2_norm(updated - current));
        trace.iterates.push_back(std::move(updated));
    }

    trace.iterations_used = trace.iterates.size() - 1;
    trace.converged = trace.update_norms.back() <= cfg.stop_eps;
    return trace;
}

std::vector<TimeSeries> residual_phi_sequence(const TimeSeries& kernel, double K, std::size_t m_max) {
    if (!(K > 0.0)) throw std::invalid_argument("residual_phi_sequence: K must be positive");
    if (m_max < 1) throw std::invalid_argument("residual_phi_sequence: m_max must be at least 1");
    check_kernel(kernel, K);

    std::vector<double> phi1(kernel.size());
    for (std::size_t l = 0; l < phi1.size(); ++l) phi1[l] = 1.0 - kernel[l] / K;
    std::vector<TimeSeries> out;
    out.emplace_back(kernel.grid(), std::move(phi1));
    while (out.size() < m_max) out.push_back(convolve(out.back(), out.front()));
    return out;
}

TimeSeries add_noise(const TimeSeries& data, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::domain_error("add_noise: sigma must be nonnegative");
    const double amplitude = sigma * max_norm(data);
    std::mt19937_64 engine(seed);
    std::vector<double> out(data.values().begin(), data.values().end());
    for (double& x : out) {
        // 53 random bits mapped onto [-1, 1); independent of the standard library's distributions
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        x += amplitude * (2.0 * u - 1.0);
    }
    return TimeSeries(data.grid(), std::move(out));
}

}  // namespace fracinv::inverse
