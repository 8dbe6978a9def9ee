#include "fracinv/fraccalc.hpp"

#include <cmath>
#include <stdexcept>

namespace fracinv {

namespace detail {

double forward_power_difference(double l, double p) {
    if (l == 0.0) return 1.0;
    return std::pow(l, p) * std::expm1(p * std::log1p(1.0 / l));
}

double second_power_difference(double d, double p) {
    if (d < 8.0) return std::pow(d + 1.0, p) - 2.0 * std::pow(d, p) + std::pow(d - 1.0, p);
    // 2 d^p sum_{k even >= 2} C(p, k) d^{-k}
    const double x = 1.0 / d;
    double binom = 1.0, xk = 1.0, sum = 0.0;
    for (int k = 1; k <= 60; ++k) {
        binom *= (p - k + 1) / k;
        xk *= x;
        if (k % 2 == 0) {
            const double term = 2.0 * binom * xk;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
    }
    return std::pow(d, p) * sum;
}

}  // namespace detail

namespace {

// (l-1)^{p} - (l-1-(p-1)) l^{p-1}, the weight of f_0 in the product-trapezoid rule.
double first_node_weight(double l, double p) {
    if (l < 8.0) return std::pow(l - 1.0, p) - (l - p) * std::pow(l, p - 1.0);
    // l^p sum_{k >= 2} C(p, k) (-1/l)^k
    const double x = -1.0 / l;
    double binom = 1.0, xk = 1.0, sum = 0.0;
    for (int k = 1; k <= 60; ++k) {
        binom *= (p - k + 1) / k;
        xk *= x;
        if (k >= 2) {
            const double term = binom * xk;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
    }
    return std::pow(l, p) * sum;
}

}  // namespace

TimeSeries rl_integral(const TimeSeries& f, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::domain_error("rl_integral: beta must lie in [0, 1]");
    if (beta == 0.0) return f;

    const std::size_t L = f.grid().steps();
    const double p = beta + 1.0;
    const double c = std::pow(f.grid().tau(), beta) / std::tgamma(beta + 2.0);

    std::vector<double> interior(L + 1, 0.0);
    for (std::size_t d = 1; d <= L; ++d)
        interior[d] = detail::second_power_difference(static_cast<double>(d), p);

    std::vector<double> out(L + 1, 0.0);
    for (std::size_t l = 1; l <= L; ++l) {
        double s = first_node_weight(static_cast<double>(l), p) * f[0] + f[l];
        for (std::size_t j = 1; j < l; ++j) s += interior[l - j] * f[j];
        out[l] = c * s;
    }
    return TimeSeries(f.grid(), std::move(out));
}

TimeSeries caputo_derivative(const TimeSeries& f, FractionalOrder alpha) {
    const std::size_t L = f.grid().steps();
    if (L < 2) throw std::domain_error("caputo_derivative: grid needs at least two steps");
    const double tau = f.grid().tau();
    std::vector<double> out(L + 1, 0.0);

    if (alpha.is_integer()) {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * tau);
        for (std::size_t l = 1; l < L; ++l) out[l] = (f[l + 1] - f[l - 1]) / (2.0 * tau);
        out[L] = (3.0 * f[L] - 4.0 * f[L - 1] + f[L - 2]) / (2.0 * tau);
        return TimeSeries(f.grid(), std::move(out));
    }

    const double a = alpha.value();
    const double scale = std::pow(tau, -a) / std::tgamma(2.0 - a);
    std::vector<double> b(L);
    for (std::size_t j = 0; j < L; ++j) b[j] = detail::forward_power_difference(static_cast<double>(j), 1.0 - a);

    for (std::size_t l = 1; l <= L; ++l) {
        double s = 0.0;
        for (std::size_t j = 0; j < l; ++j) s += b[j] * (f[l - j] - f[l - j - 1]);
        out[l] = scale * s;
    }
    return TimeSeries(f.grid(), std::move(out));
}

TimeSeries rl_derivative(const TimeSeries& f, double beta) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::domain_error("rl_derivative: beta must lie in [0, 1); use caputo_derivative for order 1");
    if (beta == 0.0) return f;

    const TimeSeries caputo = caputo_derivative(f, FractionalOrder(beta));
    std::vector<double> out(caputo.values().begin(), caputo.values().end());
    const double c = f[0] / std::tgamma(1.0 - beta);
    for (std::size_t l = 1; l < out.size(); ++l) out[l] += c * std::pow(f.grid().node(l), -beta);
    return TimeSeries(f.grid(), std::move(out));
}

TimeSeries convolve(const TimeSeries& f, const TimeSeries& g) {
    require_same_grid(f, g, "convolve");
    const std::size_t L = f.grid().steps();
    const double tau = f.grid().tau();
    std::vector<double> out(L + 1, 0.0);
    for (std::size_t l = 1; l <= L; ++l) {
        double s = 0.0;
        for (std::size_t i = 0; i < l; ++i) {
            const double fa = f[i], fb = f[i + 1];
            const double ga = g[l - i], gb = g[l - i - 1];
            s += (2.0 * fa * ga + fa * gb + fb * ga + 2.0 * fb * gb);
        }
        out[l] = tau * s / 6.0;
    }
    return TimeSeries(f.grid(), std::move(out));
}

}  // namespace fracinv
