#include "fracinv/diagnostics.hpp"

#include "fracinv/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracinv::diagnostics {

namespace {

constexpr double kSignTolerance = 1e-14;

std::size_t aligned_steps(double length, double tau, const char* what) {
    const double s = length / tau;
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9 * std::max(1.0, s))
        throw std::domain_error(std::string("check_rci: ") + what + " is not a multiple of the grid step");
    return static_cast<std::size_t>(r);
}

bool one_signed(const TimeSeries& f, std::size_t first, std::size_t last) {
    bool pos = false, neg = false;
    for (std::size_t l = first; l <= last; ++l) {
        pos = pos || f[l] > kSignTolerance;
        neg = neg || f[l] < -kSignTolerance;
    }
    return !(pos && neg);
}

}  // namespace

RciReport check_rci(const RciInstance& in) {
    require_same_grid(in.f1, in.f2, "check_rci");
    if (!(in.eta >= 0.0 && in.eta < in.T0 && in.delta > 0.0))
        throw std::domain_error("check_rci: need 0 <= eta < T0 and delta > 0");

    const TimeGrid& grid = in.f1.grid();
    const double tau = grid.tau();
    if (std::abs(grid.horizon() - (in.T0 + in.delta - in.eta)) > 1e-9 * grid.horizon())
        throw std::domain_error("check_rci: grid horizon must equal T0 + delta - eta");
    const std::size_t n0 = aligned_steps(in.T0 - in.eta, tau, "T0 - eta");
    const std::size_t nd = aligned_steps(in.delta, tau, "delta");
    const std::size_t L = grid.steps();

    for (double x : in.f2.values())
        if (x < -kSignTolerance) throw std::domain_error("check_rci: f2 must be nonnegative");
    const std::size_t sign_end = in.variant == RciVariant::a ? L : n0;
    if (!one_signed(in.f1, 0, sign_end)) throw std::domain_error("check_rci: f1 changes sign");

    const double f2_mass = l1_norm(in.f2, 0, nd);
    RciReport r{};
    r.variant = in.variant;
    r.lhs = l1_norm(in.f1, 0, n0) * f2_mass;
    r.rhs = l1_norm(convolve(in.f1, in.f2));
    if (in.variant == RciVariant::b) r.rhs += 2.0 * l1_norm(in.f1, n0, L) * f2_mass;
    r.slack = r.rhs - r.lhs;
    return r;
}

namespace {

std::vector<double> random_polynomial(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> degree(0, 5);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (double& x : c) x = coeff(rng);
    return c;
}

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

}  // namespace

RciInstance random_rci_instance(std::mt19937_64& rng, RciVariant variant) {
    std::uniform_int_distribution<std::size_t> steps(4, 64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n0 = steps(rng), nd = steps(rng);
    const double h = 0.005 + 0.025 * unit(rng);
    const double eta = 0.5 * unit(rng);
    const std::size_t L = n0 + nd;
    const TimeGrid grid(h * static_cast<double>(L), L);
    const double H = grid.horizon();

    const auto p2 = random_polynomial(rng);
    const auto p1 = random_polynomial(rng);
    const auto tail = random_polynomial(rng);
    const bool use_abs = unit(rng) < 0.5;
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;

    std::vector<double> f1(grid.size()), f2(grid.size());
    for (std::size_t l = 0; l < grid.size(); ++l) f2[l] = std::abs(horner(p2, grid.node(l) / H));

    const std::size_t signed_end = variant == RciVariant::a ? L : n0;
    double shift = 0.0;
    for (std::size_t l = 0; l <= signed_end; ++l) shift = std::max(shift, std::abs(horner(p1, grid.node(l) / H)));
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const double x = grid.node(l) / H;
        if (l > signed_end) f1[l] = horner(tail, x);
        else f1[l] = sign * (use_abs ? std::abs(horner(p1, x)) : horner(p1, x) + shift);
    }
    const double T0 = eta + h * static_cast<double>(n0);
    return RciInstance{TimeSeries(grid, std::move(f1)), TimeSeries(grid, std::move(f2)), eta, T0,
                       h * static_cast<double>(nd), variant};
}

double integral_to(const TimeSeries& f, double delta) {
    const TimeGrid& grid = f.grid();
    if (!(delta > 0.0 && delta <= grid.horizon() * (1.0 + 1e-12)))
        throw std::domain_error("delta must lie in (0, T]");
    const double tau = grid.tau();
    const double pos = std::min(delta / tau, static_cast<double>(grid.steps()));
    std::size_t full = static_cast<std::size_t>(std::floor(pos + 1e-12));
    full = std::min(full, grid.steps());
    double s = 0.0;
    for (std::size_t l = 0; l < full; ++l) s += 0.5 * tau * (f[l] + f[l + 1]);
    const double frac = pos - static_cast<double>(full);
    if (frac > 1e-12 && full < grid.steps()) {
        const double end = f[full] + frac * (f[full + 1] - f[full]);
        s += 0.5 * frac * tau * (f[full] + end);
    }
    return s;
}

double compute_b_delta(const TimeSeries& kernel, double delta) {
    for (double x : kernel.values())
        if (x < -1e-12) throw std::domain_error("compute_b_delta: kernel must be nonnegative");
    const double mass = integral_to(kernel, delta);
    if (!(mass > 0.0)) throw PositivityError("compute_b_delta: kernel has no mass on (0, delta)");
    return 1.0 / mass;
}

double duhamel_residual(const TimeSeries& rho, const forward::SpaceTimeField& field, const TimeSeries& kernel,
                        FractionalOrder alpha, double x0) {
    require_same_grid(rho, kernel, "duhamel_residual");
    if (!(field.time() == rho.grid())) throw std::domain_error("duhamel_residual: field lives on a different time grid");
    const TimeSeries lhs = rl_integral(forward::probe(field, x0), 1.0 - alpha.value());
    const TimeSeries rhs = convolve(rho, kernel);
    const double diff = max_norm(lhs - rhs);
    const double scale = max_norm(rhs);
    return scale < 1e-14 ? diff : diff / scale;
}

}  // namespace fracinv::diagnostics
