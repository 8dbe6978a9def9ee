#include "fracinv/diagnostics.hpp"
#include "fracinv/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace fracinv::experiment {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::vector<CheckResult> fraccalc_suite() {
    std::vector<CheckResult> out;

    // Caputo power rule: observed order over Nt = 64 -> 256 at least 2 - alpha - 0.1
    for (double a : {0.3, 0.5, 0.9}) {
        for (int p : {2, 3}) {
            double err[2];
            int k = 0;
            for (std::size_t n : {64u, 256u}) {
                const TimeGrid grid(1.0, n);
                const auto f = TimeSeries::sample(grid, [p](double t) { return std::pow(t, p); });
                const auto d = caputo_derivative(f, FractionalOrder(a));
                const double c = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - a);
                double e = 0.0;
                for (std::size_t l = 0; l < grid.size(); ++l)
                    e = std::max(e, std::abs(d[l] - c * std::pow(grid.node(l), p - a)));
                err[k++] = e;
            }
            const double order = std::log2(err[0] / err[1]) / 2.0;
            out.push_back({"caputo t^" + std::to_string(p) + fmt(" alpha=%.1f", a), order >= 2.0 - a - 0.1,
                           fmt("observed order %.3f", order)});
        }
    }

    double ml = 0.0;
    for (double z : {-1.0, 0.0, 1.0}) ml = std::max(ml, std::abs(mittag_leffler(1.0, 1.0, z) - std::exp(z)));
    ml = std::max(ml, std::abs(mittag_leffler(2.0, 1.0, -0.49) - std::cos(0.7)));
    for (double b : {0.5, 1.0, 1.7}) ml = std::max(ml, std::abs(mittag_leffler(0.6, b, 0.0) - 1.0 / std::tgamma(b)));
    out.push_back({"mittag-leffler closed forms", ml <= 1e-10, fmt("max deviation %.3e", ml)});

    const TimeGrid grid(1.0, 128);
    const auto line = TimeSeries::sample(grid, [](double t) { return 0.3 - 2.0 * t; });
    const double moll = max_norm(mollify(line, MollifierSpec(5.0 / 128.0)) - line);
    out.push_back({"mollify keeps affine data", moll <= 1e-12, fmt("max deviation %.3e", moll)});
    return out;
}

struct ReferenceForward {
    forward::SpaceGrid space{64};
    TimeGrid time{1.0, 128};
    forward::SpatialProfile g = forward::SpatialProfile::sample(space, bump_profile);
};

std::vector<CheckResult> forward_suite() {
    std::vector<CheckResult> out;
    const ReferenceForward P;
    const forward::SpectralBasis basis(bump_profile, P.space, 64);
    for (double a : {0.3, 0.5, 0.9, 1.0}) {
        const auto l1 = forward::solve_homogeneous_l1(P.g, FractionalOrder(a), P.time);
        const auto sp = forward::solve_homogeneous_spectral(P.g, FractionalOrder(a), P.time, basis);
        double d = 0.0, lo = 0.0;
        for (std::size_t l = 0; l < P.time.size(); ++l)
            for (std::size_t j = 0; j < P.space.size(); ++j) {
                d = std::max(d, std::abs(l1(j, l) - sp(j, l)));
                lo = std::min(lo, l1(j, l));
            }
        out.push_back({fmt("L1 vs spectral alpha=%.1f", a), d <= 1e-3, fmt("max difference %.3e (limit 1e-3)", d)});
        out.push_back({fmt("nonnegativity alpha=%.1f", a), lo >= -1e-12, fmt("min value %.3e", lo)});
    }

    const auto sine = forward::SpatialProfile::sample(P.space, [](double x) { return std::sin(std::numbers::pi * x); });
    const auto v = forward::solve_homogeneous_l1(sine, FractionalOrder(1.0), P.time);
    double e = 0.0;
    for (std::size_t l = 0; l < P.time.size(); ++l)
        for (std::size_t j = 0; j < P.space.size(); ++j)
            e = std::max(e, std::abs(v(j, l) - std::exp(-std::numbers::pi * std::numbers::pi * P.time.node(l)) *
                                                 std::sin(std::numbers::pi * P.space.node(j))));
    out.push_back({"alpha=1 exact separable solution", e <= 1e-3, fmt("max error %.3e (limit 1e-3)", e)});

    const auto r1 = TimeSeries::sample(P.time, smooth_true_source);
    const auto r2 = TimeSeries::sample(P.time, piecewise_true_source);
    const FractionalOrder a(0.9);
    const auto u1 = forward::solve_inhomogeneous_l1(P.g, r1, a, P.time);
    const auto u2 = forward::solve_inhomogeneous_l1(P.g, r2, a, P.time);
    const auto u12 = forward::solve_inhomogeneous_l1(P.g, 2.0 * r1 + (-3.0) * r2, a, P.time);
    double lin = 0.0, scale = 0.0;
    for (std::size_t l = 0; l < P.time.size(); ++l)
        for (std::size_t j = 0; j < P.space.size(); ++j) {
            lin = std::max(lin, std::abs(u12(j, l) - 2.0 * u1(j, l) + 3.0 * u2(j, l)));
            scale = std::max(scale, std::abs(u12(j, l)));
        }
    out.push_back({"linearity in the source", lin <= 1e-13 * std::max(1.0, scale), fmt("max deviation %.3e", lin)});
    return out;
}

std::vector<CheckResult> rci_suite() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(2024);
    for (auto variant : {diagnostics::RciVariant::a, diagnostics::RciVariant::b}) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 1000; ++i)
            worst = std::min(worst, diagnostics::check_rci(diagnostics::random_rci_instance(rng, variant)).slack);
        out.push_back({variant == diagnostics::RciVariant::a ? "reverse convolution (a)" : "reverse convolution (b)",
                       worst >= -1e-10, fmt("smallest slack over 1000 instances %.3e", worst)});
    }
    return out;
}

double reference_duhamel(std::size_t nt) {
    const forward::SpaceGrid space(64);
    const TimeGrid time(1.0, nt);
    const auto g = forward::SpatialProfile::sample(space, bump_profile);
    const FractionalOrder a(0.9);
    const auto rho = TimeSeries::sample(time, smooth_true_source);
    const auto kernel = forward::probe(forward::solve_homogeneous_l1(g, a, time), 0.125);
    const auto u = forward::solve_inhomogeneous_l1(g, rho, a, time);
    return diagnostics::duhamel_residual(rho, u, kernel, a, 0.125);
}

std::vector<CheckResult> duhamel_suite() {
    const double r128 = reference_duhamel(128), r256 = reference_duhamel(256);
    return {{"duhamel residual on 64x128", r128 <= 5e-3, fmt("relative residual %.3e (limit 5e-3)", r128)},
            {"duhamel refinement 128 -> 256", r128 / r256 >= 1.5, fmt("reduction factor %.3f", r128 / r256)}};
}

}  // namespace

std::vector<CheckResult> run_check_suite(std::string_view suite) {
    if (suite == "fraccalc") return fraccalc_suite();
    if (suite == "forward") return forward_suite();
    if (suite == "rci") return rci_suite();
    if (suite == "duhamel") return duhamel_suite();
    throw ConfigError("unknown check suite '" + std::string(suite) + "' (expected fraccalc, forward, rci or duhamel)");
}

}  // namespace fracinv::experiment
