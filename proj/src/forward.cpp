#include "fracinv/forward.hpp"

#include "fracinv/fraccalc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracinv::forward {

SpaceGrid::SpaceGrid(std::size_t cells) : cells_(cells) {
    if (cells < 2) throw std::invalid_argument("SpaceGrid: need at least two cells");
}

std::size_t SpaceGrid::node_index(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("probe location must lie in [0, 1]");
    const double scaled = x * static_cast<double>(cells_);
    const double j = std::round(scaled);
    if (std::abs(scaled - j) > 1e-9)
        throw std::domain_error("x = " + std::to_string(x) + " is not a node of the " + std::to_string(cells_) +
                                "-cell grid");
    return static_cast<std::size_t>(j);
}

SpatialProfile::SpatialProfile(SpaceGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("SpatialProfile: size does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("SpatialProfile: non-finite value");
    if (std::abs(values_.front()) > 1e-14 || std::abs(values_.back()) > 1e-14)
        throw std::invalid_argument("SpatialProfile: boundary values must vanish");
}

SpatialProfile SpatialProfile::sample(const SpaceGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t j = 1; j + 1 < v.size(); ++j) v[j] = f(grid.node(j));
    return SpatialProfile(grid, std::move(v));
}

SpaceTimeField::SpaceTimeField(SpaceGrid space, TimeGrid time)
    : space_(space), time_(time), values_(space.size() * time.size(), 0.0) {}

namespace {

std::vector<double> simpson_sine_coefficients(const std::function<double(double)>& g, std::size_t intervals,
                                              std::size_t modes) {
    if (intervals % 2) ++intervals;
    const double dx = 1.0 / static_cast<double>(intervals);
    std::vector<double> gx(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) gx[i] = g(static_cast<double>(i) * dx);

    std::vector<double> c(modes);
    for (std::size_t n = 1; n <= modes; ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i <= intervals; ++i) {
            const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w * gx[i] * SpectralBasis::eigenfunction(n, static_cast<double>(i) * dx);
        }
        c[n - 1] = s * dx / 3.0;
    }
    return c;
}

// Implicit L1 stepping. Row l of the result holds the solution at t_l.
SpaceTimeField march(const SpatialProfile& g, std::span<const double> initial, const TimeSeries* rho,
                     FractionalOrder alpha, const TimeGrid& time) {
    const SpaceGrid& space = g.grid();
    SpaceTimeField u(space, time);
    const std::size_t nx = space.size();
    const std::size_t n = nx - 2;  // interior unknowns
    const std::size_t L = time.steps();
    for (std::size_t j = 1; j + 1 < nx; ++j) u(j, 0) = initial[j];

    const double a = alpha.value();
    const double a0 = std::pow(time.tau(), -a) / std::tgamma(2.0 - a);
    std::vector<double> b(L);
    for (std::size_t i = 0; i < L; ++i) b[i] = detail::forward_power_difference(static_cast<double>(i), 1.0 - a);

    // Constant tridiagonal matrix a0 I - D_xx; factor once (Thomas).
    const double ih2 = 1.0 / (space.h() * space.h());
    const double diag = a0 + 2.0 * ih2, off = -ih2;
    std::vector<double> cprime(n), denom(n);
    for (std::size_t i = 0; i < n; ++i) {
        denom[i] = diag - (i ? off * cprime[i - 1] : 0.0);
        assert(denom[i] > 0.0);
        cprime[i] = off / denom[i];
    }

    std::vector<double> rhs(n);
    for (std::size_t k = 1; k <= L; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + 1;
            double hist = 0.0;
            for (std::size_t m = 1; m < k; ++m) hist += b[m] * (u(j, k - m) - u(j, k - m - 1));
            rhs[i] = a0 * (u(j, k - 1) - hist);
            if (rho) rhs[i] += (*rho)[k] * g[j];
        }
        // forward sweep then back substitution
        rhs[0] /= denom[0];
        for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom[i];
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cprime[i] * rhs[i + 1];
        for (std::size_t i = 0; i < n; ++i) u(i + 1, k) = rhs[i];
    }
    return u;
}

}  // namespace

SpectralBasis::SpectralBasis(const std::function<double(double)>& g, const SpaceGrid& grid, std::size_t modes,
                             std::size_t refinement) {
    if (modes < 1 || refinement < 1) throw std::invalid_argument("SpectralBasis: need modes >= 1, refinement >= 1");
    coefficients_ = simpson_sine_coefficients(g, refinement * grid.cells(), modes);
}

SpectralBasis::SpectralBasis(const SpatialProfile& g, std::size_t modes, std::size_t refinement)
    : SpectralBasis(
          [&g](double x) {
              const std::size_t cells = g.grid().cells();
              const double s = x * static_cast<double>(cells);
              const std::size_t j = std::min(static_cast<std::size_t>(s), cells - 1);
              const double theta = s - static_cast<double>(j);
              return (1.0 - theta) * g[j] + theta * g[j + 1];
          },
          g.grid(), modes, refinement) {}

double SpectralBasis::eigenvalue(std::size_t n) {
    const double k = static_cast<double>(n) * std::numbers::pi;
    return k * k;
}

double SpectralBasis::eigenfunction(std::size_t n, double x) {
    return std::numbers::sqrt2 * std::sin(static_cast<double>(n) * std::numbers::pi * x);
}

double SpectralBasis::energy() const {
    double s = 0.0;
    for (std::size_t n = 1; n <= modes(); ++n) s += eigenvalue(n) * coefficient(n) * coefficient(n);
    return s;
}

SpaceTimeField solve_homogeneous_l1(const SpatialProfile& g, FractionalOrder alpha, const TimeGrid& time) {
    return march(g, g.values(), nullptr, alpha, time);
}

SpaceTimeField solve_homogeneous_spectral(const SpatialProfile& g, FractionalOrder alpha, const TimeGrid& time,
                                          const SpectralBasis& basis) {
    const SpaceGrid& space = g.grid();
    SpaceTimeField v(space, time);
    const double a = alpha.value();

    std::vector<double> modes(space.size());
    for (std::size_t n = 1; n <= basis.modes(); ++n) {
        const double c = basis.coefficient(n);
        for (std::size_t j = 0; j < space.size(); ++j) modes[j] = c * SpectralBasis::eigenfunction(n, space.node(j));
        const double lambda = SpectralBasis::eigenvalue(n);
        for (std::size_t l = 0; l < time.size(); ++l) {
            const double e = mittag_leffler(a, 1.0, -lambda * std::pow(time.node(l), a));
            auto row = v.at_time(l);
            for (std::size_t j = 1; j + 1 < space.size(); ++j) row[j] += e * modes[j];
        }
    }
    return v;
}

SpaceTimeField solve_inhomogeneous_l1(const SpatialProfile& g, const TimeSeries& rho, FractionalOrder alpha,
                                      const TimeGrid& time) {
    if (!(rho.grid() == time)) throw std::domain_error("solve_inhomogeneous_l1: rho lives on a different time grid");
    const std::vector<double> zero(g.grid().size(), 0.0);
    return march(g, zero, &rho, alpha, time);
}

TimeSeries probe(const SpaceTimeField& field, double x0) {
    const std::size_t j = field.space().node_index(x0);
    std::vector<double> out(field.time().size());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = field(j, l);
    return TimeSeries(field.time(), std::move(out));
}

}  // namespace fracinv::forward
