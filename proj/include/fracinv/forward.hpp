#pragma once

#include "fracinv/time_series.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracinv::forward {

/// Uniform grid x_j = j / cells on [0, 1].
class SpaceGrid {
public:
    explicit SpaceGrid(std::size_t cells);

    std::size_t cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_ + 1; }
    double h() const noexcept { return 1.0 / static_cast<double>(cells_); }
    double node(std::size_t j) const noexcept {
        return static_cast<double>(j) / static_cast<double>(cells_);
    }

    /// Index of the node at x; throws std::domain_error when x is not a node.
    std::size_t node_index(double x) const;

    bool operator==(const SpaceGrid&) const = default;

private:
    std::size_t cells_;
};

/// Nodal values of a spatial profile with zero boundary values.
class SpatialProfile {
public:
    SpatialProfile(SpaceGrid grid, std::vector<double> values);

    /// Samples f at the interior nodes; boundary values are set to 0.
    static SpatialProfile sample(const SpaceGrid& grid, const std::function<double(double)>& f);

    const SpaceGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }

private:
    SpaceGrid grid_;
    std::vector<double> values_;
};

/// u(x_j, t_l), stored time-major.
class SpaceTimeField {
public:
    SpaceTimeField(SpaceGrid space, TimeGrid time);

    const SpaceGrid& space() const noexcept { return space_; }
    const TimeGrid& time() const noexcept { return time_; }

    double operator()(std::size_t j, std::size_t l) const noexcept { return values_[l * stride() + j]; }
    double& operator()(std::size_t j, std::size_t l) noexcept { return values_[l * stride() + j]; }

    std::span<const double> at_time(std::size_t l) const noexcept {
        return {values_.data() + l * stride(), stride()};
    }
    std::span<double> at_time(std::size_t l) noexcept { return {values_.data() + l * stride(), stride()}; }

private:
    std::size_t stride() const noexcept { return space_.size(); }

    SpaceGrid space_;
    TimeGrid time_;
    std::vector<double> values_;
};

/// Dirichlet eigenpairs on (0,1): lambda_n = (n pi)^2, phi_n = sqrt(2) sin(n pi x),
/// with the sine coefficients (g, phi_n) of one profile.
class SpectralBasis {
public:
    /// Coefficients by composite Simpson on a grid refined `refinement` times
    /// relative to `grid`, sampling g directly.
    SpectralBasis(const std::function<double(double)>& g, const SpaceGrid& grid, std::size_t modes = 64,
                  std::size_t refinement = 4);

    /// Same, for nodal data; g is taken piecewise linear between nodes.
    explicit SpectralBasis(const SpatialProfile& g, std::size_t modes = 64, std::size_t refinement = 4);

    std::size_t modes() const noexcept { return coefficients_.size(); }
    static double eigenvalue(std::size_t n);
    static double eigenfunction(std::size_t n, double x);
    /// (g, phi_n), n = 1..modes.
    double coefficient(std::size_t n) const { return coefficients_.at(n - 1); }

    /// sum_n lambda_n (g, phi_n)^2 over the retained modes.
    double energy() const;

private:
    std::vector<double> coefficients_;
};

/// (d_t^alpha - d_xx) v = 0, v(., 0) = g, by L1 in time and central differences in space.
SpaceTimeField solve_homogeneous_l1(const SpatialProfile& g, FractionalOrder alpha, const TimeGrid& time);

/// Truncated eigenfunction series sum_n E_{alpha,1}(-lambda_n t^alpha) (g, phi_n) phi_n(x).
SpaceTimeField solve_homogeneous_spectral(const SpatialProfile& g, FractionalOrder alpha, const TimeGrid& time,
                                          const SpectralBasis& basis);

/// (d_t^alpha - d_xx) u = rho(t) g(x), u(., 0) = 0, same scheme as the homogeneous solver.
SpaceTimeField solve_inhomogeneous_l1(const SpatialProfile& g, const TimeSeries& rho, FractionalOrder alpha,
                                      const TimeGrid& time);

/// u(x0, t_l) for a node x0.
TimeSeries probe(const SpaceTimeField& field, double x0);

}  // namespace fracinv::forward
