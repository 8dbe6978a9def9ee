#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracinv {

/// Uniform partition 0 = s_0 < s_1 < ... < s_L = T.
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t steps);

    double horizon() const noexcept { return horizon_; }
    std::size_t steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_ + 1; }
    double tau() const noexcept { return horizon_ / static_cast<double>(steps_); }
    double node(std::size_t l) const noexcept {
        return horizon_ * static_cast<double>(l) / static_cast<double>(steps_);
    }
    std::vector<double> nodes() const;

    bool operator==(const TimeGrid&) const = default;

private:
    double horizon_;
    std::size_t steps_;
};

/// Samples of a function of time at every node of a TimeGrid.
class TimeSeries {
public:
    explicit TimeSeries(TimeGrid grid);  // zeros
    TimeSeries(TimeGrid grid, std::vector<double> values);

    template <class F>
    static TimeSeries sample(const TimeGrid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t l = 0; l < v.size(); ++l) v[l] = f(grid.node(l));
        return TimeSeries(grid, std::move(v));
    }

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t l) const noexcept { return values_[l]; }
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }

private:
    TimeGrid grid_;
    std::vector<double> values_;
};

/// Caputo order in (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);
    double value() const noexcept { return alpha_; }
    bool is_integer() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

void require_same_grid(const TimeSeries& a, const TimeSeries& b, const char* what);

TimeSeries operator+(const TimeSeries& a, const TimeSeries& b);
TimeSeries operator-(const TimeSeries& a, const TimeSeries& b);
TimeSeries operator*(double s, const TimeSeries& a);

// Norms on the grid. L1 and L2 use the composite trapezoid rule.
double l1_norm(const TimeSeries& f);
double l2_norm(const TimeSeries& f);
double max_norm(const TimeSeries& f);

// Trapezoid L1 norm of f restricted to nodes [first, last].
double l1_norm(const TimeSeries& f, std::size_t first, std::size_t last);

}  // namespace fracinv
