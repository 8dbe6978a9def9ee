#include "fracinv/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracinv {

TimeGrid::TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
    if (steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
}

std::vector<double> TimeGrid::nodes() const {
    std::vector<double> t(size());
    for (std::size_t l = 0; l < t.size(); ++l) t[l] = node(l);
    return t;
}

TimeSeries::TimeSeries(TimeGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

TimeSeries::TimeSeries(TimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("TimeSeries: expected " + std::to_string(grid_.size()) +
                                    " values, got " + std::to_string(values_.size()));
    for (std::size_t l = 0; l < values_.size(); ++l)
        if (!std::isfinite(values_[l]))
            throw std::invalid_argument("TimeSeries: non-finite value at node " +
                                        std::to_string(l));
}

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("fractional order must lie in (0, 1]");
}

void require_same_grid(const TimeSeries& a, const TimeSeries& b, const char* what) {
    if (!(a.grid() == b.grid()))
        throw std::domain_error(std::string(what) + ": series live on different time grids");
}

namespace {

template <class Op>
TimeSeries zip(const TimeSeries& a, const TimeSeries& b, Op op) {
    require_same_grid(a, b, "TimeSeries arithmetic");
    std::vector<double> out(a.size());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = op(a[l], b[l]);
    return TimeSeries(a.grid(), std::move(out));
}

}  // namespace

TimeSeries operator+(const TimeSeries& a, const TimeSeries& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}

TimeSeries operator-(const TimeSeries& a, const TimeSeries& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
}

TimeSeries operator*(double s, const TimeSeries& a) {
    std::vector<double> out(a.values().begin(), a.values().end());
    for (double& x : out) x *= s;
    return TimeSeries(a.grid(), std::move(out));
}

double l1_norm(const TimeSeries& f, std::size_t first, std::size_t last) {
    if (first > last || last >= f.size()) throw std::out_of_range("l1_norm: bad node range");
    double s = 0.0;
    for (std::size_t l = first; l < last; ++l) s += std::abs(f[l]) + std::abs(f[l + 1]);
    return 0.5 * f.grid().tau() * s;
}

double l1_norm(const TimeSeries& f) { return l1_norm(f, 0, f.size() - 1); }

double l2_norm(const TimeSeries& f) {
    double s = 0.0;
    for (std::size_t l = 0; l + 1 < f.size(); ++l) s += f[l] * f[l] + f[l + 1] * f[l + 1];
    return std::sqrt(0.5 * f.grid().tau() * s);
}

double max_norm(const TimeSeries& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace fracinv
