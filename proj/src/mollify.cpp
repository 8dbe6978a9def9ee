#include "fracinv/fraccalc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace fracinv {

MollifierSpec::MollifierSpec(double radius) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::domain_error("MollifierSpec: radius must be positive");
}

double mollifier_kernel(double t, double eps) {
    const double u = t / eps;
    if (std::abs(u) > 1.0) return 0.0;
    const double w = (1.0 + u) * (1.0 - u);
    return 15.0 / (16.0 * eps) * w * w;
}

namespace detail {

namespace {

// 4-point Gauss-Legendre on [-1, 1]; exact through degree 7.
constexpr std::array<double, 4> kNodes = {-0.86113631159405257522, -0.33998104358485626480,
                                          0.33998104358485626480, 0.86113631159405257522};
constexpr std::array<double, 4> kWeights = {0.34785484513745385737, 0.65214515486254614263,
                                            0.65214515486254614263, 0.34785484513745385737};

// Adds c * (extended node k) to row, expressing the reflected value through grid nodes.
void add_extended(std::vector<double>& row, long k, long L, double c) {
    if (k < 0) {
        row[0] += 2.0 * c;
        row[static_cast<std::size_t>(-k)] -= c;
    } else if (k > L) {
        row[static_cast<std::size_t>(L)] += 2.0 * c;
        row[static_cast<std::size_t>(2 * L - k)] -= c;
    } else {
        row[static_cast<std::size_t>(k)] += c;
    }
}

}  // namespace

MollifierOperator::MollifierOperator(const TimeGrid& grid, MollifierSpec spec) : grid_(grid) {
    const double eps = spec.radius();
    if (eps >= grid.horizon()) throw std::domain_error("mollify: radius must be smaller than the horizon");

    const long L = static_cast<long>(grid.steps());
    const double tau = grid.tau();
    rows_.resize(grid.size());
    std::vector<double> dense(grid.size());

    for (long l = 0; l <= L; ++l) {
        std::fill(dense.begin(), dense.end(), 0.0);
        const double t = grid.node(static_cast<std::size_t>(l));
        const double a = t - eps, b = t + eps;
        long k = static_cast<long>(std::floor(a / tau));
        double s0 = a;
        while (s0 < b) {
            const double s1 = std::min(b, static_cast<double>(k + 1) * tau);
            if (s1 > s0) {
                const double half = 0.5 * (s1 - s0), mid = 0.5 * (s1 + s0);
                double w_left = 0.0, w_right = 0.0;
                for (std::size_t q = 0; q < kNodes.size(); ++q) {
                    const double s = mid + half * kNodes[q];
                    const double theta = (s - static_cast<double>(k) * tau) / tau;
                    const double z = kWeights[q] * half * mollifier_kernel(t - s, eps);
                    w_left += z * (1.0 - theta);
                    w_right += z * theta;
                }
                add_extended(dense, k, L, w_left);
                add_extended(dense, k + 1, L, w_right);
            }
            s0 = s1;
            ++k;
        }
        auto& row = rows_[static_cast<std::size_t>(l)];
        for (std::size_t j = 0; j < dense.size(); ++j)
            if (dense[j] != 0.0) row.push_back({j, dense[j]});
    }
}

TimeSeries MollifierOperator::apply(const TimeSeries& f) const {
    if (!(f.grid() == grid_)) throw std::domain_error("mollify: series grid differs from operator grid");
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t l = 0; l < rows_.size(); ++l) {
        double s = 0.0;
        for (const auto& e : rows_[l]) s += e.weight * f[e.column];
        out[l] = s;
    }
    return TimeSeries(f.grid(), std::move(out));
}

}  // namespace detail

TimeSeries mollify(const TimeSeries& f, MollifierSpec spec) {
    return detail::MollifierOperator(f.grid(), spec).apply(f);
}

}  // namespace fracinv
