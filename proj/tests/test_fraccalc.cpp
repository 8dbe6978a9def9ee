#include "fracinv/fraccalc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fracinv;

namespace {

double max_error(const TimeSeries& f, double (*exact)(double, double, double), double a, double b,
                 std::size_t first = 0) {
    double e = 0.0;
    for (std::size_t l = first; l < f.size(); ++l) e = std::max(e, std::abs(f[l] - exact(f.grid().node(l), a, b)));
    return e;
}

// Gamma(p+1)/Gamma(p+1+s) t^{p+s}: J^s t^p for s > 0, D^{-s} t^p for s < 0.
double power_rule(double t, double p, double s) {
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + s) * std::pow(t, p + s);
}

TimeSeries power(const TimeGrid& g, double p) {
    return TimeSeries::sample(g, [p](double t) { return std::pow(t, p); });
}

// Linear interpolant of nodal data at arbitrary t.
double interpolate(const TimeSeries& f, double t) {
    const double tau = f.grid().tau();
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t / tau), f.size() - 2);
    const double w = t / tau - static_cast<double>(i);
    return (1.0 - w) * f[i] + w * f[i + 1];
}

}  // namespace

TEST(RlIntegral, ExactForLinearData) {
    const TimeGrid g(1.0, 40);
    for (double beta : {0.1, 0.3, 0.5, 0.9, 1.0}) {
        EXPECT_LT(max_error(rl_integral(power(g, 1.0), beta), power_rule, 1.0, beta), 1e-13) << beta;
        EXPECT_LT(max_error(rl_integral(power(g, 0.0), beta), power_rule, 0.0, beta), 1e-13) << beta;
    }
}

TEST(RlIntegral, OrderZeroIsIdentity) {
    const TimeGrid g(2.0, 17);
    const auto f = TimeSeries::sample(g, [](double t) { return std::cos(3.0 * t) - t; });
    EXPECT_EQ(max_norm(rl_integral(f, 0.0) - f), 0.0);
}

TEST(RlIntegral, FirstOrderIsTrapezoid) {
    const TimeGrid g(1.0, 64);
    const auto f = power(g, 1.0);
    EXPECT_LT(max_error(rl_integral(f, 1.0), power_rule, 1.0, 1.0), 1e-15);
}

TEST(RlIntegral, PowerRuleConvergesQuadratically) {
    for (double beta : {0.7, 0.5, 0.1}) {
        for (double p : {2.0, 3.0}) {
            double prev = 0.0;
            for (std::size_t n : {64u, 128u, 256u}) {
                const TimeGrid g(1.0, n);
                const double e = max_error(rl_integral(power(g, p), beta), power_rule, p, beta);
                if (prev > 0.0) EXPECT_GT(prev / e, 3.5) << "beta=" << beta << " p=" << p << " n=" << n;
                prev = e;
            }
        }
    }
}

TEST(RlIntegral, SemigroupProperty) {
    const TimeGrid g(1.0, 512);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sin(2.0 * t) + t * t; });
    const auto lhs = rl_integral(rl_integral(f, 0.3), 0.4);
    const auto rhs = rl_integral(f, 0.7);
    EXPECT_LT(max_norm(lhs - rhs), 1e-5);
}

TEST(CaputoDerivative, ExactForLinearData) {
    const TimeGrid g(1.0, 33);
    for (double a : {0.3, 0.5, 0.9}) {
        const auto d = caputo_derivative(power(g, 1.0), FractionalOrder(a));
        EXPECT_LT(max_error(d, power_rule, 1.0, -a, 1), 1e-13) << a;
        EXPECT_EQ(d[0], 0.0);
    }
}

TEST(CaputoDerivative, ConstantsHaveZeroDerivative) {
    const TimeGrid g(3.0, 50);
    const auto c = TimeSeries::sample(g, [](double) { return 4.2; });
    for (double a : {0.3, 0.9, 1.0}) EXPECT_LT(max_norm(caputo_derivative(c, FractionalOrder(a))), 1e-12) << a;
}

TEST(CaputoDerivative, OrderOneIsExactForQuadratics) {
    const TimeGrid g(1.0, 20);
    const auto f = TimeSeries::sample(g, [](double t) { return t * t - 3.0 * t + 1.0; });
    const auto d = caputo_derivative(f, FractionalOrder(1.0));
    for (std::size_t l = 0; l < g.size(); ++l) EXPECT_NEAR(d[l], 2.0 * g.node(l) - 3.0, 1e-12);
}

// max-norm error <= C tau^{2-alpha}, C not growing under refinement
TEST(CaputoDerivative, PowerRuleRefinementStudy) {
    for (double a : {0.3, 0.5, 0.9}) {
        for (double p : {2.0, 3.0}) {
            std::vector<double> constants;
            for (std::size_t n : {64u, 128u, 256u}) {
                const TimeGrid g(1.0, n);
                const auto d = caputo_derivative(power(g, p), FractionalOrder(a));
                constants.push_back(max_error(d, power_rule, p, -a, 1) / std::pow(g.tau(), 2.0 - a));
            }
            EXPECT_LE(constants[1], constants[0] * 1.1) << "alpha=" << a << " p=" << p;
            EXPECT_LE(constants[2], constants[0] * 1.1) << "alpha=" << a << " p=" << p;
        }
    }
}

TEST(RlDerivative, ZeroOrderReturnsInput) {
    const TimeGrid g(1.0, 10);
    const auto f = TimeSeries::sample(g, [](double t) { return 1.0 + t; });
    EXPECT_EQ(max_norm(rl_derivative(f, 0.0) - f), 0.0);
}

TEST(RlDerivative, IncludesSingularTerm) {
    const TimeGrid g(1.0, 25);
    for (double beta : {0.2, 0.5, 0.8}) {
        const auto d = rl_derivative(TimeSeries::sample(g, [](double t) { return 2.0 + t; }), beta);
        for (std::size_t l = 1; l < g.size(); ++l) {
            const double t = g.node(l);
            const double exact = 2.0 * std::pow(t, -beta) / std::tgamma(1.0 - beta) + power_rule(t, 1.0, -beta);
            EXPECT_NEAR(d[l], exact, 1e-12 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST(RlDerivative, AgreesWithCaputoWhenStartingAtZero) {
    const TimeGrid g(1.0, 64);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sin(5.0 * t) + t * t; });
    for (double beta : {0.3, 0.6}) {
        EXPECT_EQ(max_norm(rl_derivative(f, beta) - caputo_derivative(f, FractionalOrder(beta))), 0.0);
    }
}

TEST(RlDerivative, PowerRuleRefinementStudy) {
    for (double beta : {0.3, 0.5, 0.9}) {
        double prev = 0.0;
        for (std::size_t n : {64u, 128u, 256u}) {
            const TimeGrid g(1.0, n);
            const double e = max_error(rl_derivative(power(g, 2.0), beta), power_rule, 2.0, -beta, 1);
            if (prev > 0.0) EXPECT_GT(prev / e, std::pow(2.0, 2.0 - beta) * 0.9) << beta;
            prev = e;
        }
    }
}

// For f(0) = 0 the integral undoes the derivative and both derivatives coincide;
// random smooth f, error shrinking under refinement.
TEST(OperatorIdentities, ReconstructionAndCompositionOnRandomSmoothData) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), freq(0.5, 6.0), order(0.1, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng), c4 = coef(rng), w = freq(rng);
        const double beta = order(rng);
        auto f = [=](double t) { return c1 * t + c2 * t * t + c3 * t * t * t + c4 * std::sin(w * t); };
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t n : {64u, 128u, 256u}) {
            const TimeGrid g(1.0, n);
            const auto fs = TimeSeries::sample(g, f);
            const auto d = rl_derivative(fs, beta);
            ASSERT_EQ(max_norm(d - caputo_derivative(fs, FractionalOrder(beta))), 0.0);
            const double e = max_norm(rl_integral(d, beta) - fs);
            EXPECT_LT(e, prev) << "trial " << trial << " n=" << n;
            prev = e;
        }
        EXPECT_LT(prev, 1e-2) << "trial " << trial;
    }
}

// ||J^{1-alpha} u||_1 <= T^{1-alpha}/Gamma(2-alpha) ||u||_1
TEST(RlIntegral, YoungBoundOnRandomData) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const TimeGrid g(2.0, 128);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = u(rng);
        const TimeSeries f(g, v);
        for (double a : {0.3, 0.9}) {
            const double bound = std::pow(2.0, 1.0 - a) / std::tgamma(2.0 - a) * l1_norm(f);
            EXPECT_LE(l1_norm(rl_integral(f, 1.0 - a)), bound * (1.0 + 1e-3)) << trial;
        }
    }
}

// d^0.4 d^0.3 t^3 = d^0.7 t^3 since t^3 and d^0.3 t^3 vanish at 0.
TEST(OperatorIdentities, CaputoComposition) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {64u, 128u, 256u}) {
        const TimeGrid g(1.0, n);
        const auto f = power(g, 3.0);
        const auto c = caputo_derivative(caputo_derivative(f, FractionalOrder(0.3)), FractionalOrder(0.4));
        const double e = max_error(c, power_rule, 3.0, -0.7, 0);
        EXPECT_LT(e, prev);
        prev = e;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(RlDerivative, ConstantExample) {
    const TimeGrid g(1.0, 16);
    const auto d = rl_derivative(TimeSeries::sample(g, [](double) { return 1.0; }), 0.5);
    for (std::size_t l = 1; l < g.size(); ++l) EXPECT_NEAR(d[l], 1.0 / std::sqrt(std::numbers::pi * g.node(l)), 1e-13);
}

TEST(Convolve, ConstantsAndLines) {
    const TimeGrid g(2.0, 16);
    const auto one = TimeSeries::sample(g, [](double) { return 1.0; });
    const auto t = power(g, 1.0);
    const auto c11 = convolve(one, one);
    const auto ct1 = convolve(t, one);
    const auto ctt = convolve(t, t);
    for (std::size_t l = 0; l < g.size(); ++l) {
        const double s = g.node(l);
        EXPECT_NEAR(c11[l], s, 1e-14);
        EXPECT_NEAR(ct1[l], s * s / 2.0, 1e-14);
        EXPECT_NEAR(ctt[l], s * s * s / 6.0, 1e-13);
    }
}

// Simpson on a refined grid integrates the piecewise-quadratic product of interpolants exactly.
TEST(Convolve, MatchesRefinedSimpsonOfInterpolants) {
    const TimeGrid g(1.0, 32);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sin(3.0 * t); });
    const auto h = TimeSeries::sample(g, [](double t) { return std::sin(7.0 * t) + 0.5; });
    const auto c = convolve(f, h);
    for (std::size_t l = 1; l < g.size(); ++l) {
        const double t = g.node(l);
        const std::size_t m = 16 * l;
        const double dt = t / static_cast<double>(m);
        double s = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            const double x = dt * static_cast<double>(k);
            const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            s += w * interpolate(f, x) * interpolate(h, std::max(0.0, t - x));
        }
        EXPECT_NEAR(c[l], s * dt / 3.0, 1e-13) << l;
    }
}

TEST(Convolve, SineExampleMatchesRefinedTrapezoid) {
    const TimeGrid g(1.0, 128);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sin(t); });
    const auto c = convolve(f, f);
    for (std::size_t l = 8; l < g.size(); l += 8) {
        const double t = g.node(l);
        const std::size_t m = 16 * l;
        const double dt = t / static_cast<double>(m);
        double s = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            const double x = dt * static_cast<double>(k);
            s += ((k == 0 || k == m) ? 0.5 : 1.0) * interpolate(f, x) * interpolate(f, std::max(0.0, t - x));
        }
        EXPECT_NEAR(c[l], s * dt, 1e-6) << l;
    }
}

TEST(Convolve, Commutes) {
    const TimeGrid g(1.0, 50);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    std::vector<double> a(g.size()), b(g.size());
    for (auto& x : a) x = n(rng);
    for (auto& x : b) x = n(rng);
    const TimeSeries f(g, a), h(g, b);
    EXPECT_LT(max_norm(convolve(f, h) - convolve(h, f)), 1e-13);
}

TEST(Convolve, YoungInequalityOnRandomData) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const TimeGrid g(1.0, 64);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(g.size()), b(g.size());
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = std::abs(u(rng));
        const TimeSeries f(g, a), h(g, b);
        // the discrete L1 norm of interpolants dominates; allow the quadrature gap
        EXPECT_LE(l1_norm(convolve(f, h)), l1_norm(f) * l1_norm(h) * 1.05 + 1e-12) << trial;
    }
}

TEST(Mollify, KernelIsNormalizedAndCompact) {
    for (double e : {5.0 / 128.0, 0.1}) {
        double s = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double w = (k == 0 || k == 1000) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            s += w * mollifier_kernel(-e + 2.0 * e * k / 1000.0, e);
        }
        EXPECT_NEAR(s * 2.0 * e / 3000.0, 1.0, 1e-10) << e;
    }
    const double eps = 0.07;
    const int n = 2000;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double t = -eps + 2.0 * eps * k / n;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        s += w * mollifier_kernel(t, eps);
    }
    EXPECT_NEAR(s * 2.0 * eps / n / 3.0, 1.0, 1e-12);
    EXPECT_EQ(mollifier_kernel(0.0700001, eps), 0.0);
    EXPECT_EQ(mollifier_kernel(-0.08, eps), 0.0);
    EXPECT_GT(mollifier_kernel(0.069, eps), 0.0);
    EXPECT_DOUBLE_EQ(mollifier_kernel(0.0, eps), 15.0 / (16.0 * eps));
}

TEST(Mollify, ReproducesConstantsAndAffineData) {
    const TimeGrid g(1.0, 128);
    for (double eps : {1.0 / 128.0, 5.0 / 128.0, 0.3 / 128.0, 0.4}) {
        const auto c = TimeSeries::sample(g, [](double) { return -1.5; });
        const auto a = TimeSeries::sample(g, [](double t) { return 2.0 - 7.0 * t; });
        EXPECT_LT(max_norm(mollify(c, MollifierSpec(eps)) - c), 1e-13) << eps;
        EXPECT_LT(max_norm(mollify(a, MollifierSpec(eps)) - a), 1e-12) << eps;
    }
}

TEST(Mollify, IsLinearAndSmoothsTowardData) {
    const TimeGrid g(1.0, 256);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sin(4.0 * t); });
    const auto h = TimeSeries::sample(g, [](double t) { return t * t; });
    const MollifierSpec spec(0.05);
    EXPECT_LT(max_norm(mollify(2.0 * f + (-3.0) * h, spec) - (2.0 * mollify(f, spec) + (-3.0) * mollify(h, spec))),
              1e-13);

    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.1, 0.05, 0.025}) {
        const double e = max_norm(mollify(f, MollifierSpec(eps)) - f);
        EXPECT_LT(e, prev);
        prev = e;
    }
}

// f >= 0 implies f^eps >= 0, and f^eps is bounded by the extension's sup norm.
TEST(Mollify, PositivityAndSupBoundOnRandomData) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const TimeGrid g(1.0, 128);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = u(rng) * u(rng);
        const TimeSeries f(g, v);
        const auto m = mollify(f, MollifierSpec(u(rng) < 0.5 ? 5.0 / 128.0 : 0.2));
        double ext = 0.0;
        for (double x : v) ext = std::max({ext, x, std::abs(2.0 * v.front() - x), std::abs(2.0 * v.back() - x)});
        for (std::size_t l = 0; l < g.size(); ++l) {
            EXPECT_GE(m[l], -1e-15) << trial;
            EXPECT_LE(std::abs(m[l]), ext + 1e-14) << trial;
        }
    }
}

TEST(Mollify, OperatorMatchesFunction) {
    const TimeGrid g(1.0, 100);
    const auto f = TimeSeries::sample(g, [](double t) { return std::exp(-t) * std::cos(9.0 * t); });
    const detail::MollifierOperator op(g, MollifierSpec(0.043));
    EXPECT_LT(max_norm(op.apply(f) - mollify(f, MollifierSpec(0.043))), 1e-15);
}

TEST(PowerDifferences, MatchDirectEvaluation) {
    for (double p : {0.1, 0.5, 1.3, 1.9}) {
        for (double d : {1.0, 2.0, 7.0, 8.0, 30.0}) {
            EXPECT_NEAR(detail::forward_power_difference(d, p), std::pow(d + 1.0, p) - std::pow(d, p), 1e-12);
            EXPECT_NEAR(detail::second_power_difference(d, p),
                        std::pow(d + 1.0, p) - 2.0 * std::pow(d, p) + std::pow(d - 1.0, p), 1e-11);
        }
    }
    // large arguments, where the direct form loses every digit
    const double d = 1e7, p = 0.4;
    EXPECT_NEAR(detail::second_power_difference(d, p) / (p * (p - 1.0) * std::pow(d, p - 2.0)), 1.0, 1e-6);
}

TEST(FraccalcErrors, RejectInvalidArguments) {
    const TimeGrid g(1.0, 8);
    const auto f = power(g, 1.0);
    EXPECT_THROW(FractionalOrder(0.0), std::domain_error);
    EXPECT_THROW(FractionalOrder(1.2), std::domain_error);
    EXPECT_THROW(rl_integral(f, -0.1), std::domain_error);
    EXPECT_THROW(rl_integral(f, 1.5), std::domain_error);
    EXPECT_THROW(rl_derivative(f, 1.0), std::domain_error);
    EXPECT_THROW(caputo_derivative(TimeSeries(TimeGrid(1.0, 1)), FractionalOrder(0.5)), std::domain_error);
    EXPECT_THROW(MollifierSpec(0.0), std::domain_error);
    EXPECT_THROW(mollify(f, MollifierSpec(1.0)), std::domain_error);
    EXPECT_THROW(convolve(f, power(TimeGrid(1.0, 9), 1.0)), std::domain_error);
    EXPECT_THROW(TimeSeries(g, std::vector<double>(3)), std::invalid_argument);
    EXPECT_THROW(TimeSeries(g, std::vector<double>(9, std::nan(""))), std::invalid_argument);
    EXPECT_THROW(TimeGrid(0.0, 4), std::invalid_argument);
}
