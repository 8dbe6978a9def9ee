#include "fracinv/fraccalc.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>

namespace fracinv {

namespace {

using boost::math::constants::pi;

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x > 170.0) return std::exp(-boost::math::lgamma(x));
    return 1.0 / boost::math::tgamma(x);
}

// Power series, compensated summation. Stops once terms are negligible and decreasing.
double series(double alpha, double beta, double z) {
    if (z == 0.0) return rgamma(beta);
    const double logz = std::log(std::abs(z));
    double sum = 0.0, comp = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100000; ++k) {
        const double x = alpha * k + beta;
        double mag = std::exp(k * logz - boost::math::lgamma(x));
        const double term = (z < 0.0 && (k % 2)) ? -mag : mag;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (k > 2 && mag < prev && mag <= 1e-17 * std::abs(sum)) break;
        prev = mag;
    }
    return sum;
}

// Large negative argument: -sum_k z^{-k}/Gamma(beta - alpha k), plus the oscillating
// pole contributions when alpha > 1. Returns nothing when the series does not settle.
std::optional<double> asymptotic(double alpha, double beta, double z) {
    const double az = std::abs(z);
    double poles = 0.0;
    if (alpha > 1.0) {
        const double r = std::pow(az, 1.0 / alpha);
        const std::complex<double> sp = std::polar(r, pi<double>() / alpha);
        poles = 2.0 / alpha * std::real(std::pow(sp, 1.0 - beta) * std::exp(sp));
    } else if (alpha == 1.0 && beta != 1.0 && std::exp(z) > 1e-18 / az) {
        return std::nullopt;
    }

    // Every 1/Gamma(beta - alpha k) vanishes for integer alpha and integer beta <= alpha.
    if (alpha == std::floor(alpha) && beta == std::floor(beta) && beta <= alpha) return poles;

    // Terms are bounded by the envelope |z|^{-k} Gamma(1 - beta + alpha k) / pi once
    // beta - alpha k < 0; the envelope decides convergence since single terms can vanish.
    const double logz = std::log(az);
    double sum = 0.0, prev_env = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 400; ++k) {
        const double x = beta - alpha * k;
        const double rg = rgamma(x);
        if (!std::isfinite(rg)) return std::nullopt;
        sum -= ((k % 2) ? -1.0 : 1.0) * std::exp(-k * logz) * rg;
        if (x >= 0.0) continue;
        const double env = std::exp(boost::math::lgamma(1.0 - x) - k * logz) / pi<double>();
        if (env <= 1e-17 * std::abs(sum + poles)) return sum + poles;
        if (env > prev_env) break;
        prev_env = env;
    }
    return std::nullopt;
}

// Integral representation on the positive axis, 0 < alpha < 1, z < 0, beta < 1 + alpha.
double gll_integral(double alpha, double beta, double z) {
    const double a = std::abs(z);
    const double s1 = boost::math::sin_pi(1.0 - beta);
    const double s2 = boost::math::sin_pi(1.0 - beta + alpha);
    const double c = std::cos(pi<double>() * alpha);
    const double scale = 1.0 / (alpha * pi<double>());
    auto kernel = [&](double chi) {
        if (chi <= 0.0) return 0.0;
        const double num = chi * s1 - z * s2;
        const double den = chi * chi - 2.0 * chi * z * c + z * z;
        return scale * std::pow(chi, (1.0 - beta) / alpha) * std::exp(-std::pow(chi, 1.0 / alpha)) * num / den;
    };
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    const double tol = 1e-14;
    return near.integrate(kernel, 0.0, a, tol) + far.integrate(kernel, a, std::numeric_limits<double>::infinity(), tol);
}

// Inverse Laplace transform of s^{alpha-beta}/(s^alpha - z) on a parabolic contour.
// Poles off the negative axis (alpha > 1) are subtracted and their residues added back.
double contour(double alpha, double beta, double z) {
    constexpr int N = 32;
    const double mu = pi<double>() * N / 12.0;
    const double h = 3.0 / N;
    using cd = std::complex<double>;

    cd poles[2];
    int npoles = 0;
    if (alpha > 1.0 && z < 0.0) {
        const double r = std::pow(std::abs(z), 1.0 / alpha);
        poles[0] = std::polar(r, pi<double>() / alpha);
        poles[1] = std::conj(poles[0]);
        npoles = 2;
    }

    auto integrand = [&](double u) {
        const cd s = mu * (1.0 + cd(0.0, u)) * (1.0 + cd(0.0, u));
        const cd ds = 2.0 * mu * cd(0.0, 1.0) * (1.0 + cd(0.0, u));
        cd F = std::pow(s, alpha - beta) / (std::pow(s, alpha) - z);
        for (int p = 0; p < npoles; ++p) F -= std::pow(poles[p], 1.0 - beta) / alpha / (s - poles[p]);
        return std::exp(s) * F * ds;
    };

    // integrand(-u) = -conj(integrand(u)), so the sum over the whole contour is i times
    // the imaginary parts below.
    double value = h / (2.0 * pi<double>()) * std::imag(integrand(0.0));
    for (int k = 1; k <= N; ++k) value += h / pi<double>() * std::imag(integrand(k * h));
    for (int p = 0; p < npoles; ++p) value += std::real(std::pow(poles[p], 1.0 - beta) / alpha * std::exp(poles[p]));
    return value;
}

double negative_axis(double alpha, double beta, double z) {
    if (alpha < 1.0) {
        if (beta >= 1.0 + alpha) return (negative_axis(alpha, beta - alpha, z) - rgamma(beta - alpha)) / z;
        return gll_integral(alpha, beta, z);
    }
    return contour(alpha, beta, z);
}

}  // namespace

double mittag_leffler(double alpha, double beta, double z) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("mittag_leffler: alpha must lie in (0, 2]");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("mittag_leffler: beta must be positive");
    if (std::isnan(z)) throw std::domain_error("mittag_leffler: argument is NaN");

    if (z == 0.0) return rgamma(beta);
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);
    if (z > 0.0 || z >= -1.0) return series(alpha, beta, z);
    if (std::isinf(z)) return 0.0;
    if (auto a = asymptotic(alpha, beta, z)) return *a;
    return negative_axis(alpha, beta, z);
}

}  // namespace fracinv
