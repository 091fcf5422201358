#include "tsecon/distributions.hpp"

#include "tsecon/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

namespace tsecon {

namespace {

constexpr double kPi = std::numbers::pi;

double log_t(double z, double nu) {
    // unit-variance t
    double s2 = nu - 2.0;
    return std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(kPi * s2) -
           (nu + 1.0) / 2.0 * std::log1p(z * z / s2);
}

double log_ged(double z, double p) {
    double lam = detail::ged_lambda(p);
    return std::log(p) - std::log(lam) - (1.0 + 1.0 / p) * std::log(2.0) - std::lgamma(1.0 / p) -
           0.5 * std::pow(std::fabs(z / lam), p);
}

double abs_t(double nu) {
    return 2.0 * std::sqrt(nu - 2.0) * std::exp(std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)) /
           ((nu - 1.0) * std::sqrt(kPi));
}

double abs_ged(double p) {
    return detail::ged_lambda(p) * std::pow(2.0, 1.0 / p) *
           std::exp(std::lgamma(2.0 / p) - std::lgamma(1.0 / p));
}

double log_symmetric(Distribution base, double z, double shape) {
    return base == Distribution::student_t ? log_t(z, shape) : log_ged(z, shape);
}

double abs_symmetric(Distribution base, double shape) {
    return base == Distribution::student_t ? abs_t(shape) : abs_ged(shape);
}

double log_skewed(Distribution base, double z, double shape, double xi) {
    double mu = detail::fs_mean(base, shape, xi);
    double sd = detail::fs_sd(base, shape, xi);
    double u = sd * z + mu;
    double arg = u >= 0.0 ? u / xi : u * xi;
    return std::log(sd) + std::log(2.0 / (xi + 1.0 / xi)) + log_symmetric(base, arg, shape);
}

} // namespace

namespace detail {

double ged_lambda(double p) {
    return std::sqrt(std::pow(2.0, -2.0 / p) * std::exp(std::lgamma(1.0 / p) - std::lgamma(3.0 / p)));
}

double fs_mean(Distribution base, double shape, double xi) {
    return abs_symmetric(base, shape) * (xi - 1.0 / xi);
}

double fs_sd(Distribution base, double shape, double xi) {
    double m = fs_mean(base, shape, xi);
    return std::sqrt(xi * xi + 1.0 / (xi * xi) - 1.0 - m * m);
}

} // namespace detail

std::string to_string(Distribution d) {
    switch (d) {
    case Distribution::normal: return "normal";
    case Distribution::student_t: return "t";
    case Distribution::ged: return "ged";
    case Distribution::skew_t: return "skewed-t";
    case Distribution::skew_ged: return "skewed-ged";
    }
    return "?";
}

Distribution distribution_from_string(const std::string& s) {
    if (s == "normal" || s == "gaussian") return Distribution::normal;
    if (s == "t" || s == "student-t" || s == "student_t") return Distribution::student_t;
    if (s == "ged") return Distribution::ged;
    if (s == "skewed-t" || s == "skew-t" || s == "skew_t") return Distribution::skew_t;
    if (s == "skewed-ged" || s == "skew-ged" || s == "skew_ged") return Distribution::skew_ged;
    throw DomainError("unknown distribution: " + s);
}

int shape_count(Distribution d) {
    switch (d) {
    case Distribution::normal: return 0;
    case Distribution::student_t:
    case Distribution::ged: return 1;
    default: return 2;
    }
}

std::vector<std::string> shape_names(Distribution d) {
    switch (d) {
    case Distribution::normal: return {};
    case Distribution::student_t: return {"nu"};
    case Distribution::ged: return {"shape"};
    case Distribution::skew_t: return {"nu", "skew"};
    case Distribution::skew_ged: return {"shape", "skew"};
    }
    return {};
}

std::vector<double> default_shape(Distribution d) {
    switch (d) {
    case Distribution::normal: return {};
    case Distribution::student_t: return {8.0};
    case Distribution::ged: return {1.5};
    case Distribution::skew_t: return {8.0, 1.0};
    case Distribution::skew_ged: return {1.5, 1.0};
    }
    return {};
}

void check_shape(Distribution d, std::span<const double> shape) {
    if (static_cast<int>(shape.size()) != shape_count(d))
        throw DomainError("wrong number of shape parameters for " + to_string(d));
    if (d == Distribution::student_t || d == Distribution::skew_t) {
        if (!(shape[0] > 2.0)) throw DomainError("t degrees of freedom must exceed 2");
    }
    if (d == Distribution::ged || d == Distribution::skew_ged) {
        if (!(shape[0] > 0.0)) throw DomainError("GED shape must be positive");
    }
    if (shape_count(d) == 2 && !(shape[1] > 0.0)) throw DomainError("skew parameter must be positive");
}

double log_density(Distribution d, double z, std::span<const double> shape) {
    switch (d) {
    case Distribution::normal: return -0.5 * std::log(2.0 * kPi) - 0.5 * z * z;
    case Distribution::student_t: return log_t(z, shape[0]);
    case Distribution::ged: return log_ged(z, shape[0]);
    case Distribution::skew_t: return log_skewed(Distribution::student_t, z, shape[0], shape[1]);
    case Distribution::skew_ged: return log_skewed(Distribution::ged, z, shape[0], shape[1]);
    }
    return 0.0;
}

double loglik_contribution(Distribution d, double z, double h, std::span<const double> shape,
                           LikelihoodConvention convention) {
    if (!(h > 0.0)) throw DomainError("conditional variance must be positive");
    check_shape(d, shape);
    if (convention == LikelihoodConvention::kernel_only) return -0.5 * (std::log(h) + z * z);
    return log_density(d, z, shape) - 0.5 * std::log(h);
}

double expected_abs(Distribution d, std::span<const double> shape) {
    switch (d) {
    case Distribution::normal: return std::sqrt(2.0 / kPi);
    case Distribution::student_t: return abs_t(shape[0]);
    case Distribution::ged: return abs_ged(shape[0]);
    default: return expected_abs_numeric(d, shape);
    }
}

double expected_abs_numeric(Distribution d, std::span<const double> shape) {
    auto f = [&](double z) { return std::fabs(z) * std::exp(log_density(d, z, shape)); };
    // the skewed densities have a kink where the underlying variable crosses zero
    double kink = 0.0;
    if (d == Distribution::skew_t || d == Distribution::skew_ged) {
        Distribution base = d == Distribution::skew_t ? Distribution::student_t : Distribution::ged;
        kink = -detail::fs_mean(base, shape[0], shape[1]) / detail::fs_sd(base, shape[0], shape[1]);
    }
    double a = std::min(0.0, kink), b = std::max(0.0, kink);
    boost::math::quadrature::exp_sinh<double> tail;
    double total = tail.integrate(f, b, std::numeric_limits<double>::infinity());
    total += tail.integrate([&](double u) { return f(-u); }, -a, std::numeric_limits<double>::infinity());
    if (b > a) total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-12);
    return total;
}

} // namespace tsecon
