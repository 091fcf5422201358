#pragma once

#include <cmath>
#include <random>

namespace tsecon {

namespace detail {

double fs_mean(Distribution base, double shape, double xi);
double fs_sd(Distribution base, double shape, double xi);
double ged_lambda(double p);

template <class Rng>
double draw_symmetric(Distribution base, double shape, Rng& rng) {
    if (base == Distribution::student_t) {
        std::student_t_distribution<double> t(shape);
        return t(rng) * std::sqrt((shape - 2.0) / shape);
    }
    if (base == Distribution::ged) {
        std::gamma_distribution<double> g(1.0 / shape, 1.0);
        std::bernoulli_distribution sign(0.5);
        double a = ged_lambda(shape) * std::pow(2.0 * g(rng), 1.0 / shape);
        return sign(rng) ? a : -a;
    }
    std::normal_distribution<double> n;
    return n(rng);
}

} // namespace detail

template <class Rng>
double draw(Distribution d, std::span<const double> shape, Rng& rng) {
    switch (d) {
    case Distribution::normal: return detail::draw_symmetric(d, 0.0, rng);
    case Distribution::student_t:
    case Distribution::ged: return detail::draw_symmetric(d, shape[0], rng);
    case Distribution::skew_t:
    case Distribution::skew_ged: {
        Distribution base = d == Distribution::skew_t ? Distribution::student_t : Distribution::ged;
        double xi = shape[1];
        double a = std::fabs(detail::draw_symmetric(base, shape[0], rng));
        std::bernoulli_distribution right(xi * xi / (1.0 + xi * xi));
        double x = right(rng) ? a * xi : -a / xi;
        return (x - detail::fs_mean(base, shape[0], xi)) / detail::fs_sd(base, shape[0], xi);
    }
    }
    return 0.0;
}

} // namespace tsecon
