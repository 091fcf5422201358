#include "tsecon/stats.hpp"
#include "tsecon/coefficient.hpp"

#include <utility>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsecon::stats {

namespace bm = boost::math;

double normal_cdf(double x) {
    if (std::isnan(x)) return x;
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return bm::cdf(bm::normal(), x);
}

double normal_quantile(double p) { return bm::quantile(bm::normal(), p); }

double chi2_sf(double x, double df) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    return bm::cdf(bm::complement(bm::chi_squared(df), x));
}

double t_two_sided(double t, double df) {
    if (std::isnan(t)) return t;
    if (std::isinf(t)) return 0.0;
    return 2.0 * bm::cdf(bm::complement(bm::students_t(df), std::fabs(t)));
}

double t_quantile(double p, double df) { return bm::quantile(bm::students_t(df), p); }

double f_sf(double x, double df1, double df2) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    return bm::cdf(bm::complement(bm::fisher_f(df1, df2), x));
}

double z_two_sided(double z) {
    if (std::isnan(z)) return z;
    return 2.0 * normal_cdf(-std::fabs(z));
}

double mean(std::span<const double> x) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance_pop(std::span<const double> x) {
    double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return variance_pop(x) * static_cast<double>(x.size()) / static_cast<double>(x.size() - 1);
}

} // namespace tsecon::stats

namespace tsecon {

Coefficient make_coefficient(std::string name, double value, double std_error) {
    Coefficient c;
    c.name = std::move(name);
    c.value = value;
    c.std_error = std_error;
    c.z = value / std_error;
    c.p_value = stats::z_two_sided(c.z);
    return c;
}

} // namespace tsecon
