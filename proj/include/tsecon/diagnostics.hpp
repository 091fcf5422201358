#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsecon/ols.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

/// One reported hypothesis test. `df` holds one entry, or two for F tests.
struct TestResult {
    std::string name;
    std::string distribution; // "chi2", "F", "normal", "t"
    double statistic = 0.0;
    std::vector<double> df;
    double p_value = 1.0;
    std::string null_hypothesis;
    /// Auxiliary regression, when the test is built on one (ARCH-LM).
    std::optional<OlsResult> auxiliary;
};

struct CorrelogramRow {
    int lag = 0;
    double acf = 0, pacf = 0, q_stat = 0, p_value = 1;
    std::string acf_stars, pacf_stars;
};

/// Stars for |r| beyond the 10%, 5% and 1% two-sided normal bands of width z/sqrt(T).
std::string significance_stars(double r, std::size_t nobs);

/// Sample autocorrelations r_1..r_max (1/T divisor, about the mean).
std::vector<double> autocorrelations(std::span<const double> x, int max_lag);
/// Durbin-Levinson partial autocorrelations from r_1..r_m.
std::vector<double> durbin_levinson(std::span<const double> acf);

std::vector<CorrelogramRow> acf(const TimeSeries& series, int max_lag);
std::vector<double> pacf(const TimeSeries& series, int max_lag);

TestResult ljung_box(std::span<const double> residuals, int lag, int fitted_params);
inline TestResult ljung_box(const TimeSeries& r, int lag, int fitted_params) {
    return ljung_box(r.values(), lag, fitted_params);
}

TestResult arch_lm(std::span<const double> residuals, int lag_order);
inline TestResult arch_lm(const TimeSeries& r, int q) { return arch_lm(r.values(), q); }

/// Columns are series. One column gives the univariate chi2(2) form.
TestResult doornik_hansen(const Eigen::MatrixXd& residuals);
TestResult doornik_hansen(const std::vector<TimeSeries>& residuals);

TestResult breusch_pagan_diagonal(const Eigen::MatrixXd& residuals);

struct FrequencyBin {
    double lower = 0, upper = 0, midpoint = 0;
    int count = 0;
    double percent = 0, cumulative_percent = 0;
};

std::vector<FrequencyBin> frequency_distribution(std::span<const double> x, int bins);
inline std::vector<FrequencyBin> frequency_distribution(const TimeSeries& s, int bins) {
    return frequency_distribution(s.values(), bins);
}

} // namespace tsecon
