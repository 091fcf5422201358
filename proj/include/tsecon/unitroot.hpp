#pragma once

#include <optional>
#include <string>

#include "tsecon/diagnostics.hpp"
#include "tsecon/ols.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

enum class Deterministic { none, constant, constant_trend };
enum class AdfLagRule { fixed, modified_aic };

std::string to_string(Deterministic d);

struct AdfResult {
    std::string variable;
    int lags_used = 0;
    int max_lag = 0;
    int nobs = 0;
    double coefficient_minus_one = 0; ///< estimated (a - 1)
    double tau_statistic = 0;
    double p_value = 1;
    Deterministic deterministic = Deterministic::constant;
    int n_variables = 1;
    double first_order_resid_autocorr = 0;
    std::optional<TestResult> lagged_diff_F;
    OlsResult regression;
};

/// Dickey-Fuller regression of dy_t on deterministic terms, y_{t-1} and k
/// lagged differences. With modified_aic, k is chosen over 1..max_lag (0
/// when max_lag is 0) and every candidate, including the final regression,
/// uses the common sample that max_lag leaves.
AdfResult adf_test(const TimeSeries& series, int max_lag, Deterministic deterministic, AdfLagRule selection,
                   int n_variables = 1);

/// MacKinnon (1994) response-surface p-value for the tau statistic,
/// clamped to [1e-6, 1 - 1e-6]. n_variables in 1..6.
double mackinnon_pvalue(double tau, Deterministic deterministic, int n_variables = 1);

enum class Conclusion { cointegrated, not_cointegrated };

struct CointegrationReport {
    AdfResult step1, step2;
    OlsResult step3;
    AdfResult step4;
    Conclusion conclusion = Conclusion::not_cointegrated;
    double level = 0.05;
};

CointegrationReport engle_granger(const TimeSeries& y, const TimeSeries& x, int max_lag, double level = 0.05);

} // namespace tsecon
