#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "tsecon/arima.hpp"
#include "tsecon/diagnostics.hpp"
#include "tsecon/ols.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

struct VarFit {
    int lag_order = 0;
    bool include_const = true;
    std::vector<std::string> variable_names;
    SampleRange sample;
    int nobs = 0;
    int k = 0; ///< regressors per equation
    std::vector<OlsResult> equations;
    Eigen::MatrixXd residuals; ///< T x n
    Eigen::MatrixXd sigma_ml;  ///< residual cross-product / T
    Eigen::MatrixXd sigma_ols; ///< residual cross-product / (T - k)
    Eigen::VectorXd constant;
    std::vector<Eigen::MatrixXd> A; ///< A[i] multiplies y_{t-i-1}
    double loglik = 0;
    double aic = 0, bic = 0, hqc = 0; ///< per observation
    Eigen::MatrixXd history;          ///< last p observations, most recent first (p x n)
};

struct LagSelectionRow {
    int lag = 0;
    double loglik = 0;
    double lr_p_value = 0; ///< NaN for the first row
    double aic = 0, bic = 0, hqc = 0;
};

struct LagSelection {
    std::vector<LagSelectionRow> rows;
    int best_aic = 0, best_bic = 0, best_hqc = 0; ///< lag orders
    int nobs = 0;
};

/// Orders 1..max_lag on the common sample that max_lag leaves.
LagSelection select_lag_order(const std::vector<TimeSeries>& data, int max_lag, bool include_const = true);

/// Equation-by-equation OLS on the aligned span of `data`.
VarFit fit_var(const std::vector<TimeSeries>& data, int p, bool include_const = true);

/// F-test that all lags of each variable are zero, per equation.
std::vector<TestResult> granger_f_tests(const VarFit& fit);

std::vector<std::complex<double>> stability_roots(const VarFit& fit);
bool is_stable(const VarFit& fit);

struct IrfTable {
    std::string shock_variable, response_variable;
    std::vector<double> values; ///< values[0] is period 1 (impact)
};

/// Ordering lists variable indices, first is most exogenous. Empty = as fitted.
std::vector<IrfTable> impulse_response(const VarFit& fit, int horizon, const std::vector<int>& ordering = {});

struct FevdRow {
    int period = 0;
    double std_error = 0;
    std::vector<double> shares; ///< percent, per shock in ordering order
};

struct FevdTable {
    std::string variable;
    std::vector<std::string> shocks;
    std::vector<FevdRow> rows;
};

std::vector<FevdTable> fevd(const VarFit& fit, int horizon, const std::vector<int>& ordering = {});

struct VarForecastTable {
    std::string variable;
    std::vector<ForecastRow> rows;
};

std::vector<VarForecastTable> forecast_var(const VarFit& fit, int horizon, double confidence = 0.95);

/// Multivariate Ljung-Box on the residual autocovariances.
TestResult portmanteau(const VarFit& fit, int lags);

struct VarmaSystem {
    int ma_lags = 1;
    SampleRange sample;
    int nobs = 0;
    std::vector<std::string> equation_names;
    std::vector<OlsResult> equations;
    Eigen::MatrixXd sigma;       ///< residual cross-product / T
    Eigen::MatrixXd correlation;
    double log_determinant = 0;
    TestResult breusch_pagan;
};

/// Each differenced series regressed on a constant, one lag of both series
/// and `ma_lags` lags of both univariate ARIMA residual series.
VarmaSystem fit_varma_two_step(const std::vector<TimeSeries>& data, const std::vector<ArimaFit>& residual_sources,
                               int ma_lags);

} // namespace tsecon
