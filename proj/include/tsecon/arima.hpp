#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tsecon/coefficient.hpp"
#include "tsecon/kalman.hpp"
#include "tsecon/optimize.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    bool include_const = true;
    /// Regressors entering the (differenced) equation contemporaneously.
    std::vector<TimeSeries> exog;
};

struct PolyRoot {
    double real = 0, imag = 0, modulus = 0, frequency = 0;
};

struct ArimaFit {
    ArimaSpec spec;
    std::string dependent;      ///< name of the undifferenced series
    SampleRange sample;         ///< estimation sample (differenced scale)
    int nobs = 0;
    int k = 0;                  ///< estimated coefficients plus the innovation variance
    std::vector<Coefficient> coefficients;
    Eigen::MatrixXd covariance; ///< of the reported coefficients
    double loglik = 0, aic = 0, bic = 0, hqc = 0;
    double mean_innovations = 0, sd_innovations = 0;
    TimeSeries residuals, fitted; ///< differenced scale
    TimeSeries levels;            ///< original series, through the sample end
    std::vector<PolyRoot> ar_roots, ma_roots;

    // Natural parameters, for forecasting.
    double mu = 0;
    std::vector<double> phi, theta, beta;
    Eigen::VectorXd final_state;

    int iterations = 0, n_function_evals = 0, n_gradient_evals = 0;
    double gradient_norm = 0;

    [[nodiscard]] const Coefficient& coefficient(const std::string& name) const;
};

ArimaFit fit_arima(const TimeSeries& series, const ArimaSpec& spec, const SampleRange& range);
/// Same estimator; requires a non-empty exog list.
ArimaFit fit_armax(const TimeSeries& series, const ArimaSpec& spec, const SampleRange& range);

/// Roots of 1 - phi_1 z - ... and 1 + theta_1 z + ..., sorted by frequency.
std::pair<std::vector<PolyRoot>, std::vector<PolyRoot>> lag_polynomial_roots(const ArimaFit& fit);
std::vector<PolyRoot> ar_polynomial_roots(const std::vector<double>& phi);
std::vector<PolyRoot> ma_polynomial_roots(const std::vector<double>& theta);

/// psi-weights psi_0..psi_{h-1} of the integrated process.
std::vector<double> integrated_psi_weights(const std::vector<double>& phi, const std::vector<double>& theta, int d,
                                           int h);

struct ForecastRow {
    Period period;
    double point = 0, std_error = 0, lower = 0, upper = 0;
};

/// Level-scale forecasts. `future_exog` supplies regressor values for each
/// horizon step and is required when the model has exogenous terms.
std::vector<ForecastRow> forecast_arima(const ArimaFit& fit, int horizon, double confidence = 0.95,
                                        const std::vector<TimeSeries>& future_exog = {});

struct ResidualRow {
    Period period;
    double actual = 0, fitted = 0, residual = 0;
    bool flagged = false;
};

std::vector<ResidualRow> residual_report(const ArimaFit& fit, double threshold_sd = 2.5);

/// Exact Gaussian ARMA log-likelihood of a zero-mean series, via the Kalman
/// filter with stationary initialization. NaN when non-stationary.
double arma_exact_loglik(std::span<const double> u, const std::vector<double>& phi, const std::vector<double>& theta,
                         double sigma);

/// Raw state-space ARMA(p,q) without a constant: (phi, theta, sigma) are
/// maximized directly from (0, ..., 0, sigma_start), with no invertibility
/// reflection. Hessian standard errors.
struct StateSpaceArmaFit {
    std::string dependent;
    SampleRange sample;
    int nobs = 0;
    std::vector<std::string> names; ///< phi_1.., theta_1.., sigma
    OptimResult optim;
    double aic = 0, bic = 0, hqc = 0;
    StateSpaceModel model; ///< at the estimate
};

StateSpaceArmaFit fit_state_space_arma(const TimeSeries& series, int p, int q, const SampleRange& range,
                                       double sigma_start = 1.0);

} // namespace tsecon
