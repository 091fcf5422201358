#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tsecon {

/// Ordinary least squares with the usual classical inference.
struct OlsResult {
    std::vector<std::string> names;
    Eigen::VectorXd coef, se, t, p;
    Eigen::MatrixXd cov;
    Eigen::VectorXd resid, fitted;
    int nobs = 0;
    int k = 0;
    bool has_const = false;
    double ssr = 0, s2 = 0, se_regression = 0;
    double r2 = 0, adj_r2 = 0;
    double f_stat = 0, f_p = 1;
    double dw = 0, rho = 0;
    double mean_y = 0, sd_y = 0;
    double loglik = 0, aic = 0, bic = 0, hqc = 0;

    [[nodiscard]] int df_resid() const noexcept { return nobs - k; }
};

/// y on X. `has_const` marks column 0 as an intercept for R² and the overall F.
/// Throws NumericalError when X is rank deficient.
OlsResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool has_const,
              std::vector<std::string> names = {});

/// Residual sum of squares only (for restricted models).
double ols_ssr(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

} // namespace tsecon
