#include "tsecon/ols.hpp"

#include <cmath>
#include <numbers>

#include "tsecon/errors.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

namespace {

Eigen::ColPivHouseholderQR<Eigen::MatrixXd> checked_qr(const Eigen::MatrixXd& X) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-12);
    if (qr.rank() < X.cols()) throw NumericalError("regressor matrix is rank deficient");
    return qr;
}

} // namespace

OlsResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool has_const, std::vector<std::string> names) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (y.size() != n) throw DomainError("ols: X and y row counts differ");
    if (n <= k) throw DomainError("ols: not enough observations");
    if (!X.allFinite() || !y.allFinite()) throw NumericalError("ols: non-finite data");

    auto qr = checked_qr(X);
    OlsResult r;
    r.names = std::move(names);
    r.nobs = n;
    r.k = k;
    r.has_const = has_const;
    r.coef = qr.solve(y);
    r.fitted = X * r.coef;
    r.resid = y - r.fitted;
    r.ssr = r.resid.squaredNorm();
    r.s2 = r.ssr / (n - k);
    r.se_regression = std::sqrt(r.s2);

    // (X'X)^-1 = P R^-1 R^-T P'
    Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    Eigen::MatrixXd Rinv = R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd xtx_inv_perm = Rinv * Rinv.transpose();
    Eigen::MatrixXd P = qr.colsPermutation();
    Eigen::MatrixXd xtx_inv = P * xtx_inv_perm * P.transpose();
    r.cov = r.s2 * xtx_inv;
    r.se = r.cov.diagonal().cwiseSqrt();
    r.t = r.coef.cwiseQuotient(r.se);
    r.p.resize(k);
    for (int i = 0; i < k; ++i) r.p[i] = stats::t_two_sided(r.t[i], n - k);

    r.mean_y = y.mean();
    double tss_centered = (y.array() - r.mean_y).square().sum();
    r.sd_y = std::sqrt(tss_centered / (n - 1));
    double tss = has_const ? tss_centered : y.squaredNorm();
    r.r2 = tss > 0 ? 1.0 - r.ssr / tss : 0.0;
    int df_model = has_const ? k - 1 : k;
    r.adj_r2 = 1.0 - (1.0 - r.r2) * (has_const ? (n - 1.0) : static_cast<double>(n)) / (n - k);
    if (df_model > 0 && r.ssr > 0) {
        r.f_stat = ((tss - r.ssr) / df_model) / r.s2;
        r.f_p = stats::f_sf(r.f_stat, df_model, n - k);
    }
    double num = 0.0;
    double rho_num = 0.0;
    for (int t = 1; t < n; ++t) {
        double d = r.resid[t] - r.resid[t - 1];
        num += d * d;
        rho_num += r.resid[t] * r.resid[t - 1];
    }
    r.dw = r.ssr > 0 ? num / r.ssr : 0.0;
    r.rho = r.ssr > 0 ? rho_num / r.ssr : 0.0;
    r.loglik = -0.5 * n * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(r.ssr / n));
    r.aic = -2.0 * r.loglik + 2.0 * k;
    r.bic = -2.0 * r.loglik + k * std::log(static_cast<double>(n));
    r.hqc = -2.0 * r.loglik + 2.0 * k * std::log(std::log(static_cast<double>(n)));
    return r;
}

double ols_ssr(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.cols() == 0) return y.squaredNorm();
    auto qr = checked_qr(X);
    return (y - X * qr.solve(y)).squaredNorm();
}

} // namespace tsecon
