#include "tsecon/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "tsecon/errors.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

std::string significance_stars(double r, std::size_t nobs) {
    double a = std::fabs(r) * std::sqrt(static_cast<double>(nobs));
    if (a > 2.5758293035489) return "***";
    if (a > 1.9599639845401) return "**";
    if (a > 1.6448536269515) return "*";
    return "";
}

std::vector<double> autocorrelations(std::span<const double> x, int max_lag) {
    const auto n = x.size();
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= n)
        throw DomainError(fmt::format("max lag {} must be in 1..{}", max_lag, n - 1));
    double m = stats::mean(x);
    double c0 = 0.0;
    for (double v : x) c0 += (v - m) * (v - m);
    std::vector<double> r(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) ck += (x[t] - m) * (x[t - k] - m);
        r[k - 1] = c0 > 0 ? ck / c0 : 0.0;
    }
    return r;
}

std::vector<double> durbin_levinson(std::span<const double> r) {
    const std::size_t m = r.size();
    std::vector<double> pacf(m);
    std::vector<double> phi, prev;
    double v = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        double num = r[k];
        for (std::size_t j = 0; j < k; ++j) num -= prev[j] * r[k - 1 - j];
        double a = v > 0 ? num / v : 0.0;
        phi.assign(k + 1, 0.0);
        for (std::size_t j = 0; j < k; ++j) phi[j] = prev[j] - a * prev[k - 1 - j];
        phi[k] = a;
        v *= (1.0 - a * a);
        pacf[k] = a;
        prev = phi;
    }
    return pacf;
}

namespace {

double q_statistic(std::span<const double> r, std::size_t n, int upto) {
    double q = 0.0;
    double T = static_cast<double>(n);
    for (int j = 1; j <= upto; ++j) q += r[j - 1] * r[j - 1] / (T - j);
    return T * (T + 2.0) * q;
}

} // namespace

std::vector<CorrelogramRow> acf(const TimeSeries& series, int max_lag) {
    if (series.size() < 4) throw DomainError("correlogram needs at least 4 observations");
    auto r = autocorrelations(series.values(), max_lag);
    auto p = durbin_levinson(r);
    std::vector<CorrelogramRow> rows;
    for (int k = 1; k <= max_lag; ++k) {
        CorrelogramRow row;
        row.lag = k;
        row.acf = r[k - 1];
        row.pacf = p[k - 1];
        row.q_stat = q_statistic(r, series.size(), k);
        row.p_value = stats::chi2_sf(row.q_stat, k);
        row.acf_stars = significance_stars(row.acf, series.size());
        row.pacf_stars = significance_stars(row.pacf, series.size());
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> pacf(const TimeSeries& series, int max_lag) {
    if (series.size() < 4) throw DomainError("correlogram needs at least 4 observations");
    return durbin_levinson(autocorrelations(series.values(), max_lag));
}

TestResult ljung_box(std::span<const double> e, int lag, int fitted_params) {
    if (lag <= fitted_params)
        throw DomainError(fmt::format("Ljung-Box lag {} must exceed the {} fitted parameters", lag, fitted_params));
    if (static_cast<std::size_t>(lag) >= e.size()) throw DomainError("Ljung-Box lag exceeds sample");
    TestResult res;
    res.name = "Ljung-Box Q'";
    res.distribution = "chi2";
    res.null_hypothesis = "no autocorrelation";
    res.df = {static_cast<double>(lag - fitted_params)};
    res.statistic = q_statistic(autocorrelations(e, lag), e.size(), lag);
    res.p_value = stats::chi2_sf(res.statistic, res.df[0]);
    return res;
}

TestResult arch_lm(std::span<const double> e, int q) {
    if (q < 1) throw DomainError("ARCH order must be >= 1");
    const int n = static_cast<int>(e.size());
    if (n <= 2 * q) throw DomainError("ARCH-LM: sample too short for the order");
    const int rows = n - q;
    Eigen::MatrixXd X(rows, q + 1);
    Eigen::VectorXd y(rows);
    for (int t = q; t < n; ++t) {
        y[t - q] = e[t] * e[t];
        X(t - q, 0) = 1.0;
        for (int j = 1; j <= q; ++j) X(t - q, j) = e[t - j] * e[t - j];
    }
    std::vector<std::string> names{"alpha(0)"};
    for (int j = 1; j <= q; ++j) names.push_back(fmt::format("alpha({})", j));
    TestResult res;
    res.auxiliary = ols(X, y, true, names);
    res.name = fmt::format("ARCH-LM({})", q);
    res.distribution = "chi2";
    res.null_hypothesis = "no ARCH effect is present";
    res.df = {static_cast<double>(q)};
    res.statistic = rows * res.auxiliary->r2;
    res.p_value = stats::chi2_sf(res.statistic, q);
    return res;
}

namespace {

// Small-sample transforms of skewness and kurtosis (population moments).
std::pair<double, double> dh_z(const Eigen::VectorXd& x) {
    const double n = static_cast<double>(x.size());
    Eigen::ArrayXd d = x.array() - x.mean();
    double m2 = d.square().mean();
    double skew = d.cube().mean() / std::pow(m2, 1.5);
    double b2 = d.square().square().mean() / (m2 * m2);
    double n2 = n * n;
    double b1 = skew * skew;

    double beta = 3.0 * (n2 + 27 * n - 70) * (n + 1) * (n + 3) / ((n - 2) * (n + 5) * (n + 7) * (n + 9));
    double om2 = -1.0 + std::sqrt(2.0 * (beta - 1.0));
    double delta = 1.0 / std::sqrt(std::log(std::sqrt(om2)));
    double y = skew * std::sqrt(((om2 - 1.0) / 2.0) * ((n + 1) * (n + 3)) / (6.0 * (n - 2)));
    double z1 = delta * std::log(y + std::sqrt(y * y + 1.0));

    double dd = (n - 3) * (n + 1) * (n2 + 15 * n - 4);
    double a = (n - 2) * (n + 5) * (n + 7) * (n2 + 27 * n - 70) / (6.0 * dd);
    double c = (n - 7) * (n + 5) * (n + 7) * (n2 + 2 * n - 5) / (6.0 * dd);
    double k = (n + 5) * (n + 7) * (n * n2 + 37 * n2 + 11 * n - 313) / (12.0 * dd);
    double alpha = a + b1 * c;
    double chi = (b2 - 1.0 - b1) * 2.0 * k;
    double z2 = (std::cbrt(chi / (2.0 * alpha)) - 1.0 + 1.0 / (9.0 * alpha)) * std::sqrt(9.0 * alpha);
    return {z1, z2};
}

} // namespace

TestResult doornik_hansen(const Eigen::MatrixXd& E) {
    const auto T = E.rows();
    const auto n = E.cols();
    if (n < 1 || T < 8) throw DomainError("Doornik-Hansen needs at least 8 observations");
    Eigen::MatrixXd D = E.rowwise() - E.colwise().mean();
    Eigen::MatrixXd S = D.transpose() * D / static_cast<double>(T);
    for (Eigen::Index j = 0; j < n; ++j)
        if (!(S(j, j) > 0)) throw NumericalError("Doornik-Hansen: zero-variance series", j);
    Eigen::VectorXd vinv = S.diagonal().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd C = vinv.asDiagonal() * S * vinv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 1e-12)
        throw NumericalError("Doornik-Hansen: singular correlation matrix");
    Eigen::MatrixXd H = es.eigenvectors();
    Eigen::MatrixXd W = H * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * H.transpose() *
                        vinv.asDiagonal();
    Eigen::MatrixXd Y = D * W.transpose();

    TestResult res;
    res.name = "Doornik-Hansen";
    res.distribution = "chi2";
    res.null_hypothesis = "error is normally distributed";
    res.df = {2.0 * static_cast<double>(n)};
    double stat = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        auto [z1, z2] = dh_z(Y.col(j));
        stat += z1 * z1 + z2 * z2;
    }
    res.statistic = stat;
    res.p_value = stats::chi2_sf(stat, res.df[0]);
    return res;
}

TestResult doornik_hansen(const std::vector<TimeSeries>& series) {
    if (series.empty()) throw DomainError("Doornik-Hansen: no series");
    Eigen::MatrixXd E(static_cast<Eigen::Index>(series.front().size()), static_cast<Eigen::Index>(series.size()));
    for (std::size_t j = 0; j < series.size(); ++j) {
        if (series[j].size() != series.front().size()) throw DomainError("Doornik-Hansen: unequal lengths");
        for (std::size_t t = 0; t < series[j].size(); ++t) E(t, j) = series[j][t];
    }
    return doornik_hansen(E);
}

TestResult breusch_pagan_diagonal(const Eigen::MatrixXd& E) {
    const auto T = E.rows();
    const auto n = E.cols();
    if (n < 2 || T <= n) throw DomainError("Breusch-Pagan: need n >= 2 and T > n");
    Eigen::MatrixXd S = E.transpose() * E / static_cast<double>(T);
    double lm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(S(i, i) > 0)) throw NumericalError("Breusch-Pagan: zero-variance column", i);
        for (Eigen::Index j = 0; j < i; ++j) {
            double r = S(i, j) / std::sqrt(S(i, i) * S(j, j));
            lm += r * r;
        }
    }
    TestResult res;
    res.name = "Breusch-Pagan diagonal covariance";
    res.distribution = "chi2";
    res.null_hypothesis = "cross-equation covariance matrix is diagonal";
    res.df = {static_cast<double>(n * (n - 1) / 2)};
    res.statistic = static_cast<double>(T) * lm;
    res.p_value = stats::chi2_sf(res.statistic, res.df[0]);
    return res;
}

std::vector<FrequencyBin> frequency_distribution(std::span<const double> x, int bins) {
    if (bins < 2) throw DomainError("frequency distribution needs at least 2 bins");
    if (x.empty()) throw DomainError("frequency distribution of an empty series");
    auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (!(hi > lo)) throw DomainError("frequency distribution of a constant series");
    // Outer bins are centred on the extremes: width (max - min) / (bins - 1).
    double w = (hi - lo) / (bins - 1);
    std::vector<FrequencyBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[b].midpoint = lo + b * w;
        out[b].lower = lo + (b - 0.5) * w;
        out[b].upper = lo + (b + 0.5) * w;
    }
    for (double v : x) {
        int b = static_cast<int>(std::floor((v - lo) / w + 0.5));
        b = std::clamp(b, 0, bins - 1);
        if (b > 0 && v < out[b].lower) --b;
        if (b + 1 < bins && v >= out[b].upper) ++b;
        ++out[b].count;
    }
    double cum = 0.0;
    for (auto& bin : out) {
        bin.percent = 100.0 * bin.count / static_cast<double>(x.size());
        cum += bin.count;
        bin.cumulative_percent = 100.0 * cum / static_cast<double>(x.size());
    }
    return out;
}

} // namespace tsecon
