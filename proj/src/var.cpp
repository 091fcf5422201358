#include "tsecon/var.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <numeric>

#include "tsecon/errors.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

namespace {

const double log2pi = std::log(2.0 * std::numbers::pi);

Eigen::MatrixXd to_matrix(const std::vector<TimeSeries>& s) {
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(s.front().size()), static_cast<Eigen::Index>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t t = 0; t < s[j].size(); ++t) Y(t, j) = s[j][t];
    return Y;
}

/// Regressor matrix for rows first..T-1 of Y: [1, y_{t-1}', ..., y_{t-p}'].
Eigen::MatrixXd var_regressors(const Eigen::MatrixXd& Y, int p, Eigen::Index first, bool include_const) {
    const auto n = Y.cols();
    const auto rows = Y.rows() - first;
    const Eigen::Index c = include_const ? 1 : 0;
    Eigen::MatrixXd X(rows, c + n * p);
    for (Eigen::Index r = 0; r < rows; ++r) {
        Eigen::Index t = first + r;
        if (include_const) X(r, 0) = 1.0;
        for (int l = 1; l <= p; ++l) X.block(r, c + (l - 1) * n, 1, n) = Y.row(t - l);
    }
    return X;
}

double gaussian_loglik(const Eigen::MatrixXd& sigma_ml, Eigen::Index T) {
    const double n = static_cast<double>(sigma_ml.rows());
    double logdet = std::log(sigma_ml.determinant());
    return -0.5 * static_cast<double>(T) * n * (1.0 + log2pi) - 0.5 * static_cast<double>(T) * logdet;
}

VarFit fit_var_rows(const std::vector<TimeSeries>& aligned, int p, Eigen::Index first, bool include_const) {
    Eigen::MatrixXd Y = to_matrix(aligned);
    const auto n = Y.cols();
    const Eigen::Index T = Y.rows() - first;
    const int k = (include_const ? 1 : 0) + static_cast<int>(n) * p;
    if (T <= k) throw DomainError(fmt::format("VAR({}) needs more than {} observations, have {}", p, k, T));
    Eigen::MatrixXd X = var_regressors(Y, p, first, include_const);

    std::vector<std::string> names;
    if (include_const) names.emplace_back("const");
    for (int l = 1; l <= p; ++l)
        for (const auto& s : aligned) names.push_back(fmt::format("{}_{}", s.name(), l));

    VarFit fit;
    fit.lag_order = p;
    fit.include_const = include_const;
    for (const auto& s : aligned) fit.variable_names.push_back(s.name());
    fit.sample = {aligned.front().period_at(static_cast<std::size_t>(first)), aligned.front().end()};
    fit.nobs = static_cast<int>(T);
    fit.k = k;
    fit.residuals.resize(T, n);
    fit.constant = Eigen::VectorXd::Zero(n);
    fit.A.assign(static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(n, n));
    for (Eigen::Index i = 0; i < n; ++i) {
        OlsResult eq = ols(X, Y.col(i).tail(T), include_const, names);
        fit.residuals.col(i) = eq.resid;
        if (include_const) fit.constant[i] = eq.coef[0];
        for (int l = 0; l < p; ++l)
            fit.A[l].row(i) = eq.coef.segment((include_const ? 1 : 0) + l * n, n).transpose();
        fit.equations.push_back(std::move(eq));
    }
    Eigen::MatrixXd cp = fit.residuals.transpose() * fit.residuals;
    fit.sigma_ml = cp / static_cast<double>(T);
    fit.sigma_ols = cp / static_cast<double>(T - k);
    fit.loglik = gaussian_loglik(fit.sigma_ml, T);
    const double ktot = static_cast<double>(n * k);
    const double Td = static_cast<double>(T);
    fit.aic = (-2.0 * fit.loglik + 2.0 * ktot) / Td;
    fit.bic = (-2.0 * fit.loglik + ktot * std::log(Td)) / Td;
    fit.hqc = (-2.0 * fit.loglik + 2.0 * ktot * std::log(std::log(Td))) / Td;
    fit.history.resize(p, n);
    for (int l = 0; l < p; ++l) fit.history.row(l) = Y.row(Y.rows() - 1 - l);
    return fit;
}

/// psi matrices Psi_0..Psi_{h-1} of the VAR moving-average representation.
std::vector<Eigen::MatrixXd> ma_matrices(const VarFit& fit, int h) {
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    std::vector<Eigen::MatrixXd> psi;
    psi.push_back(Eigen::MatrixXd::Identity(n, n));
    for (int s = 1; s < h; ++s) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i <= std::min(s, fit.lag_order); ++i) m += fit.A[i - 1] * psi[s - i];
        psi.push_back(m);
    }
    return psi;
}

/// Cholesky impact matrix; column j is the shock ordered j-th.
Eigen::MatrixXd impact_matrix(const VarFit& fit, const std::vector<int>& ordering) {
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    std::vector<int> ord = ordering;
    if (ord.empty()) {
        ord.resize(static_cast<std::size_t>(n));
        std::iota(ord.begin(), ord.end(), 0);
    }
    if (static_cast<Eigen::Index>(ord.size()) != n) throw DomainError("ordering must list every variable once");
    std::vector<int> check = ord;
    std::sort(check.begin(), check.end());
    for (Eigen::Index i = 0; i < n; ++i)
        if (check[i] != i) throw DomainError("ordering is not a permutation");
    Eigen::MatrixXd Sp(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) Sp(i, j) = fit.sigma_ml(ord[i], ord[j]);
    Eigen::LLT<Eigen::MatrixXd> llt(Sp);
    if (llt.info() != Eigen::Success) throw NumericalError("residual covariance is not positive definite");
    Eigen::MatrixXd Lp = llt.matrixL();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) P(ord[i], j) = Lp(i, j);
    return P;
}

std::vector<int> resolve_ordering(const VarFit& fit, const std::vector<int>& ordering) {
    if (!ordering.empty()) return ordering;
    std::vector<int> ord(fit.variable_names.size());
    std::iota(ord.begin(), ord.end(), 0);
    return ord;
}

} // namespace

LagSelection select_lag_order(const std::vector<TimeSeries>& data, int max_lag, bool include_const) {
    if (max_lag < 1) throw DomainError("maximum lag must be >= 1");
    auto aligned = align(data);
    const auto n = static_cast<double>(aligned.size());
    LagSelection sel;
    double prev_ll = std::numeric_limits<double>::quiet_NaN();
    double best[3] = {INFINITY, INFINITY, INFINITY};
    for (int p = 1; p <= max_lag; ++p) {
        VarFit f = fit_var_rows(aligned, p, max_lag, include_const);
        LagSelectionRow row;
        row.lag = p;
        row.loglik = f.loglik;
        row.lr_p_value = p == 1 ? std::numeric_limits<double>::quiet_NaN()
                                : stats::chi2_sf(2.0 * (f.loglik - prev_ll), n * n);
        row.aic = f.aic;
        row.bic = f.bic;
        row.hqc = f.hqc;
        prev_ll = f.loglik;
        sel.nobs = f.nobs;
        if (row.aic < best[0]) best[0] = row.aic, sel.best_aic = p;
        if (row.bic < best[1]) best[1] = row.bic, sel.best_bic = p;
        if (row.hqc < best[2]) best[2] = row.hqc, sel.best_hqc = p;
        sel.rows.push_back(row);
    }
    return sel;
}

VarFit fit_var(const std::vector<TimeSeries>& data, int p, bool include_const) {
    if (data.empty()) throw DomainError("VAR needs at least one series");
    if (p < 1) throw DomainError("VAR lag order must be >= 1");
    auto aligned = align(data);
    return fit_var_rows(aligned, p, p, include_const);
}

std::vector<TestResult> granger_f_tests(const VarFit& fit) {
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    const int p = fit.lag_order;
    const int c = fit.include_const ? 1 : 0;
    std::vector<TestResult> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const OlsResult& eq = fit.equations[i];
        for (Eigen::Index j = 0; j < n; ++j) {
            // Wald form b' V^-1 b / q; equal to the restricted-SSR form under OLS.
            std::vector<Eigen::Index> idx;
            for (int l = 0; l < p; ++l) idx.push_back(c + l * n + j);
            Eigen::VectorXd b(p);
            Eigen::MatrixXd V(p, p);
            for (int a = 0; a < p; ++a) {
                b[a] = eq.coef[idx[a]];
                for (int bb = 0; bb < p; ++bb) V(a, bb) = eq.cov(idx[a], idx[bb]);
            }
            double F = b.dot(V.ldlt().solve(b)) / p;
            TestResult r;
            r.name = fmt::format("All lags of {} in equation {}", fit.variable_names[j], fit.variable_names[i]);
            r.distribution = "F";
            r.statistic = F;
            r.df = {static_cast<double>(p), static_cast<double>(fit.nobs - fit.k)};
            r.p_value = stats::f_sf(F, r.df[0], r.df[1]);
            r.null_hypothesis = fmt::format("lags of {} have zero coefficients", fit.variable_names[j]);
            out.push_back(r);
        }
    }
    return out;
}

std::vector<std::complex<double>> stability_roots(const VarFit& fit) {
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    const int p = fit.lag_order;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n * p, n * p);
    for (int l = 0; l < p; ++l) C.block(0, l * n, n, n) = fit.A[l];
    if (p > 1) C.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
    Eigen::VectorXcd ev = C.eigenvalues();
    std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    return out;
}

bool is_stable(const VarFit& fit) {
    for (auto z : stability_roots(fit))
        if (std::abs(z) >= 1.0) return false;
    return true;
}

std::vector<IrfTable> impulse_response(const VarFit& fit, int horizon, const std::vector<int>& ordering) {
    if (horizon < 1) throw DomainError("IRF horizon must be >= 1");
    auto ord = resolve_ordering(fit, ordering);
    Eigen::MatrixXd P = impact_matrix(fit, ord);
    auto psi = ma_matrices(fit, horizon);
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    std::vector<IrfTable> out;
    for (Eigen::Index s = 0; s < n; ++s) {
        for (Eigen::Index r = 0; r < n; ++r) {
            IrfTable t;
            t.shock_variable = fit.variable_names[ord[s]];
            t.response_variable = fit.variable_names[r];
            for (int h = 0; h < horizon; ++h) t.values.push_back((psi[h] * P)(r, s));
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<FevdTable> fevd(const VarFit& fit, int horizon, const std::vector<int>& ordering) {
    if (horizon < 1) throw DomainError("FEVD horizon must be >= 1");
    auto ord = resolve_ordering(fit, ordering);
    Eigen::MatrixXd P = impact_matrix(fit, ord);
    auto psi = ma_matrices(fit, horizon);
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    std::vector<FevdTable> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        FevdTable tab;
        tab.variable = fit.variable_names[i];
        for (int s : ord) tab.shocks.push_back(fit.variable_names[s]);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
        for (int h = 0; h < horizon; ++h) {
            Eigen::RowVectorXd th = (psi[h] * P).row(i);
            acc += th.array().square().matrix().transpose();
            double mse = acc.sum();
            FevdRow row;
            row.period = h + 1;
            row.std_error = std::sqrt(mse);
            for (Eigen::Index s = 0; s < n; ++s) row.shares.push_back(mse > 0 ? 100.0 * acc[s] / mse : 0.0);
            tab.rows.push_back(std::move(row));
        }
        out.push_back(std::move(tab));
    }
    return out;
}

std::vector<VarForecastTable> forecast_var(const VarFit& fit, int horizon, double confidence) {
    if (horizon < 1) throw DomainError("forecast horizon must be >= 1");
    if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must lie in (0,1)");
    const auto n = static_cast<Eigen::Index>(fit.variable_names.size());
    const int p = fit.lag_order;
    std::vector<Eigen::VectorXd> hist; // most recent last
    for (int l = p - 1; l >= 0; --l) hist.push_back(fit.history.row(l).transpose());
    auto psi = ma_matrices(fit, horizon);
    double tq = stats::t_quantile(0.5 + confidence / 2.0, fit.nobs - fit.k);

    std::vector<VarForecastTable> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[i].variable = fit.variable_names[i];
    Eigen::MatrixXd mse = Eigen::MatrixXd::Zero(n, n);
    for (int h = 0; h < horizon; ++h) {
        Eigen::VectorXd yh = fit.constant;
        for (int l = 1; l <= p; ++l) yh += fit.A[l - 1] * hist[hist.size() - l];
        hist.push_back(yh);
        mse += psi[h] * fit.sigma_ml * psi[h].transpose();
        for (Eigen::Index i = 0; i < n; ++i) {
            ForecastRow row;
            row.period = fit.sample.to + (h + 1);
            row.point = yh[i];
            row.std_error = std::sqrt(mse(i, i));
            row.lower = row.point - tq * row.std_error;
            row.upper = row.point + tq * row.std_error;
            out[i].rows.push_back(row);
        }
    }
    return out;
}

TestResult portmanteau(const VarFit& fit, int lags) {
    if (lags <= fit.lag_order) throw DomainError("portmanteau lags must exceed the VAR order");
    const auto& E = fit.residuals;
    const auto T = E.rows();
    if (lags >= T) throw DomainError("portmanteau lags exceed the sample");
    const auto n = E.cols();
    Eigen::MatrixXd C0 = E.transpose() * E / static_cast<double>(T);
    Eigen::MatrixXd C0inv = C0.inverse();
    double q = 0.0;
    for (int j = 1; j <= lags; ++j) {
        Eigen::MatrixXd Cj = E.bottomRows(T - j).transpose() * E.topRows(T - j) / static_cast<double>(T);
        q += (Cj.transpose() * C0inv * Cj * C0inv).trace() / static_cast<double>(T - j);
    }
    TestResult r;
    r.name = fmt::format("Portmanteau LB({})", lags);
    r.distribution = "chi2";
    r.statistic = static_cast<double>(T) * (static_cast<double>(T) + 2.0) * q;
    r.df = {static_cast<double>(n * n * (lags - fit.lag_order))};
    r.p_value = stats::chi2_sf(r.statistic, r.df[0]);
    r.null_hypothesis = "no residual autocorrelation up to the given lag";
    return r;
}

VarmaSystem fit_varma_two_step(const std::vector<TimeSeries>& data, const std::vector<ArimaFit>& sources,
                               int ma_lags) {
    if (data.size() != 2 || sources.size() != 2) throw DomainError("two-step VARMA takes two series and two fits");
    if (ma_lags < 1 || ma_lags > 2) throw DomainError("MA lags must be 1 or 2");
    std::vector<TimeSeries> all{data[0], data[1], sources[0].residuals, sources[1].residuals};
    Period from = all[0].start();
    Period to = all[0].end();
    for (const auto& s : all) {
        from = std::max(from, s.start());
        to = std::min(to, s.end());
    }
    if (to < from) throw DomainError("residual series are not aligned with the data");
    for (auto& s : all) s = slice(s, {from, to});
    const int lead = std::max(1, ma_lags);
    const int T = static_cast<int>(all[0].size()) - lead;
    const int k = 3 + 2 * ma_lags;
    if (T <= k) throw DomainError("two-step VARMA sample too short");

    std::vector<std::string> names{"const", all[0].name() + "_1", all[1].name() + "_1"};
    for (int l = 1; l <= ma_lags; ++l) {
        names.push_back(fmt::format("a_{}", l));
        names.push_back(fmt::format("b_{}", l));
    }
    Eigen::MatrixXd X(T, k);
    for (int r = 0; r < T; ++r) {
        std::size_t t = static_cast<std::size_t>(r + lead);
        X(r, 0) = 1.0;
        X(r, 1) = all[0][t - 1];
        X(r, 2) = all[1][t - 1];
        for (int l = 1; l <= ma_lags; ++l) {
            X(r, 1 + 2 * l) = all[2][t - l];
            X(r, 2 + 2 * l) = all[3][t - l];
        }
    }
    VarmaSystem sys;
    sys.ma_lags = ma_lags;
    sys.sample = {all[0].period_at(static_cast<std::size_t>(lead)), to};
    sys.nobs = T;
    Eigen::MatrixXd E(T, 2);
    for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd y(T);
        for (int r = 0; r < T; ++r) y[r] = all[i][static_cast<std::size_t>(r + lead)];
        sys.equation_names.push_back(all[i].name());
        sys.equations.push_back(ols(X, y, true, names));
        E.col(i) = sys.equations.back().resid;
    }
    sys.sigma = E.transpose() * E / static_cast<double>(T);
    Eigen::VectorXd sd = sys.sigma.diagonal().cwiseSqrt();
    sys.correlation = sd.cwiseInverse().asDiagonal() * sys.sigma * sd.cwiseInverse().asDiagonal();
    sys.log_determinant = std::log(sys.sigma.determinant());
    sys.breusch_pagan = breusch_pagan_diagonal(E);
    return sys;
}

} // namespace tsecon
