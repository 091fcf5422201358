#include "tsecon/arima.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <sstream>

#include "tsecon/diagnostics.hpp"
#include "tsecon/errors.hpp"
#include "tsecon/kalman.hpp"
#include "tsecon/ols.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

namespace {

const double log2pi = std::log(2.0 * std::numbers::pi);
const double nan = std::numeric_limits<double>::quiet_NaN();

/// Unit-variance innovations pass: prediction errors v_t and their
/// variances f_t (in units of sigma^2).
struct ArmaPass {
    Eigen::VectorXd v, f;
    Eigen::VectorXd final_state;
};

std::optional<ArmaPass> arma_pass(const Eigen::VectorXd& u, const std::vector<double>& phi,
                                  const std::vector<double>& theta) {
    StateSpaceModel m = arma_to_state_space(phi, theta, 1.0);
    try {
        m = diffuse_initialization(std::move(m));
        FilterOutput out = kalman_filter(m, u);
        ArmaPass pass;
        pass.v = out.prediction_errors.col(0);
        pass.f.resize(u.size());
        for (Eigen::Index t = 0; t < u.size(); ++t) pass.f[t] = out.prediction_error_variances[t](0, 0);
        pass.final_state = out.final_state;
        return pass;
    } catch (const Error&) {
        return std::nullopt;
    }
}

struct Layout {
    bool has_const = false;
    int p = 0, q = 0;
    std::vector<int> exog_cols; // identified exogenous columns
    int kx = 0;                 // total exogenous columns

    [[nodiscard]] int size() const { return (has_const ? 1 : 0) + p + q + static_cast<int>(exog_cols.size()); }

    struct Natural {
        double mu = 0;
        std::vector<double> phi, theta, beta;
    };

    [[nodiscard]] Natural unpack(const Eigen::VectorXd& x) const {
        Natural n;
        int i = 0;
        if (has_const) n.mu = x[i++];
        for (int j = 0; j < p; ++j) n.phi.push_back(x[i++]);
        for (int j = 0; j < q; ++j) n.theta.push_back(x[i++]);
        n.beta.assign(static_cast<std::size_t>(kx), 0.0);
        for (int c : exog_cols) n.beta[c] = x[i++];
        return n;
    }
};

Eigen::VectorXd demeaned(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const Layout::Natural& n) {
    Eigen::VectorXd u = y.array() - n.mu;
    for (int c = 0; c < static_cast<int>(n.beta.size()); ++c) u -= n.beta[c] * X.col(c);
    return u;
}

double concentrated_loglik(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const Layout& L,
                           const Eigen::VectorXd& x) {
    auto nat = L.unpack(x);
    auto pass = arma_pass(demeaned(y, X, nat), nat.phi, nat.theta);
    if (!pass || (pass->f.array() <= 0).any()) return nan;
    const double T = static_cast<double>(y.size());
    double s2 = (pass->v.array().square() / pass->f.array()).sum() / T;
    if (!(s2 > 0)) return nan;
    return -0.5 * T * (log2pi + 1.0 + std::log(s2)) - 0.5 * pass->f.array().log().sum();
}

double full_loglik(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const Layout& L, const Eigen::VectorXd& xs) {
    const auto n = xs.size() - 1;
    double sigma = xs[n];
    if (!(sigma > 0)) return nan;
    auto nat = L.unpack(xs.head(n));
    auto pass = arma_pass(demeaned(y, X, nat), nat.phi, nat.theta);
    if (!pass || (pass->f.array() <= 0).any()) return nan;
    Eigen::ArrayXd sf = sigma * sigma * pass->f.array();
    return -0.5 * (log2pi + sf.log() + pass->v.array().square() / sf).sum();
}

std::vector<double> yule_walker(const Eigen::VectorXd& u, int p) {
    if (p == 0) return {};
    std::vector<double> data(u.data(), u.data() + u.size());
    auto r = autocorrelations(data, std::min<int>(p, static_cast<int>(u.size()) - 1));
    Eigen::MatrixXd R(p, p);
    Eigen::VectorXd rhs(p);
    for (int i = 0; i < p; ++i) {
        rhs[i] = r[i];
        for (int j = 0; j < p; ++j) R(i, j) = i == j ? 1.0 : r[std::abs(i - j) - 1];
    }
    Eigen::VectorXd phi = R.ldlt().solve(rhs);
    return {phi.data(), phi.data() + p};
}

std::vector<std::complex<double>> poly_roots_from_companion(const std::vector<double>& first_row) {
    const auto m = static_cast<Eigen::Index>(first_row.size());
    std::vector<std::complex<double>> roots;
    if (m == 0) return roots;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) C(0, i) = first_row[i];
    for (Eigen::Index i = 1; i < m; ++i) C(i, i - 1) = 1.0;
    Eigen::VectorXcd lambda = C.eigenvalues();
    for (Eigen::Index i = 0; i < m; ++i)
        if (std::abs(lambda[i]) > 1e-14) roots.push_back(1.0 / lambda[i]);
    return roots;
}

std::vector<PolyRoot> to_poly_roots(const std::vector<std::complex<double>>& z) {
    std::vector<PolyRoot> out;
    for (auto c : z) {
        PolyRoot r;
        r.real = c.real();
        r.imag = std::fabs(c.imag()) < 1e-12 ? 0.0 : c.imag();
        r.modulus = std::abs(c);
        r.frequency = std::atan2(r.imag, r.real) / (2.0 * std::numbers::pi);
        if (r.frequency <= -0.5) r.frequency += 1.0;
        out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(), [](const PolyRoot& a, const PolyRoot& b) {
        return a.frequency < b.frequency || (a.frequency == b.frequency && a.modulus < b.modulus);
    });
    return out;
}

/// Reflect MA roots inside the unit circle; returns the new theta and the
/// factor by which sigma must be multiplied to keep the autocovariances.
std::pair<std::vector<double>, double> invert_ma(const std::vector<double>& theta) {
    std::vector<double> neg(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) neg[i] = -theta[i];
    auto roots = poly_roots_from_companion(neg);
    double scale = 1.0;
    bool changed = false;
    for (auto& z : roots) {
        if (std::abs(z) < 1.0) {
            scale /= std::abs(z);
            z = 1.0 / std::conj(z);
            changed = true;
        }
    }
    if (!changed) return {theta, 1.0};
    // prod (1 - z/z_i)
    std::vector<std::complex<double>> c{1.0};
    for (auto zi : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] -= c[k] / zi;
        }
        c = std::move(next);
    }
    std::vector<double> out(theta.size(), 0.0);
    for (std::size_t i = 0; i < out.size() && i + 1 < c.size(); ++i) out[i] = c[i + 1].real();
    return {out, scale};
}

bool ma_invertible(const std::vector<double>& theta) {
    for (const auto& r : ma_polynomial_roots(theta))
        if (r.modulus < 1.0) return false;
    return true;
}

} // namespace

double arma_exact_loglik(std::span<const double> u, const std::vector<double>& phi, const std::vector<double>& theta,
                         double sigma) {
    Eigen::VectorXd uv = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    auto pass = arma_pass(uv, phi, theta);
    if (!pass || !(sigma > 0)) return nan;
    Eigen::ArrayXd sf = sigma * sigma * pass->f.array();
    return -0.5 * (log2pi + sf.log() + pass->v.array().square() / sf).sum();
}

const Coefficient& ArimaFit::coefficient(const std::string& name) const {
    for (const auto& c : coefficients)
        if (c.name == name) return c;
    throw DomainError("no coefficient named '" + name + "'");
}

std::vector<PolyRoot> ar_polynomial_roots(const std::vector<double>& phi) {
    return to_poly_roots(poly_roots_from_companion(phi));
}

std::vector<PolyRoot> ma_polynomial_roots(const std::vector<double>& theta) {
    std::vector<double> neg(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) neg[i] = -theta[i];
    return to_poly_roots(poly_roots_from_companion(neg));
}

std::pair<std::vector<PolyRoot>, std::vector<PolyRoot>> lag_polynomial_roots(const ArimaFit& fit) {
    return {ar_polynomial_roots(fit.phi), ma_polynomial_roots(fit.theta)};
}

ArimaFit fit_arima(const TimeSeries& series, const ArimaSpec& spec, const SampleRange& range) {
    if (spec.p < 0 || spec.q < 0 || spec.d < 0 || spec.d > 2) throw DomainError("invalid ARIMA orders");
    if (spec.p + spec.q == 0 && spec.exog.empty() && !spec.include_const)
        throw DomainError("ARIMA spec estimates nothing");

    // Difference on the full series so pre-sample observations are used.
    TimeSeries w = spec.d > 0 ? diff(series, spec.d) : series;
    Period from = std::max(range.from, w.start());
    if (range.to > w.end()) throw DomainError("estimation range ends after the data");
    SampleRange sample(from, range.to);
    TimeSeries ys = slice(w, sample);
    const int T = static_cast<int>(ys.size());
    const int kx = static_cast<int>(spec.exog.size());
    if (T <= spec.d + spec.p + spec.q + kx + 2) throw DomainError("estimation sample too short for the ARIMA spec");

    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data().data(), T);
    Eigen::MatrixXd X(T, kx);
    for (int c = 0; c < kx; ++c) {
        TimeSeries xs = slice(spec.exog[c], sample);
        for (int t = 0; t < T; ++t) X(t, c) = xs[t];
    }

    Layout L;
    L.has_const = spec.include_const;
    L.p = spec.p;
    L.q = spec.q;
    L.kx = kx;
    for (int c = 0; c < kx; ++c)
        if (X.col(c).cwiseAbs().maxCoeff() > 0) L.exog_cols.push_back(c);

    // Starting values: OLS for the mean block, Yule-Walker for phi, theta = 0.
    Eigen::VectorXd start(L.size());
    {
        int cols = (L.has_const ? 1 : 0) + static_cast<int>(L.exog_cols.size());
        Eigen::VectorXd mean_coef = Eigen::VectorXd::Zero(cols);
        Eigen::VectorXd u = y;
        if (cols > 0) {
            Eigen::MatrixXd Z(T, cols);
            int j = 0;
            if (L.has_const) Z.col(j++).setOnes();
            for (int c : L.exog_cols) Z.col(j++) = X.col(c);
            OlsResult o = ols(Z, y, L.has_const); // NumericalError when collinear
            mean_coef = o.coef;
            u = o.resid;
            if (L.has_const && L.exog_cols.empty()) mean_coef[0] = y.mean();
        }
        auto phi0 = yule_walker(u, spec.p);
        int i = 0, j = 0;
        if (L.has_const) start[i++] = mean_coef[j++];
        for (double v : phi0) start[i++] = v;
        for (int k = 0; k < spec.q; ++k) start[i++] = 0.0;
        for (std::size_t k = 0; k < L.exog_cols.size(); ++k) start[i++] = mean_coef[j++];
    }

    Objective conc;
    conc.dimension = L.size();
    conc.loglik = [&](const Eigen::VectorXd& x) { return concentrated_loglik(y, X, L, x); };
    OptimOptions opts;
    opts.covariance = CovarianceMethod::none;
    std::ostringstream trace;
    opts.trace = &trace;

    OptimResult best;
    if (L.size() > 0) {
        best = maximize(conc, start, opts);
        if (!best.converged) best = maximize(conc, best.params, opts);
        auto nat = L.unpack(best.params);
        if (!ma_invertible(nat.theta)) {
            auto [th, scale] = invert_ma(nat.theta);
            Eigen::VectorXd x = best.params;
            int off = (L.has_const ? 1 : 0) + L.p;
            for (int k = 0; k < L.q; ++k) x[off + k] = th[k];
            OptimResult again = maximize(conc, x, opts);
            if (ma_invertible(L.unpack(again.params).theta) && again.loglik >= best.loglik - 1e-6) best = again;
        }
        if (!best.converged) throw FitError("ARIMA estimation did not converge: " + best.message, trace.str());
    } else {
        best.params = Eigen::VectorXd(0);
        best.converged = true;
    }

    auto nat = L.unpack(best.params);
    Eigen::VectorXd u = demeaned(y, X, nat);
    auto pass = arma_pass(u, nat.phi, nat.theta);
    if (!pass) throw FitError("ARIMA estimate lies outside the stationary region", trace.str());
    double sigma2 = (pass->v.array().square() / pass->f.array()).sum() / T;
    double sigma = std::sqrt(sigma2);

    Eigen::VectorXd xs(L.size() + 1);
    xs << best.params, sigma;
    Objective full;
    full.dimension = L.size() + 1;
    full.loglik = [&](const Eigen::VectorXd& x) { return full_loglik(y, X, L, x); };

    ArimaFit fit;
    fit.spec = spec;
    fit.dependent = series.name();
    fit.sample = sample;
    fit.nobs = T;
    fit.loglik = full_loglik(y, X, L, xs);
    fit.k = L.size() + 1;
    fit.aic = -2.0 * fit.loglik + 2.0 * fit.k;
    fit.bic = -2.0 * fit.loglik + fit.k * std::log(static_cast<double>(T));
    fit.hqc = -2.0 * fit.loglik + 2.0 * fit.k * std::log(std::log(static_cast<double>(T)));
    fit.mu = nat.mu;
    fit.phi = nat.phi;
    fit.theta = nat.theta;
    fit.beta = nat.beta;
    fit.sd_innovations = sigma;
    fit.mean_innovations = pass->v.mean();
    fit.final_state = pass->final_state;
    fit.iterations = best.iterations;
    fit.n_function_evals = best.n_function_evals;
    fit.n_gradient_evals = best.n_gradient_evals;
    fit.gradient_norm = best.gradient_norm;

    Eigen::MatrixXd cov_full = Eigen::MatrixXd::Constant(full.dimension, full.dimension, nan);
    try {
        cov_full = covariance_hessian(full, xs);
    } catch (const NumericalError&) {
    }
    fit.covariance = cov_full.topLeftCorner(L.size(), L.size());

    auto add = [&](const std::string& name, double value, int idx) {
        Coefficient c;
        c.name = name;
        c.value = value;
        c.std_error = idx >= 0 ? std::sqrt(cov_full(idx, idx)) : nan;
        c.z = value / c.std_error;
        c.p_value = stats::z_two_sided(c.z);
        fit.coefficients.push_back(c);
    };
    int idx = 0;
    if (L.has_const) add("const", nat.mu, idx++);
    for (int j = 0; j < L.p; ++j) add(fmt::format("phi_{}", j + 1), nat.phi[j], idx++);
    for (int j = 0; j < L.q; ++j) add(fmt::format("theta_{}", j + 1), nat.theta[j], idx++);
    for (int c = 0; c < kx; ++c) {
        bool identified = std::find(L.exog_cols.begin(), L.exog_cols.end(), c) != L.exog_cols.end();
        add(spec.exog[c].name(), nat.beta[c], identified ? idx++ : -1);
    }

    std::vector<double> resid(pass->v.data(), pass->v.data() + T);
    std::vector<double> fitted(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) fitted[t] = y[t] - resid[t];
    fit.residuals = TimeSeries("uhat", sample.from, std::move(resid));
    fit.fitted = TimeSeries("yhat", sample.from, std::move(fitted));
    fit.levels = slice(series, {series.start(), sample.to});
    fit.ar_roots = ar_polynomial_roots(fit.phi);
    fit.ma_roots = ma_polynomial_roots(fit.theta);
    return fit;
}

ArimaFit fit_armax(const TimeSeries& series, const ArimaSpec& spec, const SampleRange& range) {
    if (spec.exog.empty()) throw DomainError("ARMAX needs at least one exogenous series");
    return fit_arima(series, spec, range);
}

std::vector<double> integrated_psi_weights(const std::vector<double>& phi, const std::vector<double>& theta, int d,
                                           int h) {
    std::vector<double> psi(static_cast<std::size_t>(h), 0.0);
    for (int j = 0; j < h; ++j) {
        double v = j == 0 ? 1.0 : (j <= static_cast<int>(theta.size()) ? theta[j - 1] : 0.0);
        for (int i = 1; i <= std::min<int>(j, static_cast<int>(phi.size())); ++i) v += phi[i - 1] * psi[j - i];
        psi[j] = v;
    }
    for (int k = 0; k < d; ++k)
        for (int j = 1; j < h; ++j) psi[j] += psi[j - 1];
    return psi;
}

std::vector<ForecastRow> forecast_arima(const ArimaFit& fit, int horizon, double confidence,
                                        const std::vector<TimeSeries>& future_exog) {
    if (horizon < 1) throw DomainError("forecast horizon must be >= 1");
    if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must lie in (0,1)");
    const std::size_t kx = fit.beta.size();
    if (kx > 0 && future_exog.size() != kx) throw DomainError("forecasting an ARMAX model needs future exog values");

    StateSpaceModel m = arma_to_state_space(fit.phi, fit.theta, 1.0);
    Eigen::VectorXd xi = fit.final_state;
    std::vector<double> wf(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        xi = m.F * xi;
        double mean = fit.mu;
        Period p = fit.sample.to + (h + 1);
        for (std::size_t c = 0; c < kx; ++c) mean += fit.beta[c] * future_exog[c].at(p);
        wf[h] = mean + (m.H.transpose() * xi)(0, 0);
    }

    // Integrate: (1-L)^d Y_t = w_t  =>  Y_t = w_t - sum_{j>=1} c_j Y_{t-j}.
    const int d = fit.spec.d;
    std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
    c[0] = 1.0;
    for (int k = 0; k < d; ++k)
        for (int j = k + 1; j >= 1; --j) c[j] -= c[j - 1];
    std::vector<double> hist;
    for (int j = d; j >= 1; --j) hist.push_back(fit.levels.at(fit.sample.to - (j - 1)));

    auto psi = integrated_psi_weights(fit.phi, fit.theta, d, horizon);
    double z = stats::normal_quantile(0.5 + confidence / 2.0);
    std::vector<ForecastRow> out;
    double cum = 0.0;
    for (int h = 0; h < horizon; ++h) {
        double yv = wf[h];
        for (int j = 1; j <= d; ++j) yv -= c[j] * hist[hist.size() - j];
        hist.push_back(yv);
        cum += psi[h] * psi[h];
        ForecastRow row;
        row.period = fit.sample.to + (h + 1);
        row.point = yv;
        row.std_error = fit.sd_innovations * std::sqrt(cum);
        row.lower = yv - z * row.std_error;
        row.upper = yv + z * row.std_error;
        out.push_back(row);
    }
    return out;
}

std::vector<ResidualRow> residual_report(const ArimaFit& fit, double threshold_sd) {
    std::vector<ResidualRow> rows;
    double bound = threshold_sd * fit.sd_innovations;
    for (std::size_t t = 0; t < fit.residuals.size(); ++t) {
        ResidualRow r;
        r.period = fit.residuals.period_at(t);
        r.actual = fit.spec.d > 0 ? fit.levels.at(r.period) : fit.fitted[t] + fit.residuals[t];
        r.residual = fit.residuals[t];
        r.fitted = r.actual - r.residual;
        r.flagged = std::fabs(r.residual) > bound;
        rows.push_back(r);
    }
    return rows;
}

StateSpaceArmaFit fit_state_space_arma(const TimeSeries& series, int p, int q, const SampleRange& range,
                                       double sigma_start) {
    if (p < 0 || q < 0 || p + q == 0) throw DomainError("state-space ARMA needs p + q >= 1");
    if (!(sigma_start > 0)) throw DomainError("sigma start must be positive");
    TimeSeries y = slice(series, range);
    const int T = static_cast<int>(y.size());
    if (T <= p + q + 3) throw DomainError("sample too short for the state-space ARMA model");
    Eigen::MatrixXd Y = Eigen::Map<const Eigen::VectorXd>(y.data().data(), T);

    auto build = [p, q](const Eigen::VectorXd& x) {
        std::vector<double> phi(x.data(), x.data() + p), theta(x.data() + p, x.data() + p + q);
        return diffuse_initialization(arma_to_state_space(phi, theta, x[p + q]));
    };
    Objective obj;
    obj.dimension = p + q + 1;
    obj.loglik = [&](const Eigen::VectorXd& x) {
        if (!(x[p + q] > 0)) return std::numeric_limits<double>::quiet_NaN();
        return kalman_filter(build(x), Y).loglik_total;
    };
    obj.per_obs = [&](const Eigen::VectorXd& x) { return kalman_filter(build(x), Y).loglik_per_obs; };

    Eigen::VectorXd start = Eigen::VectorXd::Zero(p + q + 1);
    start[p + q] = sigma_start;
    std::ostringstream trace;
    OptimOptions opts;
    opts.trace = &trace;
    StateSpaceArmaFit fit;
    fit.optim = maximize(obj, start, opts);
    if (!fit.optim.converged) throw FitError("state-space ARMA did not converge: " + fit.optim.message, trace.str());
    fit.dependent = series.name();
    fit.sample = y.range();
    fit.nobs = T;
    for (int i = 0; i < p; ++i) fit.names.push_back(fmt::format("phi_{}", i + 1));
    for (int i = 0; i < q; ++i) fit.names.push_back(fmt::format("theta_{}", i + 1));
    fit.names.push_back("sigma");
    const double k = p + q + 1;
    fit.aic = -2 * fit.optim.loglik + 2 * k;
    fit.bic = -2 * fit.optim.loglik + k * std::log(static_cast<double>(T));
    fit.hqc = -2 * fit.optim.loglik + 2 * k * std::log(std::log(static_cast<double>(T)));
    fit.model = build(fit.optim.params);
    return fit;
}

} // namespace tsecon
