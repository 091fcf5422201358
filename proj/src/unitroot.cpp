#include "tsecon/unitroot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "tsecon/errors.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

std::string to_string(Deterministic d) {
    switch (d) {
    case Deterministic::none: return "none";
    case Deterministic::constant: return "constant";
    case Deterministic::constant_trend: return "constant and trend";
    }
    return "?";
}

namespace {

// Response-surface coefficients, MacKinnon (1994) Tables 3 and 4, indexed by
// number of variables. Small-p: polynomial of degree 2 in tau; large-p:
// degree 3. Both map through the normal cdf.
struct Surface {
    std::array<double, 6> tau_max, tau_min, tau_star;
    std::array<std::array<double, 3>, 6> small;
    std::array<std::array<double, 4>, 6> large;
};

const double inf = std::numeric_limits<double>::infinity();

const Surface surface_nc{
    {inf, 1.51, 0.86, 0.88, 1.05, 1.24},
    {-19.04, -19.62, -21.21, -23.25, -21.63, -25.74},
    {-1.04, -1.53, -2.68, -3.09, -3.07, -3.77},
    {{{0.6344, 1.2378, 3.2496e-2},
      {1.9129, 1.3857, 3.5322e-2},
      {2.7648, 1.4502, 3.4186e-2},
      {3.4336, 1.4835, 3.19e-2},
      {4.0999, 1.5533, 3.59e-2},
      {4.5388, 1.5344, 2.9807e-2}}},
    {{{0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2},
      {1.5578, 8.558e-1, -2.083e-1, -3.3549e-2},
      {2.2268, 6.8093e-1, -3.2362e-1, -5.4448e-2},
      {2.7654, 6.4502e-1, -3.0811e-1, -4.4946e-2},
      {3.2684, 6.8051e-1, -2.6778e-1, -3.4972e-2},
      {3.7268, 7.167e-1, -2.3648e-1, -2.8288e-2}}},
};

const Surface surface_c{
    {2.74, 0.92, 0.55, 0.61, 0.79, 1.0},
    {-18.83, -18.86, -23.48, -28.07, -25.96, -23.27},
    {-1.61, -2.62, -3.13, -3.47, -3.78, -3.93},
    {{{2.1659, 1.4412, 3.8269e-2},
      {2.92, 1.5012, 3.9796e-2},
      {3.4699, 1.4856, 3.164e-2},
      {3.9673, 1.4777, 2.6315e-2},
      {4.5509, 1.5338, 2.9545e-2},
      {5.1399, 1.6036, 3.4445e-2}}},
    {{{1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2},
      {2.1945, 6.4695e-1, -2.9198e-1, -4.2377e-2},
      {2.5893, 4.5168e-1, -3.6529e-1, -5.0074e-2},
      {3.0387, 4.5452e-1, -3.3666e-1, -4.1921e-2},
      {3.5049, 5.2098e-1, -2.9158e-1, -3.3468e-2},
      {3.9489, 5.8933e-1, -2.5359e-1, -2.721e-2}}},
};

const Surface surface_ct{
    {0.7, 0.63, 0.71, 0.93, 1.19, 1.42},
    {-16.18, -21.15, -25.37, -26.63, -26.53, -26.18},
    {-2.89, -3.19, -3.50, -3.65, -3.80, -4.36},
    {{{3.2512, 1.6047, 4.9588e-2},
      {3.6646, 1.5419, 3.6448e-2},
      {4.0983, 1.5173, 2.9898e-2},
      {4.5844, 1.5338, 2.8796e-2},
      {5.0722, 1.5634, 2.9472e-2},
      {5.53, 1.5914, 3.0392e-2}}},
    {{{2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2},
      {2.85, 5.272e-1, -3.6622e-1, -5.1695e-2},
      {3.221, 5.255e-1, -3.2685e-1, -4.1501e-2},
      {3.652, 5.9758e-1, -2.7483e-1, -3.2081e-2},
      {4.0712, 6.6428e-1, -2.3464e-1, -2.546e-2},
      {4.4735, 7.1757e-1, -2.0681e-1, -2.1196e-2}}},
};

const Surface& surface_for(Deterministic d) {
    switch (d) {
    case Deterministic::none: return surface_nc;
    case Deterministic::constant: return surface_c;
    case Deterministic::constant_trend: return surface_ct;
    }
    throw DomainError("unsupported deterministic case");
}

struct DfRegression {
    OlsResult ols;
    int ylag_col = 0;
};

/// Rows use dy indices first..end. dy[t] = y[t+1] - y[t].
DfRegression df_regression(const std::vector<double>& y, int k, int first, Deterministic det) {
    const int ndy = static_cast<int>(y.size()) - 1;
    const int T = ndy - first;
    const int ndet = det == Deterministic::none ? 0 : (det == Deterministic::constant ? 1 : 2);
    Eigen::MatrixXd X(T, ndet + 1 + k);
    Eigen::VectorXd dyv(T);
    std::vector<std::string> names;
    if (ndet >= 1) names.emplace_back("const");
    if (ndet == 2) names.emplace_back("time");
    names.emplace_back("y_1");
    for (int j = 1; j <= k; ++j) names.push_back(fmt::format("dy_{}", j));
    for (int r = 0; r < T; ++r) {
        int t = first + r;
        dyv[r] = y[t + 1] - y[t];
        int c = 0;
        if (ndet >= 1) X(r, c++) = 1.0;
        if (ndet == 2) X(r, c++) = static_cast<double>(t + 1);
        X(r, c++) = y[t];
        for (int j = 1; j <= k; ++j) X(r, c++) = y[t + 1 - j] - y[t - j];
    }
    return {ols(X, dyv, ndet >= 1, names), ndet};
}

AdfResult adf_impl(const TimeSeries& series, int max_lag, Deterministic det, AdfLagRule sel, int n_variables,
                   Deterministic pvalue_case) {
    if (max_lag < 0) throw DomainError("maximum lag must be >= 0");
    const auto& y = series.data();
    const int ndy = static_cast<int>(y.size()) - 1;
    const int ndet = det == Deterministic::none ? 0 : (det == Deterministic::constant ? 1 : 2);
    if (ndy - max_lag <= ndet + 1 + max_lag + 1)
        throw DomainError(fmt::format("series of length {} too short for ADF with max lag {}", y.size(), max_lag));

    int k = max_lag;
    if (sel == AdfLagRule::modified_aic && max_lag > 0) {
        double best = inf;
        for (int cand = 1; cand <= max_lag; ++cand) {
            DfRegression r = df_regression(y, cand, max_lag, det);
            const double T = r.ols.nobs;
            double s2 = r.ols.ssr / T;
            double b0 = r.ols.coef[r.ylag_col];
            double sy2 = 0.0;
            for (int t = max_lag; t < ndy; ++t) sy2 += y[t] * y[t];
            double tau_k = b0 * b0 * sy2 / s2;
            double maic = std::log(s2) + 2.0 * (tau_k + cand) / T;
            if (maic < best) {
                best = maic;
                k = cand;
            }
        }
    }
    int first = sel == AdfLagRule::modified_aic ? max_lag : k;
    DfRegression r = df_regression(y, k, first, det);

    AdfResult res;
    res.variable = series.name();
    res.lags_used = k;
    res.max_lag = max_lag;
    res.nobs = r.ols.nobs;
    res.deterministic = det;
    res.n_variables = n_variables;
    res.coefficient_minus_one = r.ols.coef[r.ylag_col];
    res.tau_statistic = r.ols.t[r.ylag_col];
    res.p_value = mackinnon_pvalue(res.tau_statistic, pvalue_case, n_variables);
    res.first_order_resid_autocorr = r.ols.rho;
    if (k > 0) {
        Eigen::MatrixXd Xr(r.ols.nobs, r.ylag_col + 1);
        Eigen::VectorXd dyv(r.ols.nobs);
        for (int row = 0; row < r.ols.nobs; ++row) {
            int t = first + row;
            dyv[row] = y[t + 1] - y[t];
            int c = 0;
            if (ndet >= 1) Xr(row, c++) = 1.0;
            if (ndet == 2) Xr(row, c++) = static_cast<double>(t + 1);
            Xr(row, c) = y[t];
        }
        double ssr_r = ols_ssr(Xr, dyv);
        TestResult F;
        F.name = "lagged differences";
        F.distribution = "F";
        F.df = {static_cast<double>(k), static_cast<double>(r.ols.df_resid())};
        F.statistic = ((ssr_r - r.ols.ssr) / k) / r.ols.s2;
        F.p_value = stats::f_sf(F.statistic, F.df[0], F.df[1]);
        F.null_hypothesis = "all lagged-difference coefficients are zero";
        res.lagged_diff_F = F;
    }
    res.regression = std::move(r.ols);
    return res;
}

} // namespace

double mackinnon_pvalue(double tau, Deterministic deterministic, int n_variables) {
    if (n_variables < 1 || n_variables > 6) throw DomainError("MacKinnon surface covers 1..6 variables");
    if (std::isnan(tau)) return tau;
    const Surface& s = surface_for(deterministic);
    const auto i = static_cast<std::size_t>(n_variables - 1);
    double p;
    if (tau > s.tau_max[i]) {
        p = 1.0;
    } else if (tau < s.tau_min[i]) {
        p = 0.0;
    } else if (tau <= s.tau_star[i]) {
        const auto& c = s.small[i];
        p = stats::normal_cdf(c[0] + tau * (c[1] + tau * c[2]));
    } else {
        const auto& c = s.large[i];
        p = stats::normal_cdf(c[0] + tau * (c[1] + tau * (c[2] + tau * c[3])));
    }
    return std::clamp(p, 1e-6, 1.0 - 1e-6);
}

AdfResult adf_test(const TimeSeries& series, int max_lag, Deterministic deterministic, AdfLagRule selection,
                   int n_variables) {
    return adf_impl(series, max_lag, deterministic, selection, n_variables, deterministic);
}

CointegrationReport engle_granger(const TimeSeries& y, const TimeSeries& x, int max_lag, double level) {
    auto aligned = align({y, x});
    CointegrationReport rep;
    rep.level = level;
    rep.step1 = adf_test(aligned[0], max_lag, Deterministic::constant, AdfLagRule::modified_aic);
    rep.step2 = adf_test(aligned[1], max_lag, Deterministic::constant, AdfLagRule::modified_aic);

    const auto T = static_cast<Eigen::Index>(aligned[0].size());
    Eigen::MatrixXd X(T, 2);
    Eigen::VectorXd yv(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        X(t, 0) = 1.0;
        X(t, 1) = aligned[1][t];
        yv[t] = aligned[0][t];
    }
    rep.step3 = ols(X, yv, true, {"const", aligned[1].name()});
    double tss = (yv.array() - yv.mean()).square().sum();
    if (!(rep.step3.ssr > 1e-20 * std::max(tss, 1.0)))
        throw NumericalError("degenerate cointegrating regression: residuals are identically zero");

    std::vector<double> u(rep.step3.resid.data(), rep.step3.resid.data() + T);
    TimeSeries uhat("uhat", aligned[0].start(), std::move(u));
    // Residual ADF without deterministic terms, p-value from the constant
    // surface with two variables (the cointegrating regression had one).
    rep.step4 = adf_impl(uhat, max_lag, Deterministic::none, AdfLagRule::modified_aic, 2, Deterministic::constant);

    bool unit_roots = rep.step1.p_value > level && rep.step2.p_value > level;
    rep.conclusion = unit_roots && rep.step4.p_value < level ? Conclusion::cointegrated : Conclusion::not_cointegrated;
    return rep;
}

} // namespace tsecon
