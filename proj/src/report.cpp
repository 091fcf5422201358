#include "tsecon/report.hpp"

#include <fmt/format.h>

#include <cmath>

namespace tsecon {

namespace {

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json vec(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
    return a;
}

Json vec(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

Json mat(const Eigen::MatrixXd& m) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(Eigen::VectorXd(m.row(i).transpose())));
    return a;
}

std::string g6(double x) {
    if (!std::isfinite(x)) return "NA";
    return fmt::format("{:.6g}", x);
}

std::string pval(double p) {
    if (!std::isfinite(p)) return "NA";
    if (p < 1e-4) return fmt::format("{:.2e}", p);
    return fmt::format("{:.4f}", p);
}

std::string range_text(const SampleRange& r, int nobs) {
    return fmt::format("{}-{} (T = {})", r.from.to_string(), r.to.to_string(), nobs);
}

Json roots_json(const std::vector<PolyRoot>& roots) {
    Json a = Json::array();
    for (const auto& r : roots)
        a.push_back({{"real", num(r.real)}, {"imaginary", num(r.imag)}, {"modulus", num(r.modulus)},
                     {"frequency", num(r.frequency)}});
    return a;
}

} // namespace

std::string p_stars(double p) {
    if (!std::isfinite(p)) return "";
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

std::string render_coefficients(const std::vector<Coefficient>& coefs, const char* stat_label) {
    std::string out = fmt::format("  {:<14}{:>14}{:>14}{:>10}{:>12}\n", "", "coefficient", "std. error", stat_label,
                                  "p-value");
    for (const auto& c : coefs)
        out += fmt::format("  {:<14}{:>14}{:>14}{:>10}{:>12} {}\n", c.name, g6(c.value), g6(c.std_error),
                           std::isfinite(c.z) ? fmt::format("{:.4g}", c.z) : "NA", pval(c.p_value),
                           p_stars(c.p_value));
    return out;
}

std::string render_ols(const OlsResult& r, const std::string& title) {
    std::vector<Coefficient> cs;
    for (int i = 0; i < r.k; ++i) {
        Coefficient c;
        c.name = i < static_cast<int>(r.names.size()) ? r.names[i] : fmt::format("x{}", i);
        c.value = r.coef[i];
        c.std_error = r.se[i];
        c.z = r.t[i];
        c.p_value = r.p[i];
        cs.push_back(c);
    }
    std::string out = title + "\n\n" + render_coefficients(cs, "t-ratio") + "\n";
    out += fmt::format("  Mean dependent var  {:>12}   S.D. dependent var  {:>12}\n", g6(r.mean_y), g6(r.sd_y));
    out += fmt::format("  Sum squared resid   {:>12}   S.E. of regression  {:>12}\n", g6(r.ssr),
                       g6(r.se_regression));
    out += fmt::format("  R-squared           {:>12}   Adjusted R-squared  {:>12}\n", g6(r.r2), g6(r.adj_r2));
    if (r.has_const && r.k > 1)
        out += fmt::format("  F({}, {})  {:>20}   P-value(F)          {:>12}\n", r.k - 1, r.df_resid(), g6(r.f_stat),
                           pval(r.f_p));
    out += fmt::format("  Log-likelihood      {:>12}   Akaike criterion    {:>12}\n", g6(r.loglik), g6(r.aic));
    out += fmt::format("  Schwarz criterion   {:>12}   Hannan-Quinn        {:>12}\n", g6(r.bic), g6(r.hqc));
    out += fmt::format("  rho                 {:>12}   Durbin-Watson       {:>12}\n", g6(r.rho), g6(r.dw));
    return out;
}

std::string render_test(const TestResult& t) {
    std::string df;
    for (size_t i = 0; i < t.df.size(); ++i) df += (i ? ", " : "") + fmt::format("{:g}", t.df[i]);
    return fmt::format("{}\n  Null hypothesis: {}\n  Test statistic: {}({}) = {}\n  with p-value = {}\n", t.name,
                       t.null_hypothesis, t.distribution == "chi2" ? "Chi-square" : t.distribution, df,
                       g6(t.statistic), g6(t.p_value));
}

std::string render_correlogram(const std::vector<CorrelogramRow>& rows, const std::string& variable) {
    std::string out = fmt::format("Autocorrelation function for {}\n***, **, * indicate significance at the 1%, 5%, "
                                  "10% levels\n\n  LAG      ACF            PACF          Q-stat.  [p-value]\n",
                                  variable);
    for (const auto& r : rows)
        out += fmt::format("  {:>3}  {:>8.4f} {:<4}  {:>8.4f} {:<4}  {:>9.4f}  [{:.3f}]\n", r.lag, r.acf, r.acf_stars,
                           r.pacf, r.pacf_stars, r.q_stat, r.p_value);
    return out;
}

std::string render_frequency(const std::vector<FrequencyBin>& bins, const std::string& variable) {
    std::string out = fmt::format("Frequency distribution for {}, obs 1-{}\n\n          interval          midpt   "
                                  "frequency    rel.     cum.\n",
                                  variable, [&] {
                                      int n = 0;
                                      for (auto& b : bins) n += b.count;
                                      return n;
                                  }());
    for (size_t i = 0; i < bins.size(); ++i) {
        const auto& b = bins[i];
        std::string iv = i == 0 ? fmt::format("          < {:>8.4f}", b.upper)
                         : i + 1 == bins.size() ? fmt::format("         >= {:>8.4f}", b.lower)
                                                : fmt::format("{:>9.4f} - {:>8.4f}", b.lower, b.upper);
        out += fmt::format("  {}  {:>9.4f}  {:>6}  {:>7.2f}%  {:>7.2f}%\n", iv, b.midpoint, b.count, b.percent,
                           b.cumulative_percent);
    }
    return out;
}

std::string render_arima(const ArimaFit& fit) {
    const auto& s = fit.spec;
    std::string model = s.exog.empty() ? fmt::format("ARIMA({}, {}, {})", s.p, s.d, s.q)
                                       : fmt::format("ARMAX({}, {}, {})", s.p, s.d, s.q);
    std::string dep = s.d == 0 ? fit.dependent
                      : s.d == 1 ? "(1-L) " + fit.dependent
                                 : fmt::format("(1-L)^{} {}", s.d, fit.dependent);
    std::string out = fmt::format("{}, using observations {}\nEstimated using Kalman filter (exact ML)\nDependent "
                                  "variable: {}\nStandard errors based on Hessian\n\n",
                                  model, range_text(fit.sample, fit.nobs), dep);
    out += render_coefficients(fit.coefficients) + "\n";
    out += fmt::format("  Mean of innovations {:>12}   S.D. of innovations {:>12}\n", g6(fit.mean_innovations),
                       g6(fit.sd_innovations));
    out += fmt::format("  Log-likelihood      {:>12}   Akaike criterion    {:>12}\n", fmt::format("{:.4f}", fit.loglik),
                       fmt::format("{:.4f}", fit.aic));
    out += fmt::format("  Schwarz criterion   {:>12}   Hannan-Quinn        {:>12}\n", fmt::format("{:.4f}", fit.bic),
                       fmt::format("{:.4f}", fit.hqc));
    auto roots = [&](const char* label, const std::vector<PolyRoot>& rs) {
        std::string o;
        for (size_t i = 0; i < rs.size(); ++i)
            o += fmt::format("  {:<4} Root {:<3}{:>10.4f}{:>10.4f}{:>10.4f}{:>10.4f}\n", i == 0 ? label : "", i + 1,
                             rs[i].real, rs[i].imag, rs[i].modulus, rs[i].frequency);
        return o;
    };
    if (!fit.ar_roots.empty() || !fit.ma_roots.empty()) {
        out += "\n                 Real      Imag   Modulus Frequency\n";
        out += roots("AR", fit.ar_roots);
        out += roots("MA", fit.ma_roots);
    }
    return out;
}

std::string render_residuals(const std::vector<ResidualRow>& rows, const std::string& variable, double threshold_sd) {
    std::string out = fmt::format("Actual, fitted and residual values for {}\n\n  {:<8}{:>14}{:>14}{:>14}\n", variable,
                                  "", variable, "fitted", "residual");
    for (const auto& r : rows)
        out += fmt::format("  {:<8}{:>14.4f}{:>14.4f}{:>14.4f}{}\n", r.period.to_string(), r.actual, r.fitted,
                           r.residual, r.flagged ? " *" : "");
    out += fmt::format("\nNote: * denotes a residual in excess of {} standard errors\n", threshold_sd);
    return out;
}

std::string render_forecast(const std::vector<ForecastRow>& rows, const std::optional<TimeSeries>& actual,
                            double confidence) {
    std::string out = fmt::format("For {:g}% confidence intervals\n\n  {:<8}{:>14}{:>14}{:>14}  {:^28}\n",
                                  confidence * 100, "", "actual", "prediction", "std. error", "interval");
    for (const auto& r : rows) {
        std::string a = actual && actual->covers(SampleRange(r.period, r.period)) ? fmt::format("{:.4f}", actual->at(r.period)) : "";
        out += fmt::format("  {:<8}{:>14}{:>14.4f}{:>14.4f}  ({:.4f}, {:.4f})\n", r.period.to_string(), a, r.point,
                           r.std_error, r.lower, r.upper);
    }
    return out;
}

std::string render_evaluation(const ForecastEvaluation& ev) {
    std::string out = fmt::format("Forecast evaluation statistics (T = {})\n\n", ev.n);
    auto line = [&](const char* label, double v) { out += fmt::format("  {:<30}{:>14}\n", label, g6(v)); };
    line("Mean Error", ev.me);
    line("Mean Squared Error", ev.mse);
    line("Root Mean Squared Error", ev.rmse);
    line("Mean Absolute Error", ev.mae);
    line("Mean Percentage Error", ev.mpe);
    line("Mean Absolute Percentage Error", ev.mape);
    line("Theil's U", ev.theil_u);
    line("Bias proportion, UM", ev.um);
    line("Regression proportion, UR", ev.ur);
    line("Disturbance proportion, UD", ev.ud);
    if (ev.perfect) out += "  (perfect forecast: proportions undefined, reported as 0)\n";
    return out;
}

std::string render_lag_selection(const LagSelection& sel) {
    std::string out = fmt::format("VAR system, maximum lag order {}\n(T = {}; asterisks mark the best value of each "
                                  "criterion)\n\n  lags        loglik    p(LR)         AIC          BIC          HQC\n",
                                  sel.rows.empty() ? 0 : sel.rows.back().lag, sel.nobs);
    for (const auto& r : sel.rows) {
        auto crit = [&](double v, int best) { return fmt::format("{:>11.6f}{}", v, r.lag == best ? "*" : " "); };
        out += fmt::format("  {:>4}  {:>12.5f}  {:>7}  {} {} {}\n", r.lag, r.loglik,
                           std::isfinite(r.lr_p_value) ? fmt::format("{:.5f}", r.lr_p_value) : "", crit(r.aic, sel.best_aic),
                           crit(r.bic, sel.best_bic), crit(r.hqc, sel.best_hqc));
    }
    return out;
}

std::string render_var(const VarFit& fit) {
    std::string out = fmt::format("VAR system, lag order {}\nOLS estimates, observations {}\nLog-likelihood = {:.5f}\n"
                                  "Determinant of covariance matrix = {}\nAIC = {:.4f}\nBIC = {:.4f}\nHQC = {:.4f}\n",
                                  fit.lag_order, range_text(fit.sample, fit.nobs), fit.loglik,
                                  g6(fit.sigma_ml.determinant()), fit.aic, fit.bic, fit.hqc);
    for (size_t i = 0; i < fit.equations.size(); ++i)
        out += "\n" + render_ols(fit.equations[i], fmt::format("Equation {}: {}", i + 1, fit.variable_names[i]));
    return out;
}

std::string render_irf(const std::vector<IrfTable>& tables) {
    std::string out;
    // group by shock
    for (size_t i = 0; i < tables.size();) {
        std::string shock = tables[i].shock_variable;
        size_t j = i;
        while (j < tables.size() && tables[j].shock_variable == shock) ++j;
        out += fmt::format("Responses to a one-standard error shock in {}\n\n  period", shock);
        for (size_t c = i; c < j; ++c) out += fmt::format("{:>14}", tables[c].response_variable);
        out += "\n";
        size_t h = tables[i].values.size();
        for (size_t t = 0; t < h; ++t) {
            out += fmt::format("  {:>6}", t + 1);
            for (size_t c = i; c < j; ++c) out += fmt::format("{:>14}", g6(tables[c].values[t]));
            out += "\n";
        }
        out += "\n";
        i = j;
    }
    return out;
}

std::string render_fevd(const std::vector<FevdTable>& tables) {
    std::string out;
    for (const auto& t : tables) {
        out += fmt::format("Decomposition of variance for {}\n\n  period   std. error", t.variable);
        for (const auto& s : t.shocks) out += fmt::format("{:>14}", s);
        out += "\n";
        for (const auto& r : t.rows) {
            out += fmt::format("  {:>6}  {:>11}", r.period, g6(r.std_error));
            for (double x : r.shares) out += fmt::format("{:>14.4f}", x);
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

std::string render_var_forecast(const std::vector<VarForecastTable>& tables, double confidence) {
    std::string out;
    for (const auto& t : tables) out += "Forecasts for " + t.variable + "\n" + render_forecast(t.rows, {}, confidence) + "\n";
    return out;
}

std::string render_varma(const VarmaSystem& sys) {
    std::string out = fmt::format("Two-step VARMA(1,{}) system, observations {}\n", sys.ma_lags,
                                  range_text(sys.sample, sys.nobs));
    for (size_t i = 0; i < sys.equations.size(); ++i)
        out += "\n" + render_ols(sys.equations[i], fmt::format("Equation {}: {}", i + 1, sys.equation_names[i]));
    out += "\nCross-equation VCV for residuals (correlations below the diagonal)\n";
    const auto n = sys.sigma.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        out += " ";
        for (Eigen::Index j = 0; j < n; ++j)
            out += fmt::format("{:>14}", j < i ? g6(sys.correlation(i, j)) : g6(sys.sigma(i, j)));
        out += "\n";
    }
    out += fmt::format("\nlog determinant = {:.5f}\n", sys.log_determinant);
    out += render_test(sys.breusch_pagan);
    return out;
}

std::string render_adf(const AdfResult& r) {
    std::string out = fmt::format("Augmented Dickey-Fuller test for {}\nincluding {} lag{} of (1-L){} (max was {})\n"
                                  "sample size {}\nunit-root null hypothesis: a = 1\n\n",
                                  r.variable, r.lags_used, r.lags_used == 1 ? "" : "s", r.variable, r.max_lag, r.nobs);
    std::string model = r.deterministic == Deterministic::none ? "(1-L)y = (a-1)*y(-1) + ... + e"
                        : r.deterministic == Deterministic::constant ? "(1-L)y = b0 + (a-1)*y(-1) + ... + e"
                                                                     : "(1-L)y = b0 + b1*t + (a-1)*y(-1) + ... + e";
    out += fmt::format("  test {}\n  model: {}\n  estimated value of (a - 1): {}\n  test statistic: tau = {}\n  "
                       "asymptotic p-value {}\n  1st-order autocorrelation coeff. for e: {:.3f}\n",
                       to_string(r.deterministic), model, g6(r.coefficient_minus_one), g6(r.tau_statistic),
                       g6(r.p_value), r.first_order_resid_autocorr);
    if (r.lagged_diff_F) {
        const auto& f = *r.lagged_diff_F;
        out += fmt::format("  lagged differences: F({:g}, {:g}) = {:.3f} [{:.4f}]\n", f.df[0], f.df[1], f.statistic,
                           f.p_value);
    }
    return out;
}

std::string render_coint(const CointegrationReport& rep) {
    std::string out = "Step 1: testing for a unit root in " + rep.step1.variable + "\n\n" + render_adf(rep.step1);
    out += "\nStep 2: testing for a unit root in " + rep.step2.variable + "\n\n" + render_adf(rep.step2);
    out += "\n" + render_ols(rep.step3, "Step 3: cointegrating regression");
    out += "\nStep 4: testing for a unit root in uhat\n\n" + render_adf(rep.step4);
    out += fmt::format("\nConclusion at the {:g}% level: {}\n", rep.level * 100,
                       rep.conclusion == Conclusion::cointegrated ? "cointegrated" : "no evidence of cointegration");
    return out;
}

std::string render_garch(const GarchFit& fit) {
    std::string out = fmt::format("Model: {} ({})\n Dependent variable: {}\n Sample: {}, VCV method: {}\n\n",
                                  fit.spec.label(), to_string(fit.spec.distribution), fit.dependent,
                                  range_text(fit.sample, fit.nobs),
                                  fit.spec.vcv == CovarianceMethod::opg ? "OPG" : "Hessian");
    out += "Conditional mean equation\n\n" + render_coefficients(fit.mean_coefficients);
    out += "\nConditional variance equation\n\n" + render_coefficients(fit.variance_coefficients);
    if (!fit.alt_parametrization.empty())
        out += "\n(alt. parametrization)\n\n" + render_coefficients(fit.alt_parametrization);
    if (!fit.shape_coefficients.empty())
        out += "\nConditional density parameters\n\n" + render_coefficients(fit.shape_coefficients);
    if (!fit.spec.fixed.empty()) {
        out += "\nHeld fixed:";
        for (const auto& [n, v] : fit.spec.fixed) out += fmt::format(" {} = {:g}", n, v);
        out += "\n";
    }
    out += fmt::format("\n  Llik: {:>12.5f}   AIC: {:>12.5f}\n  BIC:  {:>12.5f}   HQC: {:>12.5f}\n", fit.loglik,
                       fit.aic, fit.bic, fit.hqc);
    if (fit.spec.effective_convention() == LikelihoodConvention::kernel_only)
        out += "  (log-likelihood kernel without the -0.5 ln(2 pi) constant)\n";
    if (fit.unconditional_variance)
        out += fmt::format("\n  Unconditional error variance = {}\n", g6(*fit.unconditional_variance));
    return out;
}

std::string render_comparison(const std::vector<ComparisonRow>& rows) {
    std::string out = fmt::format("  {:<22}{:<12}{:>14}{:>14}{:>14}\n", "Model", "Density", "AIC", "BIC", "HQC");
    for (const auto& r : rows) {
        std::string label = r.spec.label() + (r.converged && r.all_significant ? "*" : "");
        if (!r.converged) {
            out += fmt::format("  {:<22}{:<12}{:>14}{:>14}{:>14}\n", label, to_string(r.spec.distribution), "N/A",
                               "N/A", "N/A");
            continue;
        }
        auto c = [](double v, bool best) { return fmt::format("{:.5f}{}", v, best ? "<" : " "); };
        out += fmt::format("  {:<22}{:<12}{:>14}{:>14}{:>14}\n", label, to_string(r.spec.distribution),
                           c(r.aic, r.best_aic), c(r.bic, r.best_bic), c(r.hqc, r.best_hqc));
    }
    out += "\n* all coefficients significant at 5%; < lowest value of the criterion; N/A: estimation failed\n";
    return out;
}

std::string render_optim(const OptimResult& r, const std::vector<std::string>& names) {
    std::string out = fmt::format("Using numerical derivatives\nTolerance = {:g}\nFunction evaluations: {}\nEvaluations "
                                  "of gradient: {}\n{}\n\n",
                                  default_tolerance, r.n_function_evals, r.n_gradient_evals, r.message);
    std::vector<Coefficient> cs;
    for (Eigen::Index i = 0; i < r.params.size(); ++i)
        cs.push_back(make_coefficient(i < static_cast<Eigen::Index>(names.size()) ? names[i] : fmt::format("p{}", i),
                                      r.params[i], r.std_errors.size() > i ? r.std_errors[i] : NAN));
    out += render_coefficients(cs);
    out += fmt::format("\n  Log-likelihood {:.4f}\n", r.loglik);
    return out;
}

// ---------------------------------------------------------------- JSON

Json to_json(const Coefficient& c) {
    return {{"name", c.name}, {"value", num(c.value)}, {"std_error", num(c.std_error)}, {"z", num(c.z)},
            {"p_value", num(c.p_value)}};
}

namespace {
Json coefs_json(const std::vector<Coefficient>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    return a;
}
} // namespace

Json to_json(const OlsResult& r) {
    Json cs = Json::array();
    for (int i = 0; i < r.k; ++i)
        cs.push_back({{"name", i < static_cast<int>(r.names.size()) ? r.names[i] : fmt::format("x{}", i)},
                      {"value", num(r.coef[i])},
                      {"std_error", num(r.se[i])},
                      {"t", num(r.t[i])},
                      {"p_value", num(r.p[i])}});
    return {{"nobs", r.nobs},          {"coefficients", cs},   {"ssr", num(r.ssr)},
            {"se_regression", num(r.se_regression)}, {"r2", num(r.r2)}, {"adj_r2", num(r.adj_r2)},
            {"f_stat", num(r.f_stat)}, {"f_p_value", num(r.f_p)}, {"durbin_watson", num(r.dw)},
            {"rho", num(r.rho)},       {"loglik", num(r.loglik)}, {"aic", num(r.aic)},
            {"bic", num(r.bic)},       {"hqc", num(r.hqc)}};
}

Json to_json(const TestResult& t) {
    Json j = {{"name", t.name},           {"distribution", t.distribution}, {"statistic", num(t.statistic)},
              {"df", vec(t.df)},          {"p_value", num(t.p_value)},      {"null_hypothesis", t.null_hypothesis}};
    return j;
}

Json to_json(const std::vector<CorrelogramRow>& rows, const std::string& variable) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back({{"lag", r.lag},
                     {"acf", num(r.acf)},
                     {"pacf", num(r.pacf)},
                     {"q_stat", num(r.q_stat)},
                     {"p_value", num(r.p_value)},
                     {"acf_stars", r.acf_stars},
                     {"pacf_stars", r.pacf_stars}});
    return {{"variable", variable}, {"rows", a}};
}

Json to_json(const std::vector<FrequencyBin>& bins) {
    Json a = Json::array();
    for (const auto& b : bins)
        a.push_back({{"lower", num(b.lower)},
                     {"upper", num(b.upper)},
                     {"midpoint", num(b.midpoint)},
                     {"count", b.count},
                     {"percent", num(b.percent)},
                     {"cumulative_percent", num(b.cumulative_percent)}});
    return a;
}

Json to_json(const ArimaFit& fit) {
    Json exog = Json::array();
    for (const auto& x : fit.spec.exog) exog.push_back(x.name());
    return {{"model", fit.spec.exog.empty() ? "arima" : "armax"},
            {"dependent", fit.dependent},
            {"order", {{"p", fit.spec.p}, {"d", fit.spec.d}, {"q", fit.spec.q}}},
            {"include_const", fit.spec.include_const},
            {"exog", exog},
            {"sample", {{"from", fit.sample.from.to_string()}, {"to", fit.sample.to.to_string()}}},
            {"nobs", fit.nobs},
            {"k", fit.k},
            {"coefficients", coefs_json(fit.coefficients)},
            {"loglik", num(fit.loglik)},
            {"aic", num(fit.aic)},
            {"bic", num(fit.bic)},
            {"hqc", num(fit.hqc)},
            {"mean_innovations", num(fit.mean_innovations)},
            {"sd_innovations", num(fit.sd_innovations)},
            {"ar_roots", roots_json(fit.ar_roots)},
            {"ma_roots", roots_json(fit.ma_roots)}};
}

Json to_json(const std::vector<ResidualRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back({{"period", r.period.to_string()},
                     {"actual", num(r.actual)},
                     {"fitted", num(r.fitted)},
                     {"residual", num(r.residual)},
                     {"flagged", r.flagged}});
    return a;
}

Json to_json(const std::vector<ForecastRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back({{"period", r.period.to_string()},
                     {"point", num(r.point)},
                     {"std_error", num(r.std_error)},
                     {"lower", num(r.lower)},
                     {"upper", num(r.upper)}});
    return a;
}

Json to_json(const ForecastEvaluation& ev) {
    return {{"n", ev.n},         {"me", num(ev.me)},     {"mse", num(ev.mse)},   {"rmse", num(ev.rmse)},
            {"mae", num(ev.mae)}, {"mpe", num(ev.mpe)},  {"mape", num(ev.mape)}, {"theil_u", num(ev.theil_u)},
            {"um", num(ev.um)},   {"ur", num(ev.ur)},    {"ud", num(ev.ud)},     {"perfect", ev.perfect}};
}

Json to_json(const LagSelection& sel) {
    Json a = Json::array();
    for (const auto& r : sel.rows)
        a.push_back({{"lag", r.lag},
                     {"loglik", num(r.loglik)},
                     {"lr_p_value", num(r.lr_p_value)},
                     {"aic", num(r.aic)},
                     {"bic", num(r.bic)},
                     {"hqc", num(r.hqc)}});
    return {{"nobs", sel.nobs},
            {"rows", a},
            {"best", {{"aic", sel.best_aic}, {"bic", sel.best_bic}, {"hqc", sel.best_hqc}}}};
}

Json to_json(const VarFit& fit) {
    Json eqs = Json::array();
    for (size_t i = 0; i < fit.equations.size(); ++i) {
        Json e = to_json(fit.equations[i]);
        e["variable"] = fit.variable_names[i];
        eqs.push_back(e);
    }
    return {{"lag_order", fit.lag_order},
            {"variables", fit.variable_names},
            {"sample", {{"from", fit.sample.from.to_string()}, {"to", fit.sample.to.to_string()}}},
            {"nobs", fit.nobs},
            {"loglik", num(fit.loglik)},
            {"aic", num(fit.aic)},
            {"bic", num(fit.bic)},
            {"hqc", num(fit.hqc)},
            {"sigma_ml", mat(fit.sigma_ml)},
            {"equations", eqs}};
}

Json to_json(const std::vector<IrfTable>& tables) {
    Json a = Json::array();
    for (const auto& t : tables)
        a.push_back({{"shock", t.shock_variable}, {"response", t.response_variable}, {"values", vec(t.values)}});
    return a;
}

Json to_json(const std::vector<FevdTable>& tables) {
    Json a = Json::array();
    for (const auto& t : tables) {
        Json rows = Json::array();
        for (const auto& r : t.rows)
            rows.push_back({{"period", r.period}, {"std_error", num(r.std_error)}, {"shares", vec(r.shares)}});
        a.push_back({{"variable", t.variable}, {"shocks", t.shocks}, {"rows", rows}});
    }
    return a;
}

Json to_json(const std::vector<VarForecastTable>& tables) {
    Json a = Json::array();
    for (const auto& t : tables) a.push_back({{"variable", t.variable}, {"rows", to_json(t.rows)}});
    return a;
}

Json to_json(const VarmaSystem& sys) {
    Json eqs = Json::array();
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        Json e = to_json(sys.equations[i]);
        e["variable"] = sys.equation_names[i];
        eqs.push_back(e);
    }
    return {{"ma_lags", sys.ma_lags},
            {"sample", {{"from", sys.sample.from.to_string()}, {"to", sys.sample.to.to_string()}}},
            {"nobs", sys.nobs},
            {"equations", eqs},
            {"sigma", mat(sys.sigma)},
            {"correlation", mat(sys.correlation)},
            {"log_determinant", num(sys.log_determinant)},
            {"breusch_pagan", to_json(sys.breusch_pagan)}};
}

Json to_json(const AdfResult& r) {
    Json j = {{"variable", r.variable},
              {"deterministic", to_string(r.deterministic)},
              {"lags_used", r.lags_used},
              {"max_lag", r.max_lag},
              {"nobs", r.nobs},
              {"coefficient_minus_one", num(r.coefficient_minus_one)},
              {"tau", num(r.tau_statistic)},
              {"p_value", num(r.p_value)},
              {"n_variables", r.n_variables},
              {"first_order_resid_autocorr", num(r.first_order_resid_autocorr)}};
    if (r.lagged_diff_F) j["lagged_diff_F"] = to_json(*r.lagged_diff_F);
    return j;
}

Json to_json(const CointegrationReport& rep) {
    return {{"step1", to_json(rep.step1)},
            {"step2", to_json(rep.step2)},
            {"step3", to_json(rep.step3)},
            {"step4", to_json(rep.step4)},
            {"level", rep.level},
            {"conclusion", rep.conclusion == Conclusion::cointegrated ? "cointegrated" : "not_cointegrated"}};
}

Json to_json(const GarchFit& fit) {
    Json fixed = Json::object();
    for (const auto& [n, v] : fit.spec.fixed) fixed[n] = v;
    Json j = {{"model", fit.spec.label()},
              {"variant", to_string(fit.spec.variant)},
              {"distribution", to_string(fit.spec.distribution)},
              {"dependent", fit.dependent},
              {"sample", {{"from", fit.sample.from.to_string()}, {"to", fit.sample.to.to_string()}}},
              {"nobs", fit.nobs},
              {"k", fit.k},
              {"mean", coefs_json(fit.mean_coefficients)},
              {"variance", coefs_json(fit.variance_coefficients)},
              {"shape", coefs_json(fit.shape_coefficients)},
              {"fixed", fixed},
              {"loglik", num(fit.loglik)},
              {"aic", num(fit.aic)},
              {"bic", num(fit.bic)},
              {"hqc", num(fit.hqc)},
              {"likelihood_convention",
               fit.spec.effective_convention() == LikelihoodConvention::full ? "full" : "kernel"},
              {"unconditional_variance",
               fit.unconditional_variance ? num(*fit.unconditional_variance) : Json(nullptr)}};
    if (!fit.alt_parametrization.empty()) j["alt_parametrization"] = coefs_json(fit.alt_parametrization);
    return j;
}

Json to_json(const std::vector<ComparisonRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) {
        Json j = {{"model", r.spec.label()},
                  {"distribution", to_string(r.spec.distribution)},
                  {"converged", r.converged}};
        if (r.converged) {
            j["loglik"] = num(r.loglik);
            j["aic"] = num(r.aic);
            j["bic"] = num(r.bic);
            j["hqc"] = num(r.hqc);
            j["all_significant"] = r.all_significant;
            j["best"] = {{"aic", r.best_aic}, {"bic", r.best_bic}, {"hqc", r.best_hqc}};
        } else {
            j["error"] = r.error;
        }
        a.push_back(j);
    }
    return a;
}

// ---------------------------------------------------------------- CSV

std::string correlogram_csv(const std::vector<CorrelogramRow>& rows) {
    std::string out = "lag,acf,pacf,q_stat,p_value\n";
    for (const auto& r : rows)
        out += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", r.lag, r.acf, r.pacf, r.q_stat, r.p_value);
    return out;
}

std::string forecast_csv(const std::vector<ForecastRow>& rows) {
    std::string out = "period,point,std_error,lower,upper\n";
    for (const auto& r : rows)
        out += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", r.period.to_string(), r.point, r.std_error, r.lower,
                           r.upper);
    return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "model,distribution,converged,loglik,aic,bic,hqc,all_significant\n";
    for (const auto& r : rows) {
        if (r.converged)
            out += fmt::format("{},{},1,{:.10g},{:.10g},{:.10g},{:.10g},{}\n", r.spec.label(),
                               to_string(r.spec.distribution), r.loglik, r.aic, r.bic, r.hqc,
                               r.all_significant ? 1 : 0);
        else
            out += fmt::format("{},{},0,NA,NA,NA,NA,0\n", r.spec.label(), to_string(r.spec.distribution));
    }
    return out;
}

std::string coefficients_csv(const std::vector<Coefficient>& coefs) {
    std::string out = "name,value,std_error,z,p_value\n";
    for (const auto& c : coefs)
        out += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", c.name, c.value, c.std_error, c.z, c.p_value);
    return out;
}

} // namespace tsecon
