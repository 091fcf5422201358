// Command-line front end: one subcommand per analysis.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>

#include "tsecon/arima.hpp"
#include "tsecon/diagnostics.hpp"
#include "tsecon/errors.hpp"
#include "tsecon/forecast_eval.hpp"
#include "tsecon/plotdata.hpp"
#include "tsecon/report.hpp"
#include "tsecon/unitroot.hpp"
#include "tsecon/var.hpp"
#include "tsecon/volatility.hpp"

using namespace tsecon;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::vector<std::string> data;
    std::string var;
    std::string sample;
    std::string forecast;
    std::string format = "text";
    std::string out;
    int max_lag = -1;
    std::uint64_t seed = 1;
    std::string transform = "level";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--data", c.data, "CSV file(s) with a date column")->required()->check(CLI::ExistingFile);
    cmd->add_option("--sample", c.sample, "estimation range, e.g. 1980:1:2006:1");
    cmd->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", c.out, "directory for the report and plot data");
}

struct Store {
    std::map<std::string, TimeSeries> series;

    explicit Store(const std::vector<std::string>& files) {
        for (const auto& f : files)
            for (auto& s : load_csv_all(f)) series.insert_or_assign(s.name(), s);
    }
    const TimeSeries& get(const std::string& name) const {
        auto it = series.find(name);
        if (it != series.end()) return it->second;
        std::string known;
        for (const auto& [k, v] : series) known += " " + k;
        throw DomainError("no series named '" + name + "' (available:" + known + ")");
    }
};

TimeSeries transformed(const TimeSeries& s, const std::string& how) {
    if (how == "level") return s;
    if (how == "diff") return diff(s);
    if (how == "ldiff100") return ldiff_scaled(s, 100.0);
    throw DomainError("unknown transform " + how);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

SampleRange range_or(const std::string& text, const SampleRange& fallback) {
    return text.empty() ? fallback : SampleRange::parse(text);
}

// Collects the report and writes it to stdout or <out>/<name>.<ext>.
class Output {
public:
    Output(const Common& c, std::string name) : c_(c), name_(std::move(name)) {
        if (!c_.out.empty()) fs::create_directories(c_.out);
    }
    [[nodiscard]] bool text() const { return c_.format == "text"; }
    [[nodiscard]] bool json() const { return c_.format == "json"; }
    [[nodiscard]] bool csv() const { return c_.format == "csv"; }
    void add_text(const std::string& s) { text_ += s + "\n"; }
    void add_json(const std::string& key, Json j) { json_[key] = std::move(j); }
    void add_csv(const std::string& s) { csv_ += s; }
    [[nodiscard]] bool plots() const { return !c_.out.empty(); }
    [[nodiscard]] fs::path plot_path(const std::string& file) const { return fs::path(c_.out) / file; }

    void flush() {
        std::string body = json() ? json_.dump(2) + "\n" : csv() ? csv_ : text_;
        if (c_.out.empty()) {
            std::cout << body;
            return;
        }
        auto path = fs::path(c_.out) / (name_ + (json() ? ".json" : csv() ? ".csv" : ".txt"));
        std::ofstream f(path);
        if (!f) throw Error("cannot write " + path.string());
        f << body;
        std::cout << "wrote " << path.string() << "\n";
    }

private:
    const Common& c_;
    std::string name_;
    std::string text_, csv_;
    Json json_ = Json::object();
};

std::vector<TestResult> battery(const TimeSeries& resid, int fitted_params) {
    return {doornik_hansen(std::vector<TimeSeries>{resid}), ljung_box(resid, 4, fitted_params), arch_lm(resid, 4)};
}

void emit_battery(Output& out, const std::vector<TestResult>& tests) {
    Json arr = Json::array();
    for (const auto& t : tests) {
        out.add_text(render_test(t));
        arr.push_back(to_json(t));
    }
    out.add_json("diagnostics", arr);
}

void write_series_plot(const Output& out, const std::string& file, const TimeSeries& s) {
    if (out.plots()) write_xy(out.plot_path(file), s);
}

// ---------------------------------------------------------------- commands

int cmd_correlogram(const Common& c, int bins) {
    if (c.max_lag < 1) throw CLI::ValidationError("--max-lag", "must be at least 1");
    Store st(c.data);
    TimeSeries s = transformed(st.get(c.var), c.transform);
    s = slice(s, range_or(c.sample, s.range()));
    auto rows = acf(s, c.max_lag);
    Output out(c, "correlogram_" + s.name());
    out.add_text(render_correlogram(rows, s.name()));
    out.add_json("correlogram", to_json(rows, s.name()));
    out.add_csv(correlogram_csv(rows));
    if (bins > 0) {
        auto fb = frequency_distribution(s, bins);
        out.add_text(render_frequency(fb, s.name()));
        out.add_json("frequency", to_json(fb));
    }
    if (out.plots()) {
        std::vector<double> lag, a, p;
        for (const auto& r : rows) {
            lag.push_back(r.lag);
            a.push_back(r.acf);
            p.push_back(r.pacf);
        }
        write_xy(out.plot_path("acf.dat"), lag, a, "lag acf");
        write_xy(out.plot_path("pacf.dat"), lag, p, "lag pacf");
    }
    out.flush();
    return 0;
}

struct ArimaArgs {
    int p = 1, d = 1, q = 1;
    bool no_const = false;
    double conf = 0.95;
    double threshold = 2.5;
    bool screen = false;
    std::string orders;
    std::vector<std::string> exog;
};

std::vector<ForecastRow> forecast_block(Output& out, const ArimaFit& fit, const TimeSeries& level,
                                        const std::string& forecast_range, const ArimaArgs& a,
                                        const std::vector<TimeSeries>& future_exog) {
    if (forecast_range.empty()) return {};
    SampleRange fr = SampleRange::parse(forecast_range);
    if (!(fit.sample.to < fr.from)) throw DomainError("forecast range must start after the estimation range");
    int h = static_cast<int>(fr.to - fit.sample.to);
    auto rows = forecast_arima(fit, h, a.conf, future_exog);
    std::vector<ForecastRow> shown;
    for (const auto& r : rows)
        if (fr.contains(r.period)) shown.push_back(r);
    std::optional<TimeSeries> actual;
    if (level.covers(fr)) actual = slice(level, fr);
    out.add_text(render_forecast(shown, actual, a.conf));
    out.add_json("forecast", to_json(shown));
    out.add_csv(forecast_csv(shown));
    if (actual) {
        std::vector<double> pts;
        for (const auto& r : shown) pts.push_back(r.point);
        auto ev = evaluate_forecast(*actual, TimeSeries("forecast", fr.from, pts));
        out.add_text(render_evaluation(ev));
        out.add_json("evaluation", to_json(ev));
    }
    if (out.plots()) write_band(out.plot_path("forecast.dat"), shown);
    return shown;
}

int cmd_arima_screen(const Common& c, const ArimaArgs& a) {
    Store st(c.data);
    const TimeSeries& y = st.get(c.var);
    std::vector<std::array<int, 3>> orders;
    if (a.orders.empty()) {
        orders = {{1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {2, 1, 0}, {0, 1, 2}};
    } else {
        for (const auto& o : split(a.orders, ';')) {
            auto v = split(o, ',');
            if (v.size() != 3) throw CLI::ValidationError("--orders", "expected p,d,q;p,d,q;...");
            orders.push_back({std::stoi(v[0]), std::stoi(v[1]), std::stoi(v[2])});
        }
    }
    SampleRange rg = range_or(c.sample, y.range());
    std::vector<std::future<std::pair<std::optional<ArimaFit>, std::string>>> jobs;
    for (auto o : orders)
        jobs.push_back(std::async(std::launch::async, [&y, rg, o, &a]() -> std::pair<std::optional<ArimaFit>, std::string> {
            ArimaSpec sp;
            sp.p = o[0];
            sp.d = o[1];
            sp.q = o[2];
            sp.include_const = !a.no_const;
            try {
                return {fit_arima(y, sp, rg), ""};
            } catch (const Error& e) {
                return {std::nullopt, e.what()};
            }
        }));
    Output out(c, "arima_screen_" + y.name());
    std::string txt = fmt::format("Screening of ARIMA models for {} (p-values; pass = all above 0.05)\n\n  {:<16}{:>12}{:>12}"
                                  "{:>12}{:>12}  {}\n",
                                  y.name(), "model", "normality", "LB(4)", "ARCH(4)", "AIC", "result");
    std::string csv = "model,normality_p,ljung_box_p,arch_p,aic,pass\n";
    Json arr = Json::array();
    for (size_t i = 0; i < jobs.size(); ++i) {
        auto [fit, err] = jobs[i].get();
        auto o = orders[i];
        std::string label = fmt::format("ARIMA({},{},{})", o[0], o[1], o[2]);
        if (!fit) {
            txt += fmt::format("  {:<16}{:>12}{:>12}{:>12}{:>12}  failed: {}\n", label, "NA", "NA", "NA", "NA", err);
            csv += label + ",NA,NA,NA,NA,0\n";
            arr.push_back({{"model", label}, {"error", err}});
            continue;
        }
        auto b = battery(fit->residuals, o[0] + o[2]);
        bool pass = b[0].p_value > 0.05 && b[1].p_value > 0.05 && b[2].p_value > 0.05;
        txt += fmt::format("  {:<16}{:>12.4f}{:>12.4f}{:>12.4f}{:>12.3f}  {}\n", label, b[0].p_value, b[1].p_value,
                           b[2].p_value, fit->aic, pass ? "pass" : "FAIL");
        csv += fmt::format("{},{:.6g},{:.6g},{:.6g},{:.6f},{}\n", label, b[0].p_value, b[1].p_value, b[2].p_value,
                           fit->aic, pass ? 1 : 0);
        arr.push_back({{"model", label},
                       {"normality_p", b[0].p_value},
                       {"ljung_box_p", b[1].p_value},
                       {"arch_p", b[2].p_value},
                       {"aic", fit->aic},
                       {"pass", pass}});
    }
    out.add_text(txt);
    out.add_csv(csv);
    out.add_json("screening", arr);
    out.flush();
    return 0;
}

int cmd_arima(const Common& c, const ArimaArgs& a, bool armax) {
    if (a.screen) return cmd_arima_screen(c, a);
    Store st(c.data);
    const TimeSeries& level = st.get(c.var);
    ArimaSpec sp;
    sp.p = a.p;
    sp.d = a.d;
    sp.q = a.q;
    sp.include_const = !a.no_const;
    std::vector<TimeSeries> exog_levels;
    if (armax) {
        if (a.exog.empty()) throw CLI::ValidationError("--exog", "armax needs at least one regressor");
        for (const auto& n : a.exog) {
            exog_levels.push_back(st.get(n));
            sp.exog.push_back(a.d > 0 ? diff(st.get(n), a.d) : st.get(n));
        }
    }
    TimeSeries y = level;
    for (int i = 0; i < a.d; ++i) y = diff(y);
    // The model differences internally; pass the level series and a range on the differenced scale.
    SampleRange rg = range_or(c.sample, y.range());
    ArimaFit fit = armax ? fit_armax(level, sp, rg) : fit_arima(level, sp, rg);

    Output out(c, (armax ? "armax_" : "arima_") + level.name());
    out.add_text(render_arima(fit));
    out.add_json("fit", to_json(fit));
    out.add_csv(coefficients_csv(fit.coefficients));
    auto resid = residual_report(fit, a.threshold);
    out.add_text(render_residuals(resid, level.name(), a.threshold));
    out.add_json("residuals", to_json(resid));
    emit_battery(out, battery(fit.residuals, a.p + a.q));
    if (armax) {
        auto fb = frequency_distribution(fit.residuals, 11);
        out.add_text(render_frequency(fb, "uhat"));
        out.add_json("frequency", to_json(fb));
    }
    std::vector<TimeSeries> future;
    for (const auto& x : sp.exog) future.push_back(x);
    if (!c.forecast.empty()) forecast_block(out, fit, level, c.forecast, a, future);
    write_series_plot(out, "residuals.dat", fit.residuals);
    write_series_plot(out, "fitted.dat", fit.fitted);
    out.flush();
    return 0;
}

int cmd_varma(const Common& c, const std::string& vars, const std::string& orders, int ma_lags) {
    Store st(c.data);
    auto names = split(vars, ',');
    auto ords = split(orders, ';');
    if (names.size() != 2 || ords.size() != 2)
        throw CLI::ValidationError("--vars/--orders", "two series and two p,d,q orders are required");
    std::vector<TimeSeries> data;
    std::vector<ArimaFit> sources;
    for (size_t i = 0; i < 2; ++i) {
        const auto& lv = st.get(names[i]);
        auto o = split(ords[i], ',');
        if (o.size() != 3) throw CLI::ValidationError("--orders", "expected p,d,q;p,d,q");
        ArimaSpec sp;
        sp.p = std::stoi(o[0]);
        sp.d = std::stoi(o[1]);
        sp.q = std::stoi(o[2]);
        TimeSeries y = lv;
        for (int k = 0; k < sp.d; ++k) y = diff(y);
        sources.push_back(fit_arima(lv, sp, range_or(c.sample, y.range())));
        data.push_back(y);
    }
    auto sys = fit_varma_two_step(data, sources, ma_lags);
    Output out(c, "varma");
    out.add_text(render_varma(sys));
    out.add_json("varma", to_json(sys));
    for (const auto& e : sys.equations) {
        std::vector<Coefficient> cs;
        for (int i = 0; i < e.k; ++i) cs.push_back({e.names[i], e.coef[i], e.se[i], e.t[i], e.p[i]});
        out.add_csv(coefficients_csv(cs));
    }
    out.flush();
    return 0;
}

struct VarArgs {
    std::string vars;
    int lag = 1;
    int horizon = 20;
    int steps = 0;
    double conf = 0.95;
    bool force_irf = false;
    std::string ordering;
    int portmanteau_lags = 26;
};

int cmd_var(const Common& c, const VarArgs& a) {
    Store st(c.data);
    auto names = split(a.vars, ',');
    if (names.size() < 2) throw CLI::ValidationError("--vars", "a VAR needs at least two series");
    std::vector<TimeSeries> data;
    for (const auto& n : names) {
        TimeSeries s = transformed(st.get(n), c.transform);
        data.push_back(c.sample.empty() ? s : slice(s, SampleRange::parse(c.sample)));
    }
    Output out(c, "var");
    if (c.max_lag > 0) {
        auto sel = select_lag_order(data, c.max_lag);
        out.add_text(render_lag_selection(sel));
        out.add_json("lag_selection", to_json(sel));
    }
    auto fit = fit_var(data, a.lag);
    out.add_text(render_var(fit));
    out.add_json("fit", to_json(fit));
    Json gj = Json::array();
    for (const auto& t : granger_f_tests(fit)) {
        out.add_text(render_test(t));
        gj.push_back(to_json(t));
    }
    out.add_json("granger", gj);
    auto pm = portmanteau(fit, a.portmanteau_lags);
    out.add_text(render_test(pm));
    out.add_json("portmanteau", to_json(pm));
    auto dh = doornik_hansen(fit.residuals);
    out.add_text(render_test(dh));
    out.add_json("normality", to_json(dh));

    bool stable = is_stable(fit);
    out.add_json("stable", stable);
    std::vector<int> ordering;
    for (const auto& o : split(a.ordering, ',')) {
        auto it = std::find(names.begin(), names.end(), o);
        if (it == names.end()) throw CLI::ValidationError("--ordering", "unknown variable " + o);
        ordering.push_back(static_cast<int>(it - names.begin()));
    }
    if (!stable) out.add_text("WARNING: the estimated VAR is not stable (a root of the companion matrix is >= 1)\n");
    if (stable || a.force_irf) {
        auto irf = impulse_response(fit, a.horizon, ordering);
        out.add_text(render_irf(irf));
        out.add_json("irf", to_json(irf));
        auto fv = fevd(fit, a.horizon, ordering);
        out.add_text(render_fevd(fv));
        out.add_json("fevd", to_json(fv));
        if (out.plots())
            for (const auto& t : irf) {
                std::vector<double> x;
                for (size_t i = 0; i < t.values.size(); ++i) x.push_back(static_cast<double>(i + 1));
                write_xy(out.plot_path(fmt::format("irf_{}_{}.dat", t.shock_variable, t.response_variable)), x,
                         t.values, "period response");
            }
    } else {
        out.add_text("impulse responses skipped; pass --force-irf to emit them anyway\n");
    }
    int steps = a.steps;
    if (steps == 0 && !c.forecast.empty()) steps = static_cast<int>(SampleRange::parse(c.forecast).length());
    if (steps > 0) {
        auto fc = forecast_var(fit, steps, a.conf);
        out.add_text(render_var_forecast(fc, a.conf));
        out.add_json("forecast", to_json(fc));
        for (const auto& t : fc) {
            out.add_csv(t.variable + "\n" + forecast_csv(t.rows));
            if (out.plots()) write_band(out.plot_path("forecast_" + t.variable + ".dat"), t.rows);
        }
    }
    out.flush();
    return 0;
}

Deterministic det_from(const std::string& s) {
    if (s == "nc") return Deterministic::none;
    if (s == "c") return Deterministic::constant;
    if (s == "ct") return Deterministic::constant_trend;
    throw CLI::ValidationError("--det", "expected nc, c or ct");
}

int cmd_adf(const Common& c, const std::string& det, bool fixed) {
    Store st(c.data);
    TimeSeries s = transformed(st.get(c.var), c.transform);
    s = slice(s, range_or(c.sample, s.range()));
    int ml = c.max_lag < 0 ? 12 : c.max_lag;
    auto r = adf_test(s, ml, det_from(det), fixed ? AdfLagRule::fixed : AdfLagRule::modified_aic);
    Output out(c, "adf_" + s.name());
    out.add_text(render_adf(r));
    out.add_json("adf", to_json(r));
    out.add_csv(fmt::format("variable,lags,nobs,tau,p_value\n{},{},{},{:.10g},{:.10g}\n", r.variable, r.lags_used,
                            r.nobs, r.tau_statistic, r.p_value));
    out.flush();
    return 0;
}

int cmd_coint(const Common& c, const std::string& yname, const std::string& xname, double level) {
    Store st(c.data);
    TimeSeries y = transformed(st.get(yname), c.transform), x = transformed(st.get(xname), c.transform);
    if (!c.sample.empty()) {
        y = slice(y, SampleRange::parse(c.sample));
        x = slice(x, SampleRange::parse(c.sample));
    }
    auto rep = engle_granger(y, x, c.max_lag < 0 ? 4 : c.max_lag, level);
    Output out(c, "coint");
    out.add_text(render_coint(rep));
    out.add_json("coint", to_json(rep));
    out.add_csv(fmt::format("step,variable,tau,p_value\n1,{},{:.10g},{:.10g}\n2,{},{:.10g},{:.10g}\n4,uhat,{:.10g},{:.10g}\n",
                            rep.step1.variable, rep.step1.tau_statistic, rep.step1.p_value, rep.step2.variable,
                            rep.step2.tau_statistic, rep.step2.p_value, rep.step4.tau_statistic, rep.step4.p_value));
    out.flush();
    return 0;
}

struct GarchArgs {
    std::string model = "garch";
    std::string dist = "normal";
    int p = 1, q = 1;
    bool in_mean = false;
    std::string vcv = "hessian";
    std::vector<std::string> fix;
    bool compare = false;
    std::string models = "arch,garch,ts-garch,gjr,tarch,narch,aparch,egarch";
    std::string dists = "normal,t,ged,skewed-t,skewed-ged";
    int simulate = 0;
    std::vector<std::string> params;
};

std::map<std::string, double> parse_assignments(const std::vector<std::string>& items, const char* flag) {
    std::map<std::string, double> m;
    for (const auto& it : items) {
        auto pos = it.find('=');
        if (pos == std::string::npos) throw CLI::ValidationError(flag, "expected name=value, got " + it);
        m[it.substr(0, pos)] = std::stod(it.substr(pos + 1));
    }
    return m;
}

GarchSpec garch_spec(const GarchArgs& a, const std::string& model, const std::string& dist) {
    GarchSpec s;
    s.variant = garch_variant_from_string(model);
    s.distribution = distribution_from_string(dist);
    s.arch_order = a.q;
    s.garch_order = a.p;
    s.mean = a.in_mean ? MeanSpec::in_mean : MeanSpec::constant;
    s.vcv = a.vcv == "opg" ? CovarianceMethod::opg : CovarianceMethod::hessian;
    s.fixed = parse_assignments(a.fix, "--fix");
    return s;
}

int cmd_garch(const Common& c, const GarchArgs& a) {
    TimeSeries y;
    if (a.simulate > 0) {
        GarchSpec s = garch_spec(a, a.model, a.dist);
        s.fixed.clear();
        auto sim = simulate_garch(s, parse_assignments(a.params, "--params"), a.simulate, c.seed);
        y = TimeSeries("sim", Period(1900, 1), sim);
    } else {
        if (c.data.empty() || c.var.empty()) throw CLI::ValidationError("--data/--var", "required unless --simulate");
        Store st(c.data);
        y = transformed(st.get(c.var), c.transform);
        if (c.transform == "ldiff100") y = y.renamed("y");
        y = slice(y, range_or(c.sample, y.range()));
    }
    Output out(c, a.compare ? "garch_compare" : "garch");
    if (a.compare) {
        std::vector<GarchSpec> specs;
        for (const auto& m : split(a.models, ','))
            for (const auto& d : split(a.dists, ',')) {
                auto s = garch_spec(a, m, d);
                if (s.mean == MeanSpec::in_mean && s.variant != GarchVariant::arch && s.variant != GarchVariant::garch)
                    continue;
                if (s.variant == GarchVariant::arch) s.garch_order = 0;
                specs.push_back(s);
            }
        auto rows = compare_models(y, specs);
        out.add_text(render_comparison(rows));
        out.add_json("comparison", to_json(rows));
        out.add_csv(comparison_csv(rows));
    } else {
        auto fit = fit_garch(y, garch_spec(a, a.model, a.dist));
        out.add_text(render_garch(fit));
        out.add_json("fit", to_json(fit));
        out.add_csv(coefficients_csv(fit.coefficients()));
        auto fb = frequency_distribution(fit.residuals, 17);
        out.add_text(render_frequency(fb, "uhat"));
        if (out.plots()) {
            const auto& h = fit.conditional_variances;
            std::vector<double> x, e, lo, hi;
            for (size_t i = 0; i < h.size(); ++i) {
                x.push_back(decimal_year(h.period_at(i)));
                e.push_back(fit.residuals[i]);
                hi.push_back(std::sqrt(h[i]));
                lo.push_back(-std::sqrt(h[i]));
            }
            write_band(out.plot_path("conditional_sd.dat"), x, e, lo, hi, "year residual -sd +sd");
        }
    }
    out.flush();
    return 0;
}

int cmd_kalman(const Common& c, int p, int q, double sigma_start) {
    Store st(c.data);
    TimeSeries y = transformed(st.get(c.var), c.transform);
    auto fit = fit_state_space_arma(y, p, q, range_or(c.sample, y.range()), sigma_start);
    Output out(c, "kalman_" + y.name());
    std::string txt = fmt::format("State-space ARMA({},{}) for {}, observations {}-{} (T = {})\n\n", p, q, y.name(),
                                  fit.sample.from.to_string(), fit.sample.to.to_string(), fit.nobs);
    txt += render_optim(fit.optim, fit.names);
    txt += fmt::format("  Akaike criterion {:.4f}  Schwarz criterion {:.4f}  Hannan-Quinn {:.4f}\n\n", fit.aic, fit.bic,
                       fit.hqc);
    auto mat = [](const char* n, const Eigen::MatrixXd& m) {
        std::string s = fmt::format("  {} =\n", n);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            s += "   ";
            for (Eigen::Index j = 0; j < m.cols(); ++j) s += fmt::format("{:>14.6f}", m(i, j));
            s += "\n";
        }
        return s;
    };
    txt += mat("F", fit.model.F) + mat("H", fit.model.H) + mat("Q", fit.model.Q);
    out.add_text(txt);
    std::vector<Coefficient> cs;
    for (Eigen::Index i = 0; i < fit.optim.params.size(); ++i)
        cs.push_back(make_coefficient(fit.names[i], fit.optim.params[i], fit.optim.std_errors[i]));
    Json j = Json::array();
    for (const auto& co : cs) j.push_back(to_json(co));
    out.add_json("coefficients", j);
    out.add_json("loglik", fit.optim.loglik);
    out.add_json("converged", fit.optim.converged);
    out.add_json("function_evaluations", fit.optim.n_function_evals);
    out.add_json("gradient_evaluations", fit.optim.n_gradient_evals);
    out.add_csv(coefficients_csv(cs));
    out.flush();
    return 0;
}

int cmd_evaluate(const Common& c, const std::string& forecast_var, bool seeded) {
    Store st(c.data);
    const auto& actual = st.get(c.var);
    const auto& fc = st.get(forecast_var);
    SampleRange rg = c.sample.empty() ? SampleRange(std::max(actual.start(), fc.start()), std::min(actual.end(), fc.end()))
                                      : SampleRange::parse(c.sample);
    std::optional<double> seed;
    if (seeded) seed = actual.at(rg.from - 1);
    auto ev = evaluate_forecast(slice(actual, rg), slice(fc, rg), seed);
    Output out(c, "evaluate");
    out.add_text(render_evaluation(ev));
    out.add_json("evaluation", to_json(ev));
    out.add_csv(fmt::format("me,mse,rmse,mae,mpe,mape,theil_u,um,ur,ud\n{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},"
                            "{:.10g},{:.10g},{:.10g},{:.10g}\n",
                            ev.me, ev.mse, ev.rmse, ev.mae, ev.mpe, ev.mape, ev.theil_u, ev.um, ev.ur, ev.ud));
    out.flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quarterly time-series econometrics: ARIMA, VAR, unit roots, volatility models"};
    app.require_subcommand(1);

    Common c;
    ArimaArgs aa;
    VarArgs va;
    GarchArgs ga;
    int bins = 0, ma_lags = 1, kp = 1, kq = 1;
    double sigma_start = 1.0, level = 0.05;
    std::string det = "c", varma_vars, varma_orders, yname, xname, forecast_var;
    bool fixed_lag = false, seeded = false;

    auto* corr = app.add_subcommand("correlogram", "ACF, PACF and Ljung-Box Q up to --max-lag");
    add_common(corr, c);
    corr->add_option("--var", c.var)->required();
    corr->add_option("--max-lag", c.max_lag, "maximum lag (default 20)");
    corr->add_option("--transform", c.transform)->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    corr->add_option("--bins", bins, "also print a frequency distribution");

    auto add_arima_opts = [&](CLI::App* cmd) {
        add_common(cmd, c);
        cmd->add_option("--var", c.var)->required();
        cmd->add_option("--forecast", c.forecast, "forecast range, e.g. 2006:2:2013:1");
        cmd->add_option("--p", aa.p)->check(CLI::NonNegativeNumber);
        cmd->add_option("--d", aa.d)->check(CLI::Range(0, 2));
        cmd->add_option("--q", aa.q)->check(CLI::NonNegativeNumber);
        cmd->add_flag("--no-const", aa.no_const);
        cmd->add_option("--conf", aa.conf)->check(CLI::Range(0.5, 0.999));
        cmd->add_option("--threshold", aa.threshold, "flag residuals beyond this many standard errors");
    };
    auto* arima = app.add_subcommand("arima", "exact-ML ARIMA fit, diagnostics, forecasts and evaluation");
    add_arima_opts(arima);
    arima->add_flag("--screen", aa.screen, "fit several orders and tabulate the diagnostic p-values");
    arima->add_option("--orders", aa.orders, "screening orders, e.g. 1,1,0;0,1,1");
    auto* armax = app.add_subcommand("armax", "ARIMA with contemporaneous regressors");
    add_arima_opts(armax);
    armax->add_option("--exog", aa.exog, "regressor series (differenced like the dependent)")->required()->delimiter(',');

    auto* varma = app.add_subcommand("varma", "two-step VARMA with lagged ARIMA residuals");
    add_common(varma, c);
    varma->add_option("--vars", varma_vars, "two level series, e.g. GDPC1Q,GCEC1Q")->required();
    varma->add_option("--orders", varma_orders, "ARIMA orders for the residual series (default 1,1,m;1,1,m with m = --ma-lags)");
    varma->add_option("--ma-lags", ma_lags)->check(CLI::Range(1, 4));

    auto* var = app.add_subcommand("var", "VAR lag selection, fit, IRF, FEVD and forecasts");
    add_common(var, c);
    var->add_option("--vars", va.vars, "comma-separated series")->required();
    var->add_option("--transform", c.transform)->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    var->add_option("--max-lag", c.max_lag, "run lag-order selection up to this order");
    var->add_option("--lag", va.lag)->check(CLI::PositiveNumber);
    var->add_option("--horizon", va.horizon)->check(CLI::PositiveNumber);
    var->add_option("--forecast", c.forecast, "forecast range; its length sets the number of steps");
    var->add_option("--steps", va.steps);
    var->add_option("--conf", va.conf);
    var->add_option("--ordering", va.ordering, "Cholesky ordering, most exogenous first");
    var->add_option("--portmanteau-lags", va.portmanteau_lags);
    var->add_flag("--force-irf", va.force_irf, "emit impulse responses even for an unstable VAR");

    auto* adf = app.add_subcommand("adf", "augmented Dickey-Fuller test");
    add_common(adf, c);
    adf->add_option("--var", c.var)->required();
    adf->add_option("--transform", c.transform)->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    adf->add_option("--max-lag", c.max_lag);
    adf->add_option("--det", det, "nc, c or ct");
    adf->add_flag("--fixed", fixed_lag, "use exactly --max-lag lags");

    auto* coint = app.add_subcommand("coint", "Engle-Granger cointegration test");
    add_common(coint, c);
    coint->add_option("--y", yname)->required();
    coint->add_option("--x", xname)->required();
    coint->add_option("--transform", c.transform)->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    coint->add_option("--max-lag", c.max_lag);
    coint->add_option("--level", level);

    auto* garch = app.add_subcommand("garch", "volatility model fit or comparison");
    garch->add_option("--data", c.data)->check(CLI::ExistingFile);
    garch->add_option("--var", c.var);
    garch->add_option("--sample", c.sample);
    garch->add_option("--format", c.format)->check(CLI::IsMember({"text", "json", "csv"}));
    garch->add_option("--out", c.out);
    garch->add_option("--transform", c.transform, "default ldiff100")->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    garch->add_option("--model", ga.model);
    garch->add_option("--dist", ga.dist);
    garch->add_option("--arch-order", ga.q)->check(CLI::PositiveNumber);
    garch->add_option("--garch-order", ga.p)->check(CLI::NonNegativeNumber);
    garch->add_flag("--in-mean", ga.in_mean);
    garch->add_option("--vcv", ga.vcv)->check(CLI::IsMember({"hessian", "opg"}));
    garch->add_option("--fix", ga.fix, "hold a parameter fixed, name=value")->delimiter(',');
    garch->add_flag("--compare", ga.compare, "fit every --models x --dists combination");
    garch->add_option("--models", ga.models);
    garch->add_option("--dists", ga.dists);
    garch->add_option("--simulate", ga.simulate, "simulate this many observations from --params and fit them");
    garch->add_option("--params", ga.params, "true parameters for --simulate, name=value")->delimiter(',');
    garch->add_option("--seed", c.seed);

    auto* kalman = app.add_subcommand("kalman", "state-space ARMA by direct Kalman-filter ML");
    add_common(kalman, c);
    kalman->add_option("--var", c.var)->required();
    kalman->add_option("--transform", c.transform, "default diff")->check(CLI::IsMember({"level", "diff", "ldiff100"}));
    kalman->add_option("--p", kp)->check(CLI::NonNegativeNumber);
    kalman->add_option("--q", kq)->check(CLI::NonNegativeNumber);
    kalman->add_option("--sigma-start", sigma_start)->check(CLI::PositiveNumber);

    auto* evaluate = app.add_subcommand("evaluate", "forecast accuracy of one series against another");
    add_common(evaluate, c);
    evaluate->add_option("--var", c.var, "actual values")->required();
    evaluate->add_option("--forecast-var", forecast_var, "forecast values")->required();
    evaluate->add_flag("--seeded", seeded, "seed Theil's U with the last pre-sample actual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*garch && garch->count("--transform") == 0) c.transform = "ldiff100";
    if (*kalman && kalman->count("--transform") == 0) c.transform = "diff";
    if (*corr && corr->count("--max-lag") == 0) c.max_lag = 20;

    try {
        if (*corr) return cmd_correlogram(c, bins);
        if (*arima) return cmd_arima(c, aa, false);
        if (*armax) return cmd_arima(c, aa, true);
        if (*varma && varma_orders.empty()) varma_orders = fmt::format("1,1,{0};1,1,{0}", ma_lags);
        if (*varma) return cmd_varma(c, varma_vars, varma_orders, ma_lags);
        if (*var) return cmd_var(c, va);
        if (*adf) return cmd_adf(c, det, fixed_lag);
        if (*coint) return cmd_coint(c, yname, xname, level);
        if (*garch) return cmd_garch(c, ga);
        if (*kalman) return cmd_kalman(c, kp, kq, sigma_start);
        if (*evaluate) return cmd_evaluate(c, forecast_var, seeded);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
