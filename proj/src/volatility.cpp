#include "tsecon/volatility.hpp"

#include "tsecon/errors.hpp"
#include "tsecon/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

namespace tsecon {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string indexed(const std::string& base, int i, int order) {
    return order == 1 ? base : fmt::format("{}_{}", base, i + 1);
}

bool has_gamma(GarchVariant v) {
    return v == GarchVariant::gjr || v == GarchVariant::tarch || v == GarchVariant::aparch ||
           v == GarchVariant::egarch;
}

bool has_delta(GarchVariant v) { return v == GarchVariant::narch || v == GarchVariant::aparch; }

int garch_lags(const GarchSpec& s) { return s.variant == GarchVariant::arch ? 0 : s.garch_order; }

struct Natural {
    double mu = 0;
    double omega = 0;
    std::vector<double> alpha, gamma, beta;
    double delta = 2;
    std::vector<double> shape;
};

Natural unpack(const GarchSpec& spec, const std::map<std::string, double>& m) {
    auto get = [&](const std::string& n) {
        auto it = m.find(n);
        if (it == m.end()) throw DomainError("missing parameter " + n);
        return it->second;
    };
    Natural p;
    p.mu = get(spec.mean == MeanSpec::constant ? "const" : "theta");
    p.omega = get("omega");
    int q = spec.arch_order, r = garch_lags(spec);
    for (int i = 0; i < q; ++i) p.alpha.push_back(get(indexed("alpha", i, q)));
    if (has_gamma(spec.variant))
        for (int i = 0; i < q; ++i) p.gamma.push_back(get(indexed("gamma", i, q)));
    for (int j = 0; j < r; ++j) p.beta.push_back(get(indexed("beta", j, r)));
    if (has_delta(spec.variant)) p.delta = get("delta");
    for (const auto& n : shape_names(spec.distribution)) p.shape.push_back(get(n));
    return p;
}

// Variance recursion. Fills h and e; false when the parameters leave the
// feasible region or the recursion overflows.
// `observe(t, h_t)` supplies y_t once h_t is known (data, or a simulated draw).
template <class Observe>
bool recurse_with(int T, double h0, const GarchSpec& spec, const Natural& p, Observe observe, std::vector<double>& h,
                  std::vector<double>& e) {
    const auto v = spec.variant;
    const int q = spec.arch_order, r = garch_lags(spec);
    const bool in_mean = spec.mean == MeanSpec::in_mean;
    h.assign(T, nan);
    e.assign(T, nan);

    if (!(p.omega > 0) && v != GarchVariant::egarch) return false;
    if (has_delta(v) && !(p.delta > 0)) return false;
    if (v == GarchVariant::aparch)
        for (double g : p.gamma)
            if (!(std::fabs(g) < 1)) return false;

    if (!(h0 > 0) || !std::isfinite(h0)) return false;

    double ez = 0;
    if (v == GarchVariant::egarch) {
        try {
            ez = expected_abs(spec.distribution, p.shape);
        } catch (...) {
            return false;
        }
    }

    auto to_s = [&](double hv) {
        switch (v) {
        case GarchVariant::ts_garch:
        case GarchVariant::tarch: return std::sqrt(hv);
        case GarchVariant::narch: return std::pow(hv, p.delta);
        case GarchVariant::aparch: return std::pow(hv, p.delta / 2);
        case GarchVariant::egarch: return std::log(hv);
        default: return hv;
        }
    };
    auto to_h = [&](double s) {
        switch (v) {
        case GarchVariant::ts_garch:
        case GarchVariant::tarch: return s * s;
        case GarchVariant::narch: return std::pow(s, 1.0 / p.delta);
        case GarchVariant::aparch: return std::pow(s, 2.0 / p.delta);
        case GarchVariant::egarch: return std::exp(s);
        default: return s;
        }
    };
    // Contribution of lag-i shock e (with variance hv).
    auto shock = [&](int i, double et, double hv) {
        double a = p.alpha[i];
        switch (v) {
        case GarchVariant::arch:
        case GarchVariant::garch: return a * et * et;
        case GarchVariant::gjr: return (a + (et < 0 ? p.gamma[i] : 0.0)) * et * et;
        case GarchVariant::ts_garch: return a * std::fabs(et);
        case GarchVariant::tarch: return a * std::fabs(et) + p.gamma[i] * std::max(-et, 0.0);
        case GarchVariant::narch: return a * std::pow(std::fabs(et), 2 * p.delta);
        case GarchVariant::aparch: return a * std::pow(std::fabs(et) - p.gamma[i] * et, p.delta);
        case GarchVariant::egarch: {
            double z = et / std::sqrt(hv);
            return a * (std::fabs(z) - ez) + p.gamma[i] * z;
        }
        }
        return 0.0;
    };
    // Pre-sample shocks: |e| = sqrt(h0), sign-dependent parts at their symmetric average.
    auto presample_shock = [&](int i) {
        double a = p.alpha[i], sd = std::sqrt(h0);
        switch (v) {
        case GarchVariant::arch:
        case GarchVariant::garch: return a * h0;
        case GarchVariant::gjr: return (a + 0.5 * p.gamma[i]) * h0;
        case GarchVariant::ts_garch: return a * sd;
        case GarchVariant::tarch: return (a + 0.5 * p.gamma[i]) * sd;
        case GarchVariant::narch: return a * std::pow(h0, p.delta);
        case GarchVariant::aparch:
            return a * 0.5 * (std::pow(1 - p.gamma[i], p.delta) + std::pow(1 + p.gamma[i], p.delta)) *
                   std::pow(h0, p.delta / 2);
        case GarchVariant::egarch: return 0.0;
        }
        return 0.0;
    };

    const double s0 = to_s(h0);
    std::vector<double> s(T);
    for (int t = 0; t < T; ++t) {
        double st = p.omega;
        for (int i = 0; i < q; ++i) {
            int lag = t - i - 1;
            st += lag >= 0 ? shock(i, e[lag], h[lag]) : presample_shock(i);
        }
        for (int j = 0; j < r; ++j) {
            int lag = t - j - 1;
            st += p.beta[j] * (lag >= 0 ? s[lag] : s0);
        }
        if (v != GarchVariant::egarch && !(st > 0)) return false;
        double ht = to_h(st);
        if (!(ht > 0) || !std::isfinite(ht)) return false;
        s[t] = st;
        h[t] = ht;
        e[t] = observe(t, ht) - (in_mean ? p.mu * ht : p.mu);
    }
    return true;
}

// h0: sample variance of y for in-mean models, else the mean squared
// residual at the current constant.
bool recurse(std::span<const double> y, const GarchSpec& spec, const Natural& p, std::vector<double>& h,
             std::vector<double>& e) {
    const int T = static_cast<int>(y.size());
    double h0;
    if (spec.mean == MeanSpec::in_mean) {
        h0 = stats::variance(y);
    } else {
        double ss = 0;
        for (double yt : y) ss += (yt - p.mu) * (yt - p.mu);
        h0 = ss / T;
    }
    return recurse_with(T, h0, spec, p, [&](int t, double) { return y[t]; }, h, e);
}

Eigen::VectorXd per_obs_natural(std::span<const double> y, const GarchSpec& spec, const Natural& p) {
    const int T = static_cast<int>(y.size());
    Eigen::VectorXd ll = Eigen::VectorXd::Constant(T, nan);
    try {
        check_shape(spec.distribution, p.shape);
    } catch (const DomainError&) {
        return ll;
    }
    std::vector<double> h, e;
    if (!recurse(y, spec, p, h, e)) return ll;
    auto conv = spec.effective_convention();
    for (int t = 0; t < T; ++t) {
        double z = e[t] / std::sqrt(h[t]);
        ll[t] = loglik_contribution(spec.distribution, z, h[t], p.shape, conv);
    }
    return ll;
}

// Transform for one parameter between natural and optimizer coordinates.
struct Transform {
    enum Kind { identity, log, tanh_unit, bounded } kind = identity;
    double lo = 0, hi = 0;

    [[nodiscard]] double to_free(double x) const {
        switch (kind) {
        case log: return std::log(x);
        case tanh_unit: return std::atanh(x);
        case bounded: return std::atanh(2 * (x - lo) / (hi - lo) - 1);
        default: return x;
        }
    }
    [[nodiscard]] double to_natural(double u) const {
        switch (kind) {
        case log: return std::exp(u);
        case tanh_unit: return std::tanh(u);
        case bounded: return lo + (hi - lo) * (1 + std::tanh(u)) / 2;
        default: return u;
        }
    }
};

Transform transform_for(const GarchSpec& spec, const std::string& name) {
    const auto v = spec.variant;
    const bool eg = v == GarchVariant::egarch;
    auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
    if (name == "const" || name == "theta") return {};
    if (name == "omega" || starts("alpha") || starts("beta")) return eg ? Transform{} : Transform{Transform::log};
    if (starts("gamma")) return v == GarchVariant::aparch ? Transform{Transform::tanh_unit} : Transform{};
    if (name == "delta" || name == "skew") return {Transform::log};
    if (name == "nu") return {Transform::bounded, 2.01, 200.0};
    if (name == "shape") return {Transform::bounded, 0.2, 20.0};
    return {};
}

std::map<std::string, double> starting_values(std::span<const double> y, const GarchSpec& spec, bool alternative) {
    std::map<std::string, double> m;
    double mean = stats::mean(y), var = stats::variance(y);
    const auto v = spec.variant;
    const int q = spec.arch_order, r = garch_lags(spec);
    double a = alternative ? 0.05 : 0.1, b = alternative ? 0.9 : 0.8;
    double delta = v == GarchVariant::narch ? 0.5 : 2.0;
    if (spec.mean == MeanSpec::constant)
        m["const"] = mean;
    else
        m["theta"] = mean / var;
    switch (v) {
    case GarchVariant::ts_garch:
    case GarchVariant::tarch: m["omega"] = 0.1 * std::sqrt(var); break;
    case GarchVariant::narch: m["omega"] = 0.1 * std::pow(var, delta); break;
    case GarchVariant::aparch: m["omega"] = 0.1 * std::pow(var, delta / 2); break;
    case GarchVariant::egarch: m["omega"] = (1 - (r > 0 ? b : 0.0)) * std::log(var); break;
    default: m["omega"] = 0.1 * var;
    }
    for (int i = 0; i < q; ++i) m[indexed("alpha", i, q)] = a / q;
    if (has_gamma(v))
        for (int i = 0; i < q; ++i) m[indexed("gamma", i, q)] = 0.0;
    for (int j = 0; j < r; ++j) m[indexed("beta", j, r)] = b / r;
    if (has_delta(v)) m["delta"] = delta;
    auto names = shape_names(spec.distribution);
    auto vals = default_shape(spec.distribution);
    for (size_t i = 0; i < names.size(); ++i) m[names[i]] = vals[i];
    for (const auto& [n, x] : spec.fixed) m[n] = x;
    return m;
}

struct Problem {
    std::span<const double> y;
    GarchSpec spec;
    std::vector<std::string> names;
    std::vector<int> free;  ///< indices into names
    std::map<std::string, double> base;
    std::vector<Transform> tr;

    std::map<std::string, double> natural_from(const Eigen::VectorXd& x, bool transformed) const {
        auto m = base;
        for (size_t i = 0; i < free.size(); ++i) {
            const auto& n = names[free[i]];
            m[n] = transformed ? tr[i].to_natural(x[i]) : x[i];
        }
        return m;
    }
    Eigen::VectorXd per_obs(const Eigen::VectorXd& x, bool transformed) const {
        return per_obs_natural(y, spec, unpack(spec, natural_from(x, transformed)));
    }
    Objective objective(bool transformed) const {
        Objective o;
        o.dimension = static_cast<int>(free.size());
        o.loglik = [this, transformed](const Eigen::VectorXd& x) {
            double s = per_obs(x, transformed).sum();
            return std::isfinite(s) ? s : nan;
        };
        o.per_obs = [this, transformed](const Eigen::VectorXd& x) { return per_obs(x, transformed); };
        return o;
    }
};

} // namespace

std::string to_string(GarchVariant v) {
    switch (v) {
    case GarchVariant::arch: return "ARCH";
    case GarchVariant::garch: return "GARCH";
    case GarchVariant::ts_garch: return "TS-GARCH";
    case GarchVariant::gjr: return "GJR";
    case GarchVariant::tarch: return "TARCH";
    case GarchVariant::narch: return "NARCH";
    case GarchVariant::aparch: return "APARCH";
    case GarchVariant::egarch: return "EGARCH";
    }
    return "?";
}

GarchVariant garch_variant_from_string(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (c != '-' && c != '_') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "arch") return GarchVariant::arch;
    if (s == "garch") return GarchVariant::garch;
    if (s == "tsgarch" || s == "taylorschwert") return GarchVariant::ts_garch;
    if (s == "gjr") return GarchVariant::gjr;
    if (s == "tarch" || s == "zakoian") return GarchVariant::tarch;
    if (s == "narch") return GarchVariant::narch;
    if (s == "aparch") return GarchVariant::aparch;
    if (s == "egarch") return GarchVariant::egarch;
    throw DomainError("unknown volatility model: " + s0);
}

LikelihoodConvention GarchSpec::effective_convention() const {
    if (convention) return *convention;
    return mean == MeanSpec::in_mean ? LikelihoodConvention::kernel_only : LikelihoodConvention::full;
}

std::string GarchSpec::label() const {
    std::string base = to_string(variant);
    if (mean == MeanSpec::in_mean) base += "-M";
    if (variant == GarchVariant::arch) return fmt::format("{}({})", base, arch_order);
    return fmt::format("{}({},{})", base, arch_order, garch_order);
}

std::vector<std::string> GarchSpec::parameter_names() const {
    std::vector<std::string> n;
    const int q = arch_order, r = garch_lags(*this);
    n.push_back(mean == MeanSpec::constant ? "const" : "theta");
    n.push_back("omega");
    for (int i = 0; i < q; ++i) n.push_back(indexed("alpha", i, q));
    if (has_gamma(variant))
        for (int i = 0; i < q; ++i) n.push_back(indexed("gamma", i, q));
    for (int j = 0; j < r; ++j) n.push_back(indexed("beta", j, r));
    if (has_delta(variant)) n.push_back("delta");
    for (auto& s : shape_names(distribution)) n.push_back(s);
    return n;
}

void GarchSpec::validate() const {
    if (arch_order < 1) throw DomainError("arch order must be at least 1");
    if (variant != GarchVariant::arch && garch_order < 0) throw DomainError("garch order must be nonnegative");
    if (mean == MeanSpec::in_mean && variant != GarchVariant::arch && variant != GarchVariant::garch)
        throw DomainError("in-mean is only available for ARCH and GARCH");
    if (effective_convention() == LikelihoodConvention::kernel_only && distribution != Distribution::normal)
        throw DomainError("the constant-free kernel is defined for normal innovations only");
    auto names = parameter_names();
    for (const auto& [n, x] : fixed) {
        if (std::find(names.begin(), names.end(), n) == names.end())
            throw DomainError("cannot fix unknown parameter " + n + " of " + label());
    }
}

std::vector<Coefficient> GarchFit::coefficients() const {
    std::vector<Coefficient> all = mean_coefficients;
    all.insert(all.end(), variance_coefficients.begin(), variance_coefficients.end());
    all.insert(all.end(), shape_coefficients.begin(), shape_coefficients.end());
    return all;
}

const Coefficient& GarchFit::coefficient(const std::string& name) const {
    for (const auto* block : {&mean_coefficients, &variance_coefficients, &shape_coefficients})
        for (const auto& c : *block)
            if (c.name == name) return c;
    throw DomainError("no coefficient named " + name);
}

bool GarchFit::all_significant(double level) const {
    for (const auto& c : coefficients()) {
        if (spec.fixed.count(c.name)) continue;
        if (!(c.p_value < level)) return false;
    }
    return true;
}

Eigen::VectorXd garch_loglik_per_obs(std::span<const double> y, const GarchSpec& spec,
                                     const std::map<std::string, double>& params) {
    spec.validate();
    return per_obs_natural(y, spec, unpack(spec, params));
}

std::vector<double> garch_variances(std::span<const double> y, const GarchSpec& spec,
                                    const std::map<std::string, double>& params) {
    spec.validate();
    std::vector<double> h, e;
    if (!recurse(y, spec, unpack(spec, params), h, e)) throw DomainError("parameters outside the feasible region");
    return h;
}

GarchFit fit_garch(const TimeSeries& series, const GarchSpec& spec) { return fit_garch(series, spec, series.range()); }

GarchFit fit_garch(const TimeSeries& series, const GarchSpec& spec_in, const SampleRange& range) {
    GarchSpec spec = spec_in;
    if (spec.variant == GarchVariant::arch) spec.garch_order = 0;
    spec.validate();
    TimeSeries data = slice(series, range);
    auto y = data.values();
    const int T = static_cast<int>(y.size());
    for (double v : y)
        if (!std::isfinite(v)) throw DomainError("missing values in the estimation sample of " + series.name());

    Problem pb{y, spec, spec.parameter_names(), {}, {}, {}};
    if (T < 50) throw DomainError(fmt::format("{} needs at least 50 observations, got {}", spec.label(), T));
    for (size_t i = 0; i < pb.names.size(); ++i) {
        if (spec.fixed.count(pb.names[i])) continue;
        pb.free.push_back(static_cast<int>(i));
        pb.tr.push_back(transform_for(spec, pb.names[i]));
    }
    const int n = static_cast<int>(pb.free.size());

    std::ostringstream trace;
    OptimOptions opts;
    opts.covariance = CovarianceMethod::none;
    opts.trace = &trace;
    OptimResult best;
    for (bool alternative : {false, true}) {
        pb.base = starting_values(y, spec, alternative);
        Eigen::VectorXd x0(n);
        for (int i = 0; i < n; ++i) x0[i] = pb.tr[i].to_free(pb.base[pb.names[pb.free[i]]]);
        OptimResult r;
        try {
            r = maximize(pb.objective(true), x0, opts);
        } catch (const DomainError&) {
            continue;
        }
        if (!best.params.size() || (r.converged && !best.converged) ||
            (r.converged == best.converged && r.loglik > best.loglik))
            best = r;
        if (best.converged) break;
    }
    if (!best.params.size() || !best.converged)
        throw FitError(fmt::format("{} ({}) did not converge{}", spec.label(), to_string(spec.distribution),
                                   best.params.size() ? ": " + best.message : ""),
                       trace.str());

    auto nat = pb.natural_from(best.params, true);
    Eigen::VectorXd xn(n);
    for (int i = 0; i < n; ++i) xn[i] = nat[pb.names[pb.free[i]]];

    GarchFit fit;
    fit.spec = spec;
    fit.dependent = series.name();
    fit.sample = data.range();
    fit.nobs = T;
    fit.k = n;
    fit.loglik = pb.objective(false).loglik(xn);
    fit.aic = -2 * fit.loglik + 2.0 * n;
    fit.bic = -2 * fit.loglik + n * std::log(static_cast<double>(T));
    fit.hqc = -2 * fit.loglik + 2.0 * n * std::log(std::log(static_cast<double>(T)));
    fit.converged = true;
    fit.iterations = best.iterations;
    fit.n_function_evals = best.n_function_evals;
    fit.n_gradient_evals = best.n_gradient_evals;
    fit.gradient_norm = best.gradient_norm;

    fit.covariance = Eigen::MatrixXd::Constant(n, n, nan);
    try {
        Objective nobj = pb.objective(false);
        if (spec.vcv == CovarianceMethod::opg)
            fit.covariance = covariance_opg(nobj, xn);
        else if (spec.vcv == CovarianceMethod::hessian)
            fit.covariance = covariance_hessian(nobj, xn);
    } catch (const NumericalError&) {
    }

    const int n_mean = 1;
    const int n_shape = shape_count(spec.distribution);
    const int n_total = static_cast<int>(pb.names.size());
    for (int i = 0, fi = 0; i < n_total; ++i) {
        const auto& name = pb.names[i];
        double se = nan;
        if (!spec.fixed.count(name)) {
            se = std::sqrt(fit.covariance(fi, fi));
            ++fi;
        }
        auto c = make_coefficient(name, nat[name], se);
        if (i < n_mean)
            fit.mean_coefficients.push_back(c);
        else if (i >= n_total - n_shape)
            fit.shape_coefficients.push_back(c);
        else
            fit.variance_coefficients.push_back(c);
    }

    std::vector<double> h, e;
    Natural p = unpack(spec, nat);
    recurse(y, spec, p, h, e);
    std::vector<double> z(T);
    for (int t = 0; t < T; ++t) z[t] = e[t] / std::sqrt(h[t]);
    fit.residuals = TimeSeries("uhat", data.start(), e);
    fit.conditional_variances = TimeSeries("h", data.start(), h);
    fit.standardized_residuals = TimeSeries("z", data.start(), z);
    fit.unconditional_variance = unconditional_variance(fit);

    if (spec.variant == GarchVariant::gjr) {
        // (a + g 1[e<0]) e^2 = a' (|e| - g' e)^2 with a' (1 - g')^2 = a, a' (1 + g')^2 = a + g
        const int q = spec.arch_order;
        auto pos = [&](const std::string& nm) {
            int fi = 0;
            for (int idx : pb.free) {
                if (pb.names[idx] == nm) return fi;
                ++fi;
            }
            return -1;
        };
        fit.alt_parametrization.push_back(fit.coefficient("omega"));
        std::vector<Coefficient> alphas, gammas;
        for (int i = 0; i < q; ++i) {
            std::string an = indexed("alpha", i, q), gn = indexed("gamma", i, q);
            double a = nat[an], g = nat[gn];
            auto map = [](double a0, double g0) {
                double rr = std::sqrt((a0 + g0) / a0);
                double gp = (rr - 1) / (rr + 1);
                return std::pair{a0 / ((1 - gp) * (1 - gp)), gp};
            };
            auto [ap, gp] = map(a, g);
            int ia = pos(an), ig = pos(gn);
            double sa = nan, sg = nan;
            if (ia >= 0 && ig >= 0) {
                Eigen::Matrix2d J;
                double ha = 1e-6 * std::max(std::fabs(a), 1e-3), hg = 1e-6 * std::max(std::fabs(g), 1e-3);
                auto [a1, g1] = map(a + ha, g);
                auto [a2, g2] = map(a - ha, g);
                auto [a3, g3] = map(a, g + hg);
                auto [a4, g4] = map(a, g - hg);
                J << (a1 - a2) / (2 * ha), (a3 - a4) / (2 * hg), (g1 - g2) / (2 * ha), (g3 - g4) / (2 * hg);
                Eigen::Matrix2d S;
                S << fit.covariance(ia, ia), fit.covariance(ia, ig), fit.covariance(ig, ia), fit.covariance(ig, ig);
                Eigen::Matrix2d V = J * S * J.transpose();
                sa = std::sqrt(V(0, 0));
                sg = std::sqrt(V(1, 1));
            }
            alphas.push_back(make_coefficient(an, ap, sa));
            gammas.push_back(make_coefficient(gn, gp, sg));
        }
        for (auto& c : alphas) fit.alt_parametrization.push_back(c);
        for (auto& c : gammas) fit.alt_parametrization.push_back(c);
        for (const auto& c : fit.variance_coefficients)
            if (c.name.rfind("beta", 0) == 0) fit.alt_parametrization.push_back(c);
    }
    return fit;
}

std::optional<double> unconditional_variance(GarchVariant variant, double omega, const std::vector<double>& alpha,
                                             const std::vector<double>& beta) {
    if (variant != GarchVariant::arch && variant != GarchVariant::garch) return std::nullopt;
    double persistence = 0;
    for (double a : alpha) persistence += a;
    if (variant == GarchVariant::garch)
        for (double b : beta) persistence += b;
    if (!(persistence < 1)) return std::nullopt;
    return omega / (1 - persistence);
}

std::optional<double> unconditional_variance(const GarchFit& fit) {
    std::vector<double> a, b;
    double omega = 0;
    for (const auto& c : fit.variance_coefficients) {
        if (c.name == "omega") omega = c.value;
        if (c.name.rfind("alpha", 0) == 0) a.push_back(c.value);
        if (c.name.rfind("beta", 0) == 0) b.push_back(c.value);
    }
    return unconditional_variance(fit.spec.variant, omega, a, b);
}

std::vector<double> simulate_garch(const GarchSpec& spec_in, const std::map<std::string, double>& params, int n,
                                   std::uint64_t seed, int burn_in) {
    GarchSpec spec = spec_in;
    if (spec.variant == GarchVariant::arch) spec.garch_order = 0;
    spec.validate();
    if (n < 1 || burn_in < 0) throw DomainError("simulation length must be positive");
    Natural p = unpack(spec, params);
    check_shape(spec.distribution, p.shape);
    std::mt19937_64 rng(seed);
    const int total = n + burn_in;
    // Any positive start works; the burn-in discards its influence.
    double h0 = std::fabs(p.omega) > 0 && spec.variant != GarchVariant::egarch ? p.omega : 1.0;
    if (auto u = unconditional_variance(spec.variant, p.omega, p.alpha, p.beta)) h0 = *u;
    std::vector<double> h, e;
    auto observe = [&](int, double ht) {
        double z = draw(spec.distribution, p.shape, rng);
        return (spec.mean == MeanSpec::constant ? p.mu : p.mu * ht) + std::sqrt(ht) * z;
    };
    if (!recurse_with(total, h0, spec, p, observe, h, e)) throw DomainError("simulation left the feasible region");
    std::vector<double> y(n);
    for (int t = 0; t < n; ++t) {
        int s = t + burn_in;
        y[t] = e[s] + (spec.mean == MeanSpec::constant ? p.mu : p.mu * h[s]);
    }
    return y;
}

std::vector<ComparisonRow> compare_models(const TimeSeries& series, const std::vector<GarchSpec>& specs,
                                          const std::optional<SampleRange>& range) {
    if (specs.size() < 2) throw DomainError("model comparison needs at least two specifications");
    SampleRange rg = range.value_or(series.range());
    std::vector<std::future<ComparisonRow>> jobs;
    for (const auto& s : specs) {
        jobs.push_back(std::async(std::launch::async, [&series, s, rg] {
            ComparisonRow row;
            row.spec = s;
            try {
                GarchFit f = fit_garch(series, s, rg);
                row.converged = true;
                row.loglik = f.loglik;
                row.aic = f.aic;
                row.bic = f.bic;
                row.hqc = f.hqc;
                row.all_significant = f.all_significant();
            } catch (const Error& ex) {
                row.error = ex.what();
            }
            return row;
        }));
    }
    std::vector<ComparisonRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    auto mark = [&](double ComparisonRow::*field, bool ComparisonRow::*flag) {
        int best = -1;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            if (rows[i].converged && (best < 0 || rows[i].*field < rows[best].*field)) best = i;
        if (best >= 0) rows[best].*flag = true;
    };
    mark(&ComparisonRow::aic, &ComparisonRow::best_aic);
    mark(&ComparisonRow::bic, &ComparisonRow::best_bic);
    mark(&ComparisonRow::hqc, &ComparisonRow::best_hqc);
    return rows;
}

} // namespace tsecon
