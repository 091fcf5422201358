#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tsecon/errors.hpp"
#include "tsecon/volatility.hpp"

using namespace tsecon;
using doctest::Approx;

namespace {

using Params = std::map<std::string, double>;

TimeSeries as_series(const std::vector<double>& v) { return {"y", Period(1800, 1), v}; }

GarchSpec spec_of(GarchVariant v, Distribution d = Distribution::normal) {
    GarchSpec s;
    s.variant = v;
    s.distribution = d;
    return s;
}

// Simulated GJR data with a clear asymmetry, shared by the nesting checks.
const TimeSeries& asymmetric_sample() {
    static const TimeSeries y = as_series(simulate_garch(
        spec_of(GarchVariant::gjr), {{"const", 0.5}, {"omega", 0.1}, {"alpha", 0.1}, {"gamma", 0.1}, {"beta", 0.8}},
        1000, 7));
    return y;
}

void check_same_fit(const GarchFit& a, const GarchFit& b) {
    CHECK(a.loglik == Approx(b.loglik).epsilon(1e-7));
    for (const char* n : {"const", "omega", "alpha", "beta"})
        CHECK(a.coefficient(n).value == Approx(b.coefficient(n).value).epsilon(1e-3));
}

} // namespace

TEST_SUITE("volatility") {

TEST_CASE("unconditional variance identities") {
    auto arch = unconditional_variance(GarchVariant::arch, 0.632159, {0.36451}, {});
    REQUIRE(arch.has_value());
    // tolerances are the propagated rounding of the six-digit inputs
    CHECK(std::fabs(*arch - 0.994759) < 1e-5);
    auto garch = unconditional_variance(GarchVariant::garch, 0.0385705, {0.255331}, {0.734709});
    REQUIRE(garch.has_value());
    CHECK(std::fabs(*garch - 3.87253) < 4e-4);
    CHECK(*garch == Approx(0.0385705 / (1 - 0.255331 - 0.734709)).epsilon(1e-14));
    CHECK_FALSE(unconditional_variance(GarchVariant::garch, 0.1, {0.3}, {0.7}).has_value());
    CHECK_FALSE(unconditional_variance(GarchVariant::garch, 0.1, {0.3}, {0.8}).has_value());
    CHECK_FALSE(unconditional_variance(GarchVariant::egarch, 0.1, {0.3}, {0.5}).has_value());
}

TEST_CASE("loglik contributions") {
    std::vector<double> none;
    CHECK(loglik_contribution(Distribution::normal, 0.0, 1.0, none) == Approx(-0.5 * std::log(2 * M_PI)));
    CHECK(loglik_contribution(Distribution::normal, 0.0, 1.0, none, LikelihoodConvention::kernel_only) == 0.0);
    std::vector<double> two{2.0};
    for (double z = -4; z <= 4; z += 0.25)
        for (double h : {0.1, 1.0, 7.5})
            CHECK(std::fabs(loglik_contribution(Distribution::ged, z, h, two) -
                            loglik_contribution(Distribution::normal, z, h, none)) < 1e-10);
    std::vector<double> bad_t{1.5};
    CHECK_THROWS_AS(loglik_contribution(Distribution::student_t, 0.0, 1.0, bad_t), DomainError);
    std::vector<double> bad_ged{-1.0};
    CHECK_THROWS_AS(loglik_contribution(Distribution::ged, 0.0, 1.0, bad_ged), DomainError);
}

TEST_CASE("standardized densities integrate to one with unit variance") {
    using boost::math::quadrature::gauss_kronrod;
    const std::vector<std::pair<Distribution, std::vector<double>>> laws{
        {Distribution::normal, {}},         {Distribution::student_t, {5.0}}, {Distribution::ged, {1.3}},
        {Distribution::skew_t, {6.0, 1.4}}, {Distribution::skew_ged, {1.5, 0.8}}};
    for (const auto& [d, shape] : laws) {
        auto f = [&](double z) { return std::exp(log_density(d, z, shape)); };
        double mass = gauss_kronrod<double, 61>::integrate(f, -std::numeric_limits<double>::infinity(),
                                                           std::numeric_limits<double>::infinity(), 15, 1e-12);
        double mean = gauss_kronrod<double, 61>::integrate([&](double z) { return z * f(z); },
                                                           -std::numeric_limits<double>::infinity(),
                                                           std::numeric_limits<double>::infinity(), 15, 1e-12);
        double var = gauss_kronrod<double, 61>::integrate([&](double z) { return z * z * f(z); },
                                                          -std::numeric_limits<double>::infinity(),
                                                          std::numeric_limits<double>::infinity(), 15, 1e-12);
        CHECK(mass == Approx(1.0).epsilon(1e-6));
        CHECK(std::fabs(mean) < 1e-6);
        CHECK(var == Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("E|z| closed forms") {
    std::vector<double> none;
    CHECK(expected_abs(Distribution::normal, none) == Approx(std::sqrt(2 / M_PI)).epsilon(1e-12));
    for (double nu : {2.5, 3.0, 5.0, 30.0}) {
        std::vector<double> s{nu};
        CHECK(expected_abs(Distribution::student_t, s) == Approx(expected_abs_numeric(Distribution::student_t, s)).epsilon(1e-8));
    }
    for (double p : {0.8, 1.0, 1.5, 2.0, 3.0}) {
        std::vector<double> s{p};
        CHECK(expected_abs(Distribution::ged, s) == Approx(expected_abs_numeric(Distribution::ged, s)).epsilon(1e-8));
    }
    std::vector<double> one{1.0};
    CHECK(expected_abs(Distribution::ged, one) == Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("nesting: restricted variants reproduce GARCH") {
    const auto& y = asymmetric_sample();
    auto garch = fit_garch(y, spec_of(GarchVariant::garch));
    auto gjr = spec_of(GarchVariant::gjr);
    gjr.fixed = {{"gamma", 0.0}};
    check_same_fit(fit_garch(y, gjr), garch);
    auto ap = spec_of(GarchVariant::aparch);
    ap.fixed = {{"gamma", 0.0}, {"delta", 2.0}};
    check_same_fit(fit_garch(y, ap), garch);
    auto ged = spec_of(GarchVariant::garch, Distribution::ged);
    ged.fixed = {{"shape", 2.0}};
    auto g = fit_garch(y, ged);
    check_same_fit(g, garch);
    CHECK(g.k == garch.k);
}

TEST_CASE("nesting: TARCH with gamma 0 is TS-GARCH") {
    const auto& y = asymmetric_sample();
    auto ts = fit_garch(y, spec_of(GarchVariant::ts_garch));
    auto ta = spec_of(GarchVariant::tarch);
    ta.fixed = {{"gamma", 0.0}};
    check_same_fit(fit_garch(y, ta), ts);
}

TEST_CASE("GJR picks up the simulated asymmetry") {
    auto f = fit_garch(asymmetric_sample(), spec_of(GarchVariant::gjr));
    CHECK(f.converged);
    const auto& gamma = f.coefficient("gamma");
    CHECK(gamma.value > 0.0);
    CHECK(std::fabs(gamma.value - 0.1) < 3 * gamma.std_error);
    CHECK_FALSE(f.alt_parametrization.empty());
    auto plain = fit_garch(asymmetric_sample(), spec_of(GarchVariant::garch));
    CHECK(f.loglik >= plain.loglik - 1e-6);
}

TEST_CASE("parameter recovery over 50 seeds") {
    const Params truth{{"const", 0.0}, {"omega", 0.1}, {"alpha", 0.1}, {"beta", 0.8}};
    const auto s = spec_of(GarchVariant::garch);
    double sum_o = 0, sum_a = 0, sum_b = 0;
    int covered = 0;
    for (int seed = 1; seed <= 50; ++seed) {
        auto f = fit_garch(as_series(simulate_garch(s, truth, 5000, static_cast<std::uint64_t>(seed))), s);
        REQUIRE(f.converged);
        sum_o += f.coefficient("omega").value;
        sum_a += f.coefficient("alpha").value;
        const auto& b = f.coefficient("beta");
        sum_b += b.value;
        if (std::fabs(b.value - 0.8) < 1.96 * b.std_error) ++covered;
        CHECK(f.gradient_norm < 1e-4 * (1 + std::fabs(f.loglik)));
    }
    CHECK(fixture::rel_close(sum_o / 50, 0.1, 0.1));
    CHECK(fixture::rel_close(sum_a / 50, 0.1, 0.1));
    CHECK(fixture::rel_close(sum_b / 50, 0.8, 0.1));
    CHECK(covered >= 44);
}

TEST_CASE("property: conditional variances are positive for every variant") {
    const auto& y = asymmetric_sample();
    for (auto v : {GarchVariant::arch, GarchVariant::garch, GarchVariant::ts_garch, GarchVariant::gjr, GarchVariant::tarch,
                   GarchVariant::narch, GarchVariant::aparch, GarchVariant::egarch}) {
        CAPTURE(to_string(v));
        try {
            auto f = fit_garch(y, spec_of(v));
            for (double h : f.conditional_variances.values()) CHECK(h > 0.0);
            CHECK(f.conditional_variances.size() == static_cast<std::size_t>(f.nobs));
            CHECK(f.aic == Approx(-2 * f.loglik + 2 * f.k));
            CHECK(f.bic == Approx(-2 * f.loglik + f.k * std::log(f.nobs)));
        } catch (const FitError&) {
            // non-convergence is a reported outcome, never a crash
        }
    }
}

TEST_CASE("explosive parameters are infeasible, not a crash") {
    const auto& y = asymmetric_sample();
    auto ll = garch_loglik_per_obs(y.values(), spec_of(GarchVariant::garch),
                                   {{"const", 0.0}, {"omega", -1.0}, {"alpha", 0.1}, {"beta", 0.8}});
    bool any_nan = false;
    for (int i = 0; i < ll.size(); ++i) any_nan = any_nan || std::isnan(ll[i]);
    CHECK(any_nan);
}

TEST_CASE("unconditional variance of a fit") {
    auto f = fit_garch(asymmetric_sample(), spec_of(GarchVariant::garch));
    double persistence = f.coefficient("alpha").value + f.coefficient("beta").value;
    REQUIRE(persistence < 1.0);
    REQUIRE(f.unconditional_variance.has_value());
    CHECK(*f.unconditional_variance == Approx(f.coefficient("omega").value / (1 - persistence)));
    CHECK_FALSE(fit_garch(asymmetric_sample(), spec_of(GarchVariant::egarch)).unconditional_variance.has_value());
}

TEST_CASE("model comparison") {
    const auto& y = asymmetric_sample();
    std::vector<GarchSpec> specs{spec_of(GarchVariant::garch), spec_of(GarchVariant::garch), spec_of(GarchVariant::gjr)};
    auto rows = compare_models(y, specs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].loglik == rows[1].loglik);
    CHECK(rows[0].aic == rows[1].aic);
    int best = 0;
    for (const auto& r : rows) best += r.best_aic ? 1 : 0;
    CHECK(best >= 1);
    CHECK_THROWS_AS(compare_models(y, {spec_of(GarchVariant::garch)}), DomainError);
}

TEST_CASE("spec validation") {
    auto s = spec_of(GarchVariant::egarch);
    s.mean = MeanSpec::in_mean;
    CHECK_THROWS_AS(s.validate(), DomainError);
    auto t = spec_of(GarchVariant::garch, Distribution::student_t);
    t.convention = LikelihoodConvention::kernel_only;
    CHECK_THROWS_AS(t.validate(), DomainError);
    auto u = spec_of(GarchVariant::garch);
    u.fixed = {{"delta", 2.0}};
    CHECK_THROWS_AS(u.validate(), DomainError);
    auto m = spec_of(GarchVariant::garch);
    m.mean = MeanSpec::in_mean;
    CHECK(m.effective_convention() == LikelihoodConvention::kernel_only);
    CHECK(m.parameter_names().front() == "theta");
    CHECK(spec_of(GarchVariant::garch).label() == "GARCH(1,1)");
    CHECK_THROWS_AS(garch_variant_from_string("figarch"), DomainError);
    CHECK_THROWS_AS(fit_garch(as_series(std::vector<double>(20, 1.0)), spec_of(GarchVariant::garch)), DomainError);
}

TEST_CASE("simulation is deterministic per seed") {
    auto s = spec_of(GarchVariant::garch);
    Params p{{"const", 0.0}, {"omega", 0.1}, {"alpha", 0.1}, {"beta", 0.8}};
    CHECK(simulate_garch(s, p, 100, 5) == simulate_garch(s, p, 100, 5));
    CHECK(simulate_garch(s, p, 100, 5) != simulate_garch(s, p, 100, 6));
}

} // TEST_SUITE
