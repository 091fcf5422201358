#include "support.hpp"

#include "tsecon/arima.hpp"
#include "tsecon/errors.hpp"
#include "tsecon/forecast_eval.hpp"

using namespace tsecon;

namespace {

struct Block {
    double me, mse, rmse, mae, mpe, mape, u, um, ur, ud;
};

ForecastEvaluation evaluate_model(const TimeSeries& s, int p, int q) {
    ArimaSpec sp;
    sp.p = p;
    sp.d = 1;
    sp.q = q;
    auto fit = fit_arima(s, sp, fixture::estimation());
    std::vector<double> pts;
    for (const auto& r : forecast_arima(fit, 28)) pts.push_back(r.point);
    return evaluate_forecast(slice(s, fixture::holdout()), TimeSeries("f", Period(2006, 2), pts));
}

void check_block(const ForecastEvaluation& ev, const Block& b) {
    CHECK(ev.n == 28);
    CHECK(fixture::rel_close(ev.me, b.me, 1e-3));
    CHECK(fixture::rel_close(ev.mse, b.mse, 1e-3));
    CHECK(fixture::rel_close(ev.rmse, b.rmse, 1e-3));
    CHECK(fixture::rel_close(ev.mae, b.mae, 1e-3));
    CHECK(fixture::rel_close(ev.mpe, b.mpe, 1e-3));
    CHECK(fixture::rel_close(ev.mape, b.mape, 1e-3));
    CHECK(fixture::rel_close(ev.theil_u, b.u, 1e-3));
    CHECK(fixture::rel_close(ev.um, b.um, 1e-3));
    CHECK(fixture::rel_close(ev.ur, b.ur, 1e-3));
    CHECK(fixture::rel_close(ev.ud, b.ud, 1e-3));
}

TimeSeries make(const std::vector<double>& v) { return {"x", Period(2000, 1), v}; }

// Straightforward re-derivation used as the oracle for the random checks.
ForecastEvaluation naive(const std::vector<double>& a, const std::vector<double>& f) {
    const double n = static_cast<double>(a.size());
    ForecastEvaluation ev;
    double ma = 0, mf = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double e = a[i] - f[i];
        ev.me += e / n;
        ev.mse += e * e / n;
        ev.mae += std::fabs(e) / n;
        ev.mpe += 100 * e / a[i] / n;
        ev.mape += 100 * std::fabs(e) / std::fabs(a[i]) / n;
        ma += a[i] / n;
        mf += f[i] / n;
    }
    double saa = 0, sff = 0, saf = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        saa += (a[i] - ma) * (a[i] - ma) / n;
        sff += (f[i] - mf) * (f[i] - mf) / n;
        saf += (a[i] - ma) * (f[i] - mf) / n;
    }
    double sa = std::sqrt(saa), sf = std::sqrt(sff), r = saf / (sa * sf);
    ev.um = (mf - ma) * (mf - ma) / ev.mse;
    ev.ur = (sf - r * sa) * (sf - r * sa) / ev.mse;
    ev.ud = (1 - r * r) * saa / ev.mse;
    double num = 0, den = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        num += std::pow((f[i] - a[i]) / a[i - 1], 2);
        den += std::pow((a[i] - a[i - 1]) / a[i - 1], 2);
    }
    ev.theil_u = std::sqrt(num / den);
    ev.rmse = std::sqrt(ev.mse);
    return ev;
}

} // namespace

TEST_SUITE("forecast_eval") {

TEST_CASE("ARIMA(1,1,0) holdout block") {
    check_block(evaluate_model(fixture::gdp(), 1, 0),
                {-733.73, 7.3107e5, 855.03, 733.73, -5.5643, 5.5643, 8.7131, 0.73639, 0.19322, 0.070388});
}

TEST_CASE("ARIMA(1,1,2) holdout block") {
    check_block(evaluate_model(fixture::gce(), 1, 2),
                {-26.198, 7718.5, 87.855, 62.244, -1.092, 2.4814, 3.8702, 0.088923, 0.35153, 0.55955});
}

TEST_CASE("seeding Theil's U with the last in-sample actual adds one term") {
    auto a = make({10, 12, 11, 13});
    auto f = make({11, 11, 12, 12});
    auto plain = evaluate_forecast(a, f);
    auto seeded = evaluate_forecast(a, f, 9.0);
    double num = std::pow((11.0 - 10) / 9, 2), den = std::pow((10.0 - 9) / 9, 2);
    for (int i = 1; i < 4; ++i) {
        num += std::pow((f[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)]) / a[static_cast<std::size_t>(i - 1)], 2);
        den += std::pow((a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i - 1)]) / a[static_cast<std::size_t>(i - 1)], 2);
    }
    CHECK(seeded.theil_u == doctest::Approx(std::sqrt(num / den)).epsilon(1e-14));
    CHECK(seeded.me == plain.me);
    CHECK(seeded.theil_u != plain.theil_u);
}

TEST_CASE("perfect forecast") {
    auto a = make({1, 2, 3, 4});
    auto ev = evaluate_forecast(a, a);
    CHECK(ev.perfect);
    CHECK(ev.mse == 0.0);
    CHECK(ev.theil_u == 0.0);
    CHECK(ev.um == 0.0);
    CHECK(ev.ur == 0.0);
    CHECK(ev.ud == 0.0);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(evaluate_forecast(make({1, 0, 3}), make({1, 2, 3})), DomainError);
    CHECK_THROWS_AS(evaluate_forecast(make({1, 2, 3}), TimeSeries("f", Period(2000, 2), {1, 2, 3})), DomainError);
    CHECK_THROWS_AS(evaluate_forecast(make({1, 2, 3}), make({1, 2})), DomainError);
    CHECK_THROWS_AS(evaluate_forecast(make({1, 2, 3}), make({1, 2, 3}), 0.0), DomainError);
}

TEST_CASE("property: random forecasts against a direct computation") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto za = fixture::gaussian(30, seed), zf = fixture::gaussian(30, seed + 100);
        std::vector<double> a(30), f(30);
        for (std::size_t i = 0; i < 30; ++i) {
            a[i] = 100 + 5 * za[i];
            f[i] = 98 + 4 * zf[i] + 0.5 * za[i];
        }
        auto ev = evaluate_forecast(make(a), make(f));
        auto want = naive(a, f);
        CHECK(std::fabs(ev.um + ev.ur + ev.ud - 1.0) < 1e-9);
        CHECK(ev.mse == doctest::Approx(want.mse).epsilon(1e-10));
        CHECK(ev.rmse * ev.rmse == doctest::Approx(ev.mse).epsilon(1e-12));
        CHECK(ev.me == doctest::Approx(want.me).epsilon(1e-10));
        CHECK(ev.mae == doctest::Approx(want.mae).epsilon(1e-10));
        CHECK(ev.mpe == doctest::Approx(want.mpe).epsilon(1e-10));
        CHECK(ev.mape == doctest::Approx(want.mape).epsilon(1e-10));
        CHECK(ev.um == doctest::Approx(want.um).epsilon(1e-10));
        CHECK(ev.ur == doctest::Approx(want.ur).epsilon(1e-10));
        CHECK(ev.ud == doctest::Approx(want.ud).epsilon(1e-10));
        CHECK(ev.theil_u == doctest::Approx(want.theil_u).epsilon(1e-10));
        // bias proportion equals ME^2 / MSE
        CHECK(ev.um == doctest::Approx(ev.me * ev.me / ev.mse).epsilon(1e-10));

        // joint rescaling leaves the scale-free statistics unchanged
        std::vector<double> a2(a), f2(f);
        for (auto& v : a2) v *= 7.0;
        for (auto& v : f2) v *= 7.0;
        auto s = evaluate_forecast(make(a2), make(f2));
        CHECK(s.mpe == doctest::Approx(ev.mpe).epsilon(1e-10));
        CHECK(s.mape == doctest::Approx(ev.mape).epsilon(1e-10));
        CHECK(s.theil_u == doctest::Approx(ev.theil_u).epsilon(1e-10));
        CHECK(s.um == doctest::Approx(ev.um).epsilon(1e-10));
        CHECK(s.mse == doctest::Approx(49 * ev.mse).epsilon(1e-10));
    }
}

} // TEST_SUITE
