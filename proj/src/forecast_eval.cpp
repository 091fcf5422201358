#include "tsecon/forecast_eval.hpp"

#include "tsecon/errors.hpp"

#include <cmath>

namespace tsecon {

ForecastEvaluation evaluate_forecast(const TimeSeries& actual, const TimeSeries& forecast,
                                     std::optional<double> last_pre_sample_actual) {
    if (actual.start() != forecast.start() || actual.size() != forecast.size())
        throw DomainError("actual and forecast series are not aligned");
    const int N = static_cast<int>(actual.size());
    if (N < 2) throw DomainError("forecast evaluation needs at least two periods");
    auto y = actual.values();
    auto f = forecast.values();
    for (int t = 0; t < N; ++t) {
        if (!std::isfinite(y[t]) || !std::isfinite(f[t])) throw DomainError("missing value in forecast evaluation");
        if (y[t] == 0) throw DomainError("zero actual value: percentage errors undefined");
    }

    ForecastEvaluation ev;
    ev.n = N;
    double my = 0, mf = 0;
    for (int t = 0; t < N; ++t) {
        double err = y[t] - f[t];
        ev.me += err;
        ev.mse += err * err;
        ev.mae += std::fabs(err);
        ev.mpe += 100 * err / y[t];
        ev.mape += 100 * std::fabs(err / y[t]);
        my += y[t];
        mf += f[t];
    }
    ev.me /= N;
    ev.mse /= N;
    ev.mae /= N;
    ev.mpe /= N;
    ev.mape /= N;
    ev.rmse = std::sqrt(ev.mse);
    my /= N;
    mf /= N;

    double num = 0, den = 0;
    auto add_term = [&](double prev, double yt, double ft) {
        num += std::pow((ft - yt) / prev, 2);
        den += std::pow((yt - prev) / prev, 2);
    };
    if (last_pre_sample_actual) {
        if (*last_pre_sample_actual == 0) throw DomainError("zero pre-sample actual value");
        add_term(*last_pre_sample_actual, y[0], f[0]);
    }
    for (int t = 1; t < N; ++t) add_term(y[t - 1], y[t], f[t]);
    ev.theil_u = den > 0 ? std::sqrt(num / den) : (num > 0 ? INFINITY : 0.0);

    if (ev.mse == 0) {
        ev.perfect = true;
        return ev;
    }
    double syy = 0, sff = 0, syf = 0;
    for (int t = 0; t < N; ++t) {
        syy += (y[t] - my) * (y[t] - my);
        sff += (f[t] - mf) * (f[t] - mf);
        syf += (y[t] - my) * (f[t] - mf);
    }
    double sy = std::sqrt(syy / N), sf = std::sqrt(sff / N);
    double r = (sy > 0 && sf > 0) ? syf / std::sqrt(syy * sff) : 0.0;
    ev.um = (mf - my) * (mf - my) / ev.mse;
    ev.ur = (sf - r * sy) * (sf - r * sy) / ev.mse;
    ev.ud = (1 - r * r) * sy * sy / ev.mse;
    return ev;
}

} // namespace tsecon
