#pragma once

#include <optional>

#include "tsecon/series.hpp"

namespace tsecon {

struct ForecastEvaluation {
    int n = 0;
    double me = 0, mse = 0, rmse = 0, mae = 0, mpe = 0, mape = 0;
    double theil_u = 0;
    double um = 0, ur = 0, ud = 0; ///< bias, regression and disturbance proportions
    bool perfect = false;          ///< zero MSE; proportions reported as zero
};

/// Errors are actual - forecast. Theil's U compares relative one-step changes
/// inside the window; when `last_pre_sample_actual` is given it also seeds the
/// first term. Population moments throughout. DomainError on misaligned input
/// or a zero actual.
ForecastEvaluation evaluate_forecast(const TimeSeries& actual, const TimeSeries& forecast,
                                     std::optional<double> last_pre_sample_actual = std::nullopt);

} // namespace tsecon
