#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsecon/arima.hpp"
#include "tsecon/diagnostics.hpp"
#include "tsecon/forecast_eval.hpp"
#include "tsecon/optimize.hpp"
#include "tsecon/unitroot.hpp"
#include "tsecon/var.hpp"
#include "tsecon/volatility.hpp"

namespace tsecon {

using Json = nlohmann::ordered_json;

/// "***", "**", "*" for p below 0.01, 0.05, 0.10.
std::string p_stars(double p);

// Plain-text blocks laid out like a regression package's model output.
std::string render_coefficients(const std::vector<Coefficient>& coefs, const char* stat_label = "z");
std::string render_ols(const OlsResult& r, const std::string& title);
std::string render_test(const TestResult& t);
std::string render_correlogram(const std::vector<CorrelogramRow>& rows, const std::string& variable);
std::string render_frequency(const std::vector<FrequencyBin>& bins, const std::string& variable);
std::string render_arima(const ArimaFit& fit);
std::string render_residuals(const std::vector<ResidualRow>& rows, const std::string& variable,
                             double threshold_sd = 2.5);
std::string render_forecast(const std::vector<ForecastRow>& rows, const std::optional<TimeSeries>& actual,
                            double confidence = 0.95);
std::string render_evaluation(const ForecastEvaluation& ev);
std::string render_lag_selection(const LagSelection& sel);
std::string render_var(const VarFit& fit);
std::string render_irf(const std::vector<IrfTable>& tables);
std::string render_fevd(const std::vector<FevdTable>& tables);
std::string render_var_forecast(const std::vector<VarForecastTable>& tables, double confidence = 0.95);
std::string render_varma(const VarmaSystem& sys);
std::string render_adf(const AdfResult& r);
std::string render_coint(const CointegrationReport& rep);
std::string render_garch(const GarchFit& fit);
std::string render_comparison(const std::vector<ComparisonRow>& rows);
std::string render_optim(const OptimResult& r, const std::vector<std::string>& names);

// JSON. Non-finite numbers become null.
Json to_json(const Coefficient& c);
Json to_json(const OlsResult& r);
Json to_json(const TestResult& t);
Json to_json(const std::vector<CorrelogramRow>& rows, const std::string& variable);
Json to_json(const std::vector<FrequencyBin>& bins);
Json to_json(const ArimaFit& fit);
Json to_json(const std::vector<ResidualRow>& rows);
Json to_json(const std::vector<ForecastRow>& rows);
Json to_json(const ForecastEvaluation& ev);
Json to_json(const LagSelection& sel);
Json to_json(const VarFit& fit);
Json to_json(const std::vector<IrfTable>& tables);
Json to_json(const std::vector<FevdTable>& tables);
Json to_json(const std::vector<VarForecastTable>& tables);
Json to_json(const VarmaSystem& sys);
Json to_json(const AdfResult& r);
Json to_json(const CointegrationReport& rep);
Json to_json(const GarchFit& fit);
Json to_json(const std::vector<ComparisonRow>& rows);

// CSV (header row plus data rows).
std::string correlogram_csv(const std::vector<CorrelogramRow>& rows);
std::string forecast_csv(const std::vector<ForecastRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string coefficients_csv(const std::vector<Coefficient>& coefs);

} // namespace tsecon
