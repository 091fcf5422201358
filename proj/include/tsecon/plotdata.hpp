#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tsecon/arima.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

/// Decimal year of a quarter: 1980Q1 -> 1980.0, 1980Q2 -> 1980.25.
double decimal_year(Period p);

/// Whitespace-separated "x y" rows under a '#' header line.
void write_xy(const std::filesystem::path& path, std::span<const double> x, std::span<const double> y,
              const std::string& header = "x y");
void write_xy(const std::filesystem::path& path, const TimeSeries& s);
/// "x y lo hi" rows.
void write_band(const std::filesystem::path& path, std::span<const double> x, std::span<const double> y,
                std::span<const double> lo, std::span<const double> hi, const std::string& header = "x y lo hi");
void write_band(const std::filesystem::path& path, const std::vector<ForecastRow>& rows);

} // namespace tsecon
