#pragma once

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tsecon/series.hpp"

namespace fixture {

inline tsecon::TimeSeries gdp() { return tsecon::load_csv(TSECON_DATA_DIR "/gdpc1q.csv", "date", "GDPC1Q"); }
inline tsecon::TimeSeries gce() { return tsecon::load_csv(TSECON_DATA_DIR "/gcec1q.csv", "date", "GCEC1Q"); }

/// 1980Q1-2006Q1, the estimation window of the ARIMA and VAR examples.
inline tsecon::SampleRange estimation() { return {tsecon::Period(1980, 1), tsecon::Period(2006, 1)}; }
inline tsecon::SampleRange holdout() { return {tsecon::Period(2006, 2), tsecon::Period(2013, 1)}; }

inline bool rel_close(double got, double want, double rel) { return std::fabs(got - want) <= rel * std::fabs(want); }

inline std::vector<double> gaussian(int n, std::uint64_t seed, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, sd);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = z(rng);
    return out;
}

inline std::vector<double> ar1(int n, double phi, std::uint64_t seed, int burn = 200) {
    auto e = gaussian(n + burn, seed);
    std::vector<double> y(e.size());
    double prev = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) y[t] = prev = phi * prev + e[t];
    return {y.begin() + burn, y.end()};
}

} // namespace fixture
