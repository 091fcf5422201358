#pragma once

// Published tables used by the replication tests and the acceptance runner.

#include <array>

namespace ref {

struct CorrelogramLine {
    double acf, pacf, q;
};

struct ForecastLine {
    double actual, point, std_error;
};

// Correlogram of the levels over 1980Q1-2006Q1, lags 1-20.
inline constexpr std::array<CorrelogramLine, 20> kGdpCorrelogram{{
    {0.9725, 0.9725, 102.1765}, {0.9445, -0.0250, 199.4772}, {0.9157, -0.0280, 291.8301},
    {0.8873, -0.0062, 379.4130}, {0.8591, -0.0123, 462.3396}, {0.8308, -0.0187, 540.6633},
    {0.8027, -0.0103, 614.5253}, {0.7739, -0.0280, 683.8957}, {0.7443, -0.0319, 748.7268},
    {0.7145, -0.0187, 809.1079}, {0.6846, -0.0205, 865.1257}, {0.6555, -0.0032, 917.0296},
    {0.6268, -0.0089, 965.0109}, {0.5986, -0.0109, 1009.2447}, {0.5702, -0.0194, 1049.8350},
    {0.5423, -0.0093, 1086.9642}, {0.5148, -0.0108, 1120.8026}, {0.4880, -0.0058, 1151.5546},
    {0.4610, -0.0213, 1179.3186}, {0.4332, -0.0352, 1204.1175},
}};

inline constexpr std::array<CorrelogramLine, 20> kGceCorrelogram{{
    {0.9697, 0.9697, 101.5772}, {0.9399, -0.0063, 197.9379}, {0.9071, -0.0651, 288.5790},
    {0.8738, -0.0281, 373.5108}, {0.8400, -0.0229, 452.7871}, {0.8053, -0.0339, 526.3749},
    {0.7681, -0.0600, 594.0054}, {0.7310, -0.0185, 655.8961}, {0.6931, -0.0308, 712.1199},
    {0.6549, -0.0286, 762.8375}, {0.6161, -0.0309, 808.2024}, {0.5781, -0.0083, 848.5792},
    {0.5415, 0.0006, 884.3816}, {0.5043, -0.0325, 915.7805}, {0.4682, -0.0080, 943.1473},
    {0.4308, -0.0461, 966.5724}, {0.3946, -0.0062, 986.4527}, {0.3611, 0.0199, 1003.2914},
    {0.3294, 0.0052, 1017.4698}, {0.2986, -0.0133, 1029.2550},
}};

// actual, point forecast, standard error; 2006Q2-2013Q1.
inline constexpr std::array<ForecastLine, 28> kGdpArima110Forecast{{
    {12948.7, 12994.2, 54.9179},
    {12950.4, 13071.2, 91.2910},
    {13038.4, 13141.5, 120.616},
    {13056.1, 13209.6, 145.159},
    {13173.6, 13277.0, 166.425},
    {13269.8, 13344.1, 185.357},
    {13326.0, 13411.1, 202.555},
    {13266.8, 13478.1, 218.411},
    {13310.5, 13545.1, 233.193},
    {13186.9, 13612.1, 247.094},
    {12883.5, 13679.1, 260.254},
    {12711.0, 13746.1, 272.779},
    {12701.0, 13813.1, 284.754},
    {12746.7, 13880.1, 296.246},
    {12873.1, 13947.1, 307.308},
    {12947.6, 14014.1, 317.985},
    {13019.6, 14081.1, 328.316},
    {13103.5, 14148.1, 338.331},
    {13181.2, 14215.1, 348.058},
    {13183.8, 14282.1, 357.521},
    {13264.7, 14349.0, 366.739},
    {13306.9, 14416.0, 375.731},
    {13441.0, 14483.0, 384.513},
    {13506.4, 14550.0, 393.099},
    {13548.5, 14617.0, 401.502},
    {13652.5, 14684.0, 409.732},
    {13665.4, 14751.0, 417.800},
    {13750.1, 14818.0, 425.715},
}};

// actual, point forecast, standard error; 2006Q2-2013Q1.
inline constexpr std::array<ForecastLine, 28> kGceArima112Forecast{{
    {2399.10, 2401.85, 15.2543},
    {2402.70, 2411.24, 20.1999},
    {2409.40, 2420.70, 25.6319},
    {2406.70, 2430.22, 31.2272},
    {2426.80, 2439.79, 36.8190},
    {2447.90, 2449.39, 42.3182},
    {2455.30, 2459.02, 47.6769},
    {2473.90, 2468.68, 52.8708},
    {2484.50, 2478.36, 57.8891},
    {2510.70, 2488.06, 62.7296},
    {2520.50, 2497.77, 67.3951},
    {2531.60, 2507.49, 71.8915},
    {2590.40, 2517.22, 76.2265},
    {2614.30, 2526.96, 80.4084},
    {2621.10, 2536.70, 84.4462},
    {2600.40, 2546.45, 88.3487},
    {2618.70, 2556.20, 92.1243},
    {2616.70, 2565.95, 95.7812},
    {2587.40, 2575.71, 99.3273},
    {2540.70, 2585.47, 102.770},
    {2535.40, 2595.23, 106.115},
    {2516.60, 2604.99, 109.370},
    {2502.70, 2614.75, 112.539},
    {2483.70, 2624.52, 115.629},
    {2479.40, 2634.28, 118.644},
    {2503.10, 2644.05, 121.590},
    {2458.10, 2653.81, 124.468},
    {2427.10, 2663.58, 127.285},
}};

} // namespace ref
