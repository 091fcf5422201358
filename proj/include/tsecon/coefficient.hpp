#pragma once

#include <string>

namespace tsecon {

struct Coefficient {
    std::string name;
    double value = 0, std_error = 0, z = 0, p_value = 1;
};

/// Fills z and the two-sided normal p-value from value and std_error.
Coefficient make_coefficient(std::string name, double value, double std_error);

} // namespace tsecon
