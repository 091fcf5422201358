#pragma once

#include <span>
#include <string>
#include <vector>

namespace tsecon {

/// Unit-variance innovation laws. Skewed forms use the Fernandez-Steel
/// inverse scale factors on the symmetric base, re-standardized.
enum class Distribution { normal, student_t, ged, skew_t, skew_ged };

std::string to_string(Distribution d);
Distribution distribution_from_string(const std::string& s);

/// Number of shape parameters: t (nu), GED (shape), skew-t (nu, skew), skew-GED (shape, skew).
int shape_count(Distribution d);
std::vector<std::string> shape_names(Distribution d);
/// Default starting shapes: nu 8, GED shape 1.5, skew 1.
std::vector<double> default_shape(Distribution d);

/// DomainError when the shape lies outside the feasible region.
void check_shape(Distribution d, std::span<const double> shape);

/// log f(z) for the standardized density.
double log_density(Distribution d, double z, std::span<const double> shape);

enum class LikelihoodConvention {
    full,        ///< exact log density, including the normalizing constant
    kernel_only ///< -0.5 (ln h + e^2/h), normal only, constant dropped
};

/// Log-likelihood of e = z sqrt(h): log f(z) - 0.5 ln h.
double loglik_contribution(Distribution d, double z, double h, std::span<const double> shape,
                           LikelihoodConvention convention = LikelihoodConvention::full);

/// E|z| in closed form (normal, t, GED) or by quadrature (skewed laws).
double expected_abs(Distribution d, std::span<const double> shape);
/// E|z| by adaptive quadrature of the density; used to check the closed forms.
double expected_abs_numeric(Distribution d, std::span<const double> shape);

/// Draw from the standardized law.
template <class Rng>
double draw(Distribution d, std::span<const double> shape, Rng& rng);

} // namespace tsecon

#include "tsecon/distributions_impl.hpp"
