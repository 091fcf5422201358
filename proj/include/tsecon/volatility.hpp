#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsecon/coefficient.hpp"
#include "tsecon/distributions.hpp"
#include "tsecon/optimize.hpp"
#include "tsecon/series.hpp"

namespace tsecon {

enum class GarchVariant { arch, garch, ts_garch, gjr, tarch, narch, aparch, egarch };
enum class MeanSpec { constant, in_mean };

std::string to_string(GarchVariant v);
GarchVariant garch_variant_from_string(const std::string& s);

struct GarchSpec {
    GarchVariant variant = GarchVariant::garch;
    int arch_order = 1;
    int garch_order = 1; ///< forced to 0 for ARCH
    MeanSpec mean = MeanSpec::constant;
    Distribution distribution = Distribution::normal;
    /// Unset means: the constant-free kernel for in-mean models, full otherwise.
    std::optional<LikelihoodConvention> convention;
    CovarianceMethod vcv = CovarianceMethod::hessian;
    /// Parameters held at a value instead of estimated, keyed by coefficient
    /// name (e.g. {"gamma", 0.0} turns GJR into GARCH).
    std::map<std::string, double> fixed;

    [[nodiscard]] LikelihoodConvention effective_convention() const;
    /// "GARCH(1,1)", "ARCH-M(1)", ...
    [[nodiscard]] std::string label() const;
    /// Coefficient names in estimation order: mean, variance, shape.
    [[nodiscard]] std::vector<std::string> parameter_names() const;
    /// DomainError on inconsistent settings.
    void validate() const;
};

struct GarchFit {
    GarchSpec spec;
    std::string dependent;
    SampleRange sample;
    int nobs = 0;
    int k = 0; ///< freely estimated parameters
    std::vector<Coefficient> mean_coefficients, variance_coefficients, shape_coefficients;
    /// GJR only: the same fit in the power form (|e| - gamma e)^2.
    std::vector<Coefficient> alt_parametrization;
    Eigen::MatrixXd covariance; ///< of the free parameters
    double loglik = 0, aic = 0, bic = 0, hqc = 0;
    TimeSeries residuals, conditional_variances, standardized_residuals;
    std::optional<double> unconditional_variance;
    bool converged = false;
    int iterations = 0, n_function_evals = 0, n_gradient_evals = 0;
    double gradient_norm = 0;

    [[nodiscard]] std::vector<Coefficient> coefficients() const;
    [[nodiscard]] const Coefficient& coefficient(const std::string& name) const;
    [[nodiscard]] bool all_significant(double level = 0.05) const;
};

/// FitError when the optimizer does not converge.
GarchFit fit_garch(const TimeSeries& series, const GarchSpec& spec, const SampleRange& range);
GarchFit fit_garch(const TimeSeries& series, const GarchSpec& spec);

/// ARCH: omega / (1 - sum alpha); GARCH: omega / (1 - sum alpha - sum beta).
/// Absent for other variants and when persistence >= 1.
std::optional<double> unconditional_variance(GarchVariant variant, double omega, const std::vector<double>& alpha,
                                             const std::vector<double>& beta);
std::optional<double> unconditional_variance(const GarchFit& fit);

/// Log-likelihood per observation at natural parameter values (all names of
/// spec.parameter_names(), fixed ones included). NaN entries when infeasible.
Eigen::VectorXd garch_loglik_per_obs(std::span<const double> y, const GarchSpec& spec,
                                     const std::map<std::string, double>& params);

/// Conditional variances at natural parameter values.
std::vector<double> garch_variances(std::span<const double> y, const GarchSpec& spec,
                                    const std::map<std::string, double>& params);

/// Simulate `n` observations after discarding `burn_in` draws.
std::vector<double> simulate_garch(const GarchSpec& spec, const std::map<std::string, double>& params, int n,
                                   std::uint64_t seed, int burn_in = 500);

struct ComparisonRow {
    GarchSpec spec;
    bool converged = false;
    std::string error;
    double loglik = 0, aic = 0, bic = 0, hqc = 0;
    bool all_significant = false;
    bool best_aic = false, best_bic = false, best_hqc = false;
};

/// Fits every spec (concurrently); failures become rows with converged=false.
std::vector<ComparisonRow> compare_models(const TimeSeries& series, const std::vector<GarchSpec>& specs,
                                          const std::optional<SampleRange>& range = std::nullopt);

} // namespace tsecon
