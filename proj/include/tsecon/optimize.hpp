#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <limits>

namespace tsecon {

/// A log-likelihood to maximize. `loglik` returns NaN (never throws) outside
/// the feasible region. `per_obs` is optional and only needed for OPG.
struct Objective {
    int dimension = 0;
    std::function<double(const Eigen::VectorXd&)> loglik;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> per_obs;
};

enum class CovarianceMethod { hessian, opg, none };

/// eps^(3/4), the relative function-change tolerance.
inline const double default_tolerance = std::pow(std::numeric_limits<double>::epsilon(), 0.75);

struct OptimOptions {
    double tolerance = default_tolerance;
    int max_iterations = 2000;
    CovarianceMethod covariance = CovarianceMethod::hessian;
    std::ostream* trace = nullptr;
};

struct OptimResult {
    Eigen::VectorXd params;
    double loglik = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd std_errors;
    Eigen::MatrixXd covariance;
    int iterations = 0;
    int n_function_evals = 0;
    int n_gradient_evals = 0;
    double gradient_norm = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    std::string message;
};

/// Gradient threshold used for the convergence test and the property suite.
[[nodiscard]] inline double gradient_threshold(double loglik) { return 1e-4 * (1.0 + std::fabs(loglik)); }

/// BFGS ascent with central-difference gradients and a backtracking line
/// search. Throws DomainError when the objective is not finite at `start`.
OptimResult maximize(const Objective& obj, const Eigen::VectorXd& start, const OptimOptions& opts = {});

Eigen::VectorXd numerical_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x);
Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x);

/// Negative inverse Hessian. NumericalError (listing eigenvalues) if the
/// Hessian is not negative definite.
Eigen::MatrixXd covariance_hessian(const Objective& obj, const Eigen::VectorXd& at);
/// Inverse outer product of per-observation gradients.
Eigen::MatrixXd covariance_opg(const Objective& obj, const Eigen::VectorXd& at);

} // namespace tsecon
