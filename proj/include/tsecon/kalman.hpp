#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tsecon {

/// y_t = mu + A'x_t + H'xi_t + w_t,   xi_{t+1} = F xi_t + v_t,
/// Var(v) = Q, Var(w) = R. The initial state and covariance are the
/// one-step predictions for the first observation.
struct StateSpaceModel {
    Eigen::MatrixXd F, H, Q, R;
    Eigen::MatrixXd A;  ///< k x n, empty when there are no exogenous regressors
    Eigen::VectorXd mu; ///< n observation intercept, empty means zero
    Eigen::VectorXd initial_state;
    Eigen::MatrixXd initial_covariance;

    [[nodiscard]] Eigen::Index state_dim() const noexcept { return F.rows(); }
    [[nodiscard]] Eigen::Index obs_dim() const noexcept { return H.cols(); }
};

struct FilterOutput {
    double loglik_total = 0.0;
    Eigen::VectorXd loglik_per_obs;
    Eigen::MatrixXd filtered_states;   ///< T x r, xi_{t|t}
    Eigen::MatrixXd prediction_errors; ///< T x n
    std::vector<Eigen::MatrixXd> prediction_error_variances;
    Eigen::VectorXd final_state;      ///< xi_{T|T}
    Eigen::MatrixXd final_covariance; ///< P_{T|T}
};

/// observations: T x n. exog: T x k, required when model.A is non-empty.
FilterOutput kalman_filter(const StateSpaceModel& model, const Eigen::MatrixXd& observations,
                           const Eigen::MatrixXd& exog = {});

/// ARMA(p,q) in the form y_t = mu + xi_t + theta_1 xi_{t-1} + ..., with
/// r = max(p, q+1). Initial conditions are left at zero; see diffuse_initialization.
StateSpaceModel arma_to_state_space(const std::vector<double>& phi, const std::vector<double>& theta, double sigma,
                                    bool include_const = false, double constant = 0.0);

/// Zero initial state and the stationary covariance solving P = F P F' + Q.
/// DomainError when F has spectral radius >= 1.
StateSpaceModel diffuse_initialization(StateSpaceModel model);

/// Largest eigenvalue modulus.
double spectral_radius(const Eigen::MatrixXd& F);

} // namespace tsecon
