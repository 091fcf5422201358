#include "tsecon/kalman.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "tsecon/errors.hpp"

namespace tsecon {

FilterOutput kalman_filter(const StateSpaceModel& m, const Eigen::MatrixXd& y, const Eigen::MatrixXd& exog) {
    const auto r = m.state_dim();
    const auto n = m.obs_dim();
    const auto T = y.rows();
    if (m.F.cols() != r || m.H.rows() != r || m.Q.rows() != r || m.Q.cols() != r || m.R.rows() != n ||
        m.R.cols() != n || y.cols() != n)
        throw DomainError("kalman_filter: inconsistent dimensions");
    if (m.A.size() > 0 && (exog.rows() != T || exog.cols() != m.A.rows() || m.A.cols() != n))
        throw DomainError("kalman_filter: exogenous data does not match A");
    if (m.initial_state.size() != r || m.initial_covariance.rows() != r || m.initial_covariance.cols() != r)
        throw DomainError("kalman_filter: initial conditions have the wrong size");

    FilterOutput out;
    out.loglik_per_obs.resize(T);
    out.filtered_states.resize(T, r);
    out.prediction_errors.resize(T, n);
    out.prediction_error_variances.reserve(static_cast<std::size_t>(T));

    Eigen::VectorXd xi = m.initial_state;
    Eigen::MatrixXd P = m.initial_covariance;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
    const double log2pi = std::log(2.0 * std::numbers::pi);

    for (Eigen::Index t = 0; t < T; ++t) {
        Eigen::VectorXd v = y.row(t).transpose() - m.H.transpose() * xi;
        if (m.mu.size() > 0) v -= m.mu;
        if (m.A.size() > 0) v -= m.A.transpose() * exog.row(t).transpose();
        Eigen::MatrixXd S = m.H.transpose() * P * m.H + m.R;
        S = 0.5 * (S + S.transpose());
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() != Eigen::Success || !S.allFinite() || !v.allFinite())
            throw NumericalError("singular prediction-error variance", static_cast<long>(t));
        double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        Eigen::VectorXd Sv = llt.solve(v);
        out.loglik_per_obs[t] = -0.5 * (static_cast<double>(n) * log2pi + logdet + v.dot(Sv));

        Eigen::MatrixXd K = P * m.H * llt.solve(Eigen::MatrixXd::Identity(n, n));
        xi += K * v;
        Eigen::MatrixXd IKH = I - K * m.H.transpose();
        P = IKH * P * IKH.transpose() + K * m.R * K.transpose();

        out.filtered_states.row(t) = xi.transpose();
        out.prediction_errors.row(t) = v.transpose();
        out.prediction_error_variances.push_back(S);
        if (t + 1 == T) {
            out.final_state = xi;
            out.final_covariance = P;
        }
        xi = m.F * xi;
        P = m.F * P * m.F.transpose() + m.Q;
    }
    if (T == 0) {
        out.final_state = xi;
        out.final_covariance = P;
    }
    out.loglik_total = out.loglik_per_obs.sum();
    return out;
}

StateSpaceModel arma_to_state_space(const std::vector<double>& phi, const std::vector<double>& theta, double sigma,
                                    bool include_const, double constant) {
    if (!(sigma > 0)) throw DomainError("arma_to_state_space: sigma must be positive");
    const auto p = static_cast<Eigen::Index>(phi.size());
    const auto q = static_cast<Eigen::Index>(theta.size());
    const Eigen::Index r = std::max(p, q + 1);
    StateSpaceModel m;
    m.F = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 0; i < p; ++i) m.F(0, i) = phi[i];
    for (Eigen::Index i = 1; i < r; ++i) m.F(i, i - 1) = 1.0;
    m.H = Eigen::MatrixXd::Zero(r, 1);
    m.H(0, 0) = 1.0;
    for (Eigen::Index i = 0; i < q; ++i) m.H(i + 1, 0) = theta[i];
    m.Q = Eigen::MatrixXd::Zero(r, r);
    m.Q(0, 0) = sigma * sigma;
    m.R = Eigen::MatrixXd::Zero(1, 1);
    if (include_const) m.mu = Eigen::VectorXd::Constant(1, constant);
    m.initial_state = Eigen::VectorXd::Zero(r);
    m.initial_covariance = Eigen::MatrixXd::Zero(r, r);
    return m;
}

double spectral_radius(const Eigen::MatrixXd& F) {
    if (F.size() == 0) return 0.0;
    return F.eigenvalues().cwiseAbs().maxCoeff();
}

StateSpaceModel diffuse_initialization(StateSpaceModel m) {
    const auto r = m.state_dim();
    double rho = spectral_radius(m.F);
    if (!(rho < 1.0))
        throw DomainError(fmt::format("transition matrix has spectral radius {:.6g}; no stationary covariance", rho));
    // vec(P) = (I - F kron F)^-1 vec(Q), column-major vec.
    const Eigen::Index r2 = r * r;
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(r2, r2);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            for (Eigen::Index k = 0; k < r; ++k)
                for (Eigen::Index l = 0; l < r; ++l) M(i * r + k, j * r + l) -= m.F(k, l) * m.F(i, j);
    Eigen::VectorXd vecQ = Eigen::Map<const Eigen::VectorXd>(m.Q.data(), r2);
    Eigen::VectorXd vecP = M.partialPivLu().solve(vecQ);
    Eigen::MatrixXd P = Eigen::Map<Eigen::MatrixXd>(vecP.data(), r, r);
    m.initial_covariance = 0.5 * (P + P.transpose());
    m.initial_state = Eigen::VectorXd::Zero(r);
    return m;
}

} // namespace tsecon
