#include "support.hpp"

#include "tsecon/arima.hpp"
#include "tsecon/errors.hpp"
#include "tsecon/kalman.hpp"

using namespace tsecon;
using doctest::Approx;

namespace {

Eigen::MatrixXd column(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double mvn_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mean, const Eigen::MatrixXd& S) {
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    Eigen::VectorXd d = y - mean;
    double quad = d.dot(llt.solve(d));
    double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * (static_cast<double>(y.size()) * std::log(2 * M_PI) + logdet + quad);
}

Eigen::MatrixXd d_gdp_column() {
    auto d = slice(diff(fixture::gdp()), fixture::estimation());
    return column(d.data());
}

} // namespace

TEST_SUITE("kalman") {

TEST_CASE("white noise model reduces to the iid normal likelihood") {
    auto y = fixture::gaussian(50, 3, 2.0);
    StateSpaceModel m;
    m.F = Eigen::MatrixXd::Zero(1, 1);
    m.H = Eigen::MatrixXd::Ones(1, 1);
    m.Q = Eigen::MatrixXd::Constant(1, 1, 4.0);
    m.R = Eigen::MatrixXd::Zero(1, 1);
    m.initial_state = Eigen::VectorXd::Zero(1);
    m.initial_covariance = m.Q;
    auto out = kalman_filter(m, column(y));
    double want = 0;
    for (double v : y) want += -0.5 * std::log(2 * M_PI * 4.0) - v * v / 8.0;
    CHECK(out.loglik_total == Approx(want).epsilon(1e-12));
    CHECK(out.loglik_per_obs.sum() == Approx(out.loglik_total).epsilon(1e-14));
}

TEST_CASE("local level model against the dense multivariate normal") {
    const int T = 20;
    const double sv = 0.7, sw = 1.3, a1 = 2.0, p1 = 5.0;
    auto y = fixture::gaussian(T, 41);
    StateSpaceModel m;
    m.F = Eigen::MatrixXd::Ones(1, 1);
    m.H = Eigen::MatrixXd::Ones(1, 1);
    m.Q = Eigen::MatrixXd::Constant(1, 1, sv * sv);
    m.R = Eigen::MatrixXd::Constant(1, 1, sw * sw);
    m.initial_state = Eigen::VectorXd::Constant(1, a1);
    m.initial_covariance = Eigen::MatrixXd::Constant(1, 1, p1);
    Eigen::MatrixXd S(T, T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) S(i, j) = p1 + sv * sv * std::min(i, j) + (i == j ? sw * sw : 0.0);
    double dense = mvn_logpdf(column(y), Eigen::VectorXd::Constant(T, a1), S);
    CHECK(std::fabs(kalman_filter(m, column(y)).loglik_total - dense) < 1e-8);
}

TEST_CASE("ARMA(1,1) mapping") {
    auto m = arma_to_state_space({0.975190}, {-1.43617}, 38.3644);
    REQUIRE(m.state_dim() == 2);
    CHECK(m.F(0, 0) == 0.975190);
    CHECK(m.F(1, 0) == 1.0);
    CHECK(m.F(0, 1) == 0.0);
    CHECK(m.F(1, 1) == 0.0);
    CHECK(m.H(0, 0) == 1.0);
    CHECK(m.H(1, 0) == -1.43617);
    CHECK(m.Q(0, 0) == Approx(38.3644 * 38.3644).epsilon(1e-12));
    CHECK(m.Q(1, 1) == 0.0);
}

TEST_CASE("pure AR(1) has a zero MA loading") {
    auto m = arma_to_state_space({0.5}, {}, 1.0);
    CHECK(m.H.rows() >= 1);
    CHECK(m.H(0, 0) == 1.0);
    for (Eigen::Index i = 1; i < m.H.rows(); ++i) CHECK(m.H(i, 0) == 0.0);
}

TEST_CASE("likelihood of the state-space ARMA at the printed estimates") {
    auto m = diffuse_initialization(arma_to_state_space({0.975190}, {-1.43617}, 38.3644));
    CHECK(kalman_filter(m, d_gdp_column()).loglik_total == Approx(-570.6483).epsilon(0.01 / 570.6483));
}

TEST_CASE("stationary initialization") {
    StateSpaceModel m;
    m.F = Eigen::MatrixXd::Constant(1, 1, 0.5);
    m.H = Eigen::MatrixXd::Ones(1, 1);
    m.Q = Eigen::MatrixXd::Ones(1, 1);
    m.R = Eigen::MatrixXd::Zero(1, 1);
    auto d = diffuse_initialization(m);
    CHECK(d.initial_covariance(0, 0) == Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(d.initial_state.isZero());

    const double phi = 0.975190, sigma = 38.3644;
    auto a = diffuse_initialization(arma_to_state_space({phi}, {-1.43617}, sigma));
    // The latent state is an AR(1): gamma_0 = s^2/(1-phi^2), gamma_1 = phi gamma_0.
    const double g0 = sigma * sigma / (1 - phi * phi);
    CHECK(a.initial_covariance(0, 0) == Approx(g0).epsilon(1e-9));
    CHECK(a.initial_covariance(1, 1) == Approx(g0).epsilon(1e-9));
    CHECK(a.initial_covariance(0, 1) == Approx(phi * g0).epsilon(1e-9));

    m.F(0, 0) = 1.0;
    CHECK_THROWS_AS(diffuse_initialization(m), DomainError);
}

TEST_CASE("ARMA(2,2) likelihood approaches the conditional sum of squares") {
    const std::vector<double> phi{0.5, -0.3}, theta{0.4, 0.2};
    const double sigma = 1.5;
    const int T = 2000;
    auto e = fixture::gaussian(T + 200, 77, sigma);
    std::vector<double> y(e.size(), 0.0);
    for (std::size_t t = 2; t < e.size(); ++t)
        y[t] = phi[0] * y[t - 1] + phi[1] * y[t - 2] + e[t] + theta[0] * e[t - 1] + theta[1] * e[t - 2];
    std::vector<double> obs(y.end() - T, y.end());
    double exact = kalman_filter(diffuse_initialization(arma_to_state_space(phi, theta, sigma)), column(obs)).loglik_total;
    std::vector<double> u(obs.size(), 0.0);
    double css = 0;
    for (std::size_t t = 0; t < obs.size(); ++t) {
        double v = obs[t];
        if (t >= 1) v -= phi[0] * obs[t - 1] + theta[0] * u[t - 1];
        if (t >= 2) v -= phi[1] * obs[t - 2] + theta[1] * u[t - 2];
        u[t] = v;
        css += -0.5 * std::log(2 * M_PI * sigma * sigma) - v * v / (2 * sigma * sigma);
    }
    CHECK(exact == Approx(css).epsilon(0.005));
}

TEST_CASE("property: likelihood is invariant to similarity transforms") {
    auto y = d_gdp_column();
    auto base = diffuse_initialization(arma_to_state_space({0.6, 0.2}, {-0.4}, 50.0, true, 60.0));
    double ll = kalman_filter(base, y).loglik_total;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 20; ++rep) {
        const auto r = base.state_dim();
        Eigen::MatrixXd T(r, r);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < r; ++j) T(i, j) = z(rng) + (i == j ? 3.0 : 0.0);
        Eigen::MatrixXd Ti = T.inverse();
        StateSpaceModel m = base;
        m.F = T * base.F * Ti;
        m.H = Ti.transpose() * base.H;
        m.Q = T * base.Q * T.transpose();
        m.initial_state = T * base.initial_state;
        m.initial_covariance = T * base.initial_covariance * T.transpose();
        CHECK(std::fabs(kalman_filter(m, y).loglik_total - ll) < 1e-8);
    }
}

TEST_CASE("property: prediction error variances are positive definite") {
    auto m = diffuse_initialization(arma_to_state_space({0.7}, {0.3}, 40.0, true, 60.0));
    auto out = kalman_filter(m, d_gdp_column());
    for (const auto& S : out.prediction_error_variances) {
        CHECK((S - S.transpose()).norm() < 1e-9 * S.norm());
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues().minCoeff() > 0);
    }
}

TEST_CASE("degenerate noise is an error, not NaN") {
    StateSpaceModel m;
    m.F = Eigen::MatrixXd::Constant(1, 1, 0.5);
    m.H = Eigen::MatrixXd::Ones(1, 1);
    m.Q = Eigen::MatrixXd::Zero(1, 1);
    m.R = Eigen::MatrixXd::Zero(1, 1);
    m.initial_state = Eigen::VectorXd::Zero(1);
    m.initial_covariance = Eigen::MatrixXd::Zero(1, 1);
    CHECK_THROWS_AS(kalman_filter(m, column({1.0, 2.0, 3.0})), NumericalError);
}

TEST_CASE("state-space ARMA by direct maximization") {
    auto d = diff(fixture::gdp());
    auto fit = fit_state_space_arma(d, 1, 1, fixture::estimation(), 1.0);
    REQUIRE(fit.optim.converged);
    CHECK(fixture::rel_close(fit.optim.params[0], 0.975190, 0.01));
    CHECK(fixture::rel_close(fit.optim.params[1], -1.43617, 0.01));
    CHECK(fixture::rel_close(fit.optim.params[2], 38.3644, 0.01));
    CHECK(fit.optim.loglik == Approx(-570.6483).epsilon(0.01 / 570.6483));
    CHECK(numerical_gradient([&](const Eigen::VectorXd& x) {
              auto m = diffuse_initialization(arma_to_state_space({x[0]}, {x[1]}, x[2]));
              return kalman_filter(m, d_gdp_column()).loglik_total;
          }, fit.optim.params).cwiseAbs().maxCoeff() < gradient_threshold(fit.optim.loglik));

    auto ten = fit_state_space_arma(d, 1, 1, fixture::estimation(), 10.0);
    CHECK(ten.optim.loglik == Approx(fit.optim.loglik).epsilon(1e-6));
    CHECK(ten.optim.params[0] == Approx(fit.optim.params[0]).epsilon(1e-3));
}

} // TEST_SUITE
