#include "support.hpp"

#include "tsecon/errors.hpp"
#include "tsecon/optimize.hpp"

using namespace tsecon;
using doctest::Approx;

namespace {

Objective quadratic(const Eigen::MatrixXd& A, const Eigen::VectorXd& centre) {
    Objective o;
    o.dimension = static_cast<int>(centre.size());
    o.loglik = [A, centre](const Eigen::VectorXd& x) {
        Eigen::VectorXd d = x - centre;
        return -0.5 * d.dot(A * d);
    };
    return o;
}

// i.i.d. N(mu, s^2) with s = exp(x[1]).
Objective normal_model(const std::vector<double>& y) {
    Objective o;
    o.dimension = 2;
    o.per_obs = [y](const Eigen::VectorXd& x) {
        Eigen::VectorXd l(static_cast<Eigen::Index>(y.size()));
        for (std::size_t t = 0; t < y.size(); ++t) {
            double z = (y[t] - x[0]) / std::exp(x[1]);
            l[static_cast<Eigen::Index>(t)] = -0.5 * std::log(2 * M_PI) - x[1] - 0.5 * z * z;
        }
        return l;
    };
    auto po = o.per_obs;
    o.loglik = [po](const Eigen::VectorXd& x) { return po(x).sum(); };
    return o;
}

} // namespace

TEST_SUITE("optimize") {

TEST_CASE("one-dimensional quadratic") {
    Objective o;
    o.dimension = 1;
    o.loglik = [](const Eigen::VectorXd& x) { return -(x[0] - 3.0) * (x[0] - 3.0); };
    auto r = maximize(o, Eigen::VectorXd::Zero(1));
    CHECK(r.converged);
    CHECK(r.params[0] == Approx(3.0).epsilon(1e-6));
    CHECK(std::fabs(r.loglik) < 1e-8);
}

TEST_CASE("two-dimensional quadratic") {
    Objective o;
    o.dimension = 2;
    o.loglik = [](const Eigen::VectorXd& x) { return -(x[0] * x[0] + 10 * x[1] * x[1]); };
    auto r = maximize(o, Eigen::Vector2d(1, 1));
    CHECK(r.converged);
    CHECK(std::fabs(r.params[0]) < 1e-6);
    CHECK(std::fabs(r.params[1]) < 1e-6);
    CHECK(r.n_function_evals > 0);
    CHECK(r.n_gradient_evals > 0);
}

TEST_CASE("rosenbrock valley") {
    Objective o;
    o.dimension = 2;
    o.loglik = [](const Eigen::VectorXd& x) {
        return -(100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2));
    };
    auto r = maximize(o, Eigen::Vector2d(-1.2, 1.0));
    CHECK(r.converged);
    CHECK(r.params[0] == Approx(1.0).epsilon(1e-3));
    CHECK(r.params[1] == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("infeasible start is a domain error") {
    Objective o;
    o.dimension = 1;
    o.loglik = [](const Eigen::VectorXd& x) { return x[0] < 0 ? std::nan("") : -x[0]; };
    CHECK_THROWS_AS(maximize(o, Eigen::VectorXd::Constant(1, -1.0)), DomainError);
}

TEST_CASE("a boundary maximum ends without throwing") {
    // Increasing up to a wall of NaN: the best point is at the wall.
    Objective o;
    o.dimension = 1;
    o.loglik = [](const Eigen::VectorXd& x) { return x[0] > 1.0 ? std::nan("") : x[0]; };
    OptimResult r;
    CHECK_NOTHROW(r = maximize(o, Eigen::VectorXd::Zero(1)));
    CHECK(r.params[0] <= 1.0);
    CHECK(r.params[0] > 0.99);
}

TEST_CASE("hessian covariance of simple kernels") {
    Objective o;
    o.dimension = 1;
    o.loglik = [](const Eigen::VectorXd& x) { return -0.5 * x[0] * x[0]; };
    CHECK(covariance_hessian(o, Eigen::VectorXd::Zero(1))(0, 0) == Approx(1.0).epsilon(1e-6));

    Eigen::Matrix3d A;
    A << 4, 1, 0.5, 1, 3, 0.2, 0.5, 0.2, 2;
    auto q = quadratic(A, Eigen::Vector3d(1, -2, 0.5));
    Eigen::MatrixXd cov = covariance_hessian(q, Eigen::Vector3d(1, -2, 0.5));
    Eigen::MatrixXd inv = A.inverse();
    CHECK((cov - inv).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((cov - cov.transpose()).norm() == 0.0);
}

TEST_CASE("hessian covariance rejects a saddle") {
    Objective o;
    o.dimension = 2;
    o.loglik = [](const Eigen::VectorXd& x) { return x[0] * x[0] - x[1] * x[1]; };
    CHECK_THROWS_AS(covariance_hessian(o, Eigen::Vector2d::Zero()), NumericalError);
}

TEST_CASE("information matrix equality for the normal model") {
    auto y = fixture::gaussian(5000, 17, 2.0);
    auto o = normal_model(y);
    auto r = maximize(o, Eigen::Vector2d(0.5, 0.0));
    REQUIRE(r.converged);
    Eigen::MatrixXd h = covariance_hessian(o, r.params), g = covariance_opg(o, r.params);
    for (int i = 0; i < 2; ++i) CHECK(g(i, i) == Approx(h(i, i)).epsilon(0.10));
    CHECK(r.std_errors[0] == Approx(std::sqrt(h(0, 0))).epsilon(1e-9));
}

TEST_CASE("opg needs more than one observation per parameter") {
    auto o = normal_model({1.5});
    CHECK_THROWS_AS(covariance_opg(o, Eigen::Vector2d(1.0, 0.0)), NumericalError);
}

TEST_CASE("numerical gradient matches analytic gradients") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::Vector3d x(z(rng), z(rng), z(rng) + 2.0);
        // A Gaussian log kernel in (mu, log s) plus a quartic.
        auto f = [](const Eigen::VectorXd& p) {
            return -std::log(p[2] * p[2]) - 0.5 * std::pow(p[0] - p[1], 2) / (p[2] * p[2]) - 0.1 * std::pow(p[0], 4);
        };
        Eigen::Vector3d g;
        double s2 = x[2] * x[2], d = x[0] - x[1];
        g << -d / s2 - 0.4 * std::pow(x[0], 3), d / s2, -2.0 / x[2] + d * d / (s2 * x[2]);
        Eigen::VectorXd num = numerical_gradient(f, x);
        for (int i = 0; i < 3; ++i) CHECK(num[i] == Approx(g[i]).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("property: gradient at a converged optimum is below the threshold") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto y = fixture::gaussian(200, seed, 3.0);
        auto o = normal_model(y);
        auto r = maximize(o, Eigen::Vector2d(0.0, 0.0));
        REQUIRE(r.converged);
        CHECK(numerical_gradient(o.loglik, r.params).cwiseAbs().maxCoeff() < gradient_threshold(r.loglik));
        CHECK(r.gradient_norm < gradient_threshold(r.loglik));
    }
}

TEST_CASE("property: optimum does not depend on parameter order") {
    Eigen::Matrix3d A;
    A << 5, 1, 0, 1, 2, 0.3, 0, 0.3, 1;
    Eigen::Vector3d c(0.5, -1.0, 2.0);
    auto r1 = maximize(quadratic(A, c), Eigen::Vector3d::Zero());
    Eigen::PermutationMatrix<3> P;
    P.indices() << 2, 0, 1;
    Eigen::Matrix3d Ap = P * A * P.transpose();
    auto r2 = maximize(quadratic(Ap, P * c), Eigen::Vector3d::Zero());
    Eigen::VectorXd back = P.transpose() * r2.params;
    CHECK((back - r1.params).cwiseAbs().maxCoeff() < 1e-6);
}

} // TEST_SUITE
