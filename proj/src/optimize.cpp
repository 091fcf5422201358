#include "tsecon/optimize.hpp"

#include <fmt/format.h>
#include <ostream>

#include "tsecon/errors.hpp"

namespace tsecon {

namespace {

const double eps = std::numeric_limits<double>::epsilon();
const double grad_step = std::cbrt(eps);
const double hess_step = std::pow(eps, 0.25);

double safe_eval(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    double v;
    try {
        v = f(x);
    } catch (const Error&) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

} // namespace

Eigen::VectorXd numerical_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double h = grad_step * std::max(std::fabs(x[i]), 1.0);
        xp[i] = x[i] + h;
        double fp = f(xp);
        xp[i] = x[i] - h;
        double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    const auto n = x.size();
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) h[i] = hess_step * std::max(std::fabs(x[i]), 1.0);
    Eigen::MatrixXd H(n, n);
    const double f0 = f(x);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        xp[i] = x[i] + h[i];
        double fp = f(xp);
        xp[i] = x[i] - h[i];
        double fm = f(xp);
        xp[i] = x[i];
        H(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (Eigen::Index j = 0; j < i; ++j) {
            auto at = [&](double si, double sj) {
                xp[i] = x[i] + si * h[i];
                xp[j] = x[j] + sj * h[j];
                double v = f(xp);
                xp[i] = x[i];
                xp[j] = x[j];
                return v;
            };
            double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h[i] * h[j]);
            H(i, j) = H(j, i) = v;
        }
    }
    return H;
}

Eigen::MatrixXd covariance_hessian(const Objective& obj, const Eigen::VectorXd& at) {
    Eigen::MatrixXd H = numerical_hessian(obj.loglik, at);
    if (!H.allFinite()) throw NumericalError("Hessian has non-finite entries");
    Eigen::MatrixXd A = -0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        std::string ev;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev += fmt::format(" {:.6g}", -es.eigenvalues()[i]);
        throw NumericalError("Hessian is not negative definite; eigenvalues:" + ev);
    }
    Eigen::MatrixXd V = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (V + V.transpose());
}

Eigen::MatrixXd covariance_opg(const Objective& obj, const Eigen::VectorXd& at) {
    if (!obj.per_obs) throw DomainError("OPG covariance needs per-observation log-likelihoods");
    const auto n = at.size();
    Eigen::VectorXd xp = at;
    Eigen::MatrixXd G;
    for (Eigen::Index i = 0; i < n; ++i) {
        double h = grad_step * std::max(std::fabs(at[i]), 1.0);
        xp[i] = at[i] + h;
        Eigen::VectorXd lp = obj.per_obs(xp);
        xp[i] = at[i] - h;
        Eigen::VectorXd lm = obj.per_obs(xp);
        xp[i] = at[i];
        if (i == 0) G.resize(lp.size(), n);
        G.col(i) = (lp - lm) / (2.0 * h);
    }
    Eigen::MatrixXd B = G.transpose() * G;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!B.allFinite() || lu.rank() < n) throw NumericalError("OPG matrix is singular");
    Eigen::MatrixXd V = lu.inverse();
    return 0.5 * (V + V.transpose());
}

namespace {

constexpr double kCompassFinest = 1e-7;

// One sweep of coordinate steps of relative size h; moves b on improvement.
bool compass_sweep(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd& b, double& fmax,
                   int& evals, double h) {
    bool moved = false;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        double step = h * std::max(std::fabs(b[i]), 1.0);
        for (double dir : {1.0, -1.0}) {
            Eigen::VectorXd x = b;
            x[i] += dir * step;
            double fx = f(x);
            ++evals;
            if (std::isfinite(fx) && fx > fmax + 1e-12 * (1.0 + std::fabs(fmax))) {
                b = x;
                fmax = fx;
                moved = true;
                break;
            }
        }
    }
    return moved;
}

// Coarse-to-fine coordinate probing; true if any improvement was found.
bool compass_probe(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd& b, double& fmax,
                   int& evals) {
    for (double h = 1e-3; h >= kCompassFinest; h *= 0.1)
        if (compass_sweep(f, b, fmax, evals, h)) return true;
    return false;
}

// After a failed probe: also check the diagonal directions at the finest scale.
bool compass_confirms_optimum(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& b,
                              double fmax, int& evals) {
    const Eigen::Index n = b.size();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0}) {
                    Eigen::VectorXd x = b;
                    x[i] += si * kCompassFinest * std::max(std::fabs(b[i]), 1.0);
                    x[j] += sj * kCompassFinest * std::max(std::fabs(b[j]), 1.0);
                    double fx = f(x);
                    ++evals;
                    if (std::isfinite(fx) && fx > fmax + 1e-12 * (1.0 + std::fabs(fmax))) return false;
                }
    return true;
}

} // namespace

OptimResult maximize(const Objective& obj, const Eigen::VectorXd& start, const OptimOptions& opts) {
    const int n = obj.dimension;
    if (start.size() != n) throw DomainError("maximize: start vector has the wrong dimension");
    auto f = [&](const Eigen::VectorXd& x) { return safe_eval(obj.loglik, x); };

    OptimResult res;
    Eigen::VectorXd b = start;
    double fmax = f(b);
    if (!std::isfinite(fmax)) throw DomainError("maximize: objective is not finite at the starting point");
    res.n_function_evals = 1;

    auto gradient = [&](const Eigen::VectorXd& x) {
        ++res.n_gradient_evals;
        return numerical_gradient(f, x);
    };

    // Variable-metric method in the form popularised by Nash: inverse Hessian
    // approximation B, reset to I whenever the update fails, the direction is
    // not uphill, or 2n gradients have passed since the last reset.
    const double acctol = 1e-4;
    const double stepredn = 0.2;
    const double reltest = 10.0;
    Eigen::VectorXd g = gradient(b);
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    bool just_reset = true;
    int since_reset = 0;
    int restarts_left = 20;
    bool no_ascent = false;

    while (res.iterations < opts.max_iterations) {
        Eigen::VectorXd X = b;
        Eigen::VectorXd t = B * g;
        double gradproj = t.dot(g);
        bool significant = false;

        // A gradient taken against an infeasible wall is not finite; leave
        // that case to the coordinate probes below.
        if (gradproj > 0.0 && t.allFinite()) {
            double steplength = 1.0;
            double fnew = fmax;
            bool accepted = false;
            while (true) {
                int unchanged = 0;
                for (int i = 0; i < n; ++i) {
                    b[i] = X[i] + steplength * t[i];
                    if (reltest + X[i] == reltest + b[i]) ++unchanged;
                }
                if (unchanged == n || steplength < 1e-30) break;
                fnew = f(b);
                ++res.n_function_evals;
                if (std::isfinite(fnew) && fnew >= fmax + gradproj * steplength * acctol) {
                    accepted = true;
                    break;
                }
                steplength *= stepredn;
            }
            if (accepted) {
                significant = std::fabs(fnew - fmax) > opts.tolerance * (std::fabs(fmax) + opts.tolerance);
                fmax = fnew;
                Eigen::VectorXd gnew = gradient(b);
                ++res.iterations;
                ++since_reset;
                if (significant) {
                    Eigen::VectorXd s = b - X;
                    Eigen::VectorXd yv = g - gnew; // change in the gradient of -f
                    double D1 = s.dot(yv);
                    if (D1 > 0) {
                        Eigen::VectorXd By = B * yv;
                        double D2 = 1.0 + yv.dot(By) / D1;
                        B += (D2 * s * s.transpose() - By * s.transpose() - s * By.transpose()) / D1;
                        just_reset = false;
                    } else {
                        B.setIdentity();
                        just_reset = true;
                        since_reset = 0;
                    }
                }
                g = gnew;
                if (opts.trace)
                    *opts.trace << fmt::format("iter {:4d}  loglik {:.12g}  step {:.3g}\n", res.iterations, fmax,
                                               steplength);
            } else {
                b = X;
            }
        }

        if (!significant) {
            if (!just_reset) {
                B.setIdentity();
                just_reset = true;
                since_reset = 0;
                continue;
            }
            // No progress from a fresh metric: stop if the gradient agrees.
            if (g.lpNorm<Eigen::Infinity>() < 1e-2 * gradient_threshold(fmax) || restarts_left-- <= 0) break;
            // A kink in the objective stalls the line search with a large
            // gradient; probe coordinate directions before giving up.
            if (compass_probe(f, b, fmax, res.n_function_evals)) {
                g = gradient(b);
                B.setIdentity();
                since_reset = 0;
                continue;
            }
            if (compass_confirms_optimum(f, b, fmax, res.n_function_evals)) {
                no_ascent = true;
                break;
            }
            // Otherwise seed the metric with the inverse numerical Hessian,
            // eigenvalues made positive.
            Eigen::MatrixXd H = numerical_hessian(f, b);
            res.n_function_evals += static_cast<int>(1 + 2 * n * n);
            if (!H.allFinite()) break;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-0.5 * (H + H.transpose()));
            Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
            double floor = std::max(1e-8 * ev.maxCoeff(), 1e-12);
            ev = ev.cwiseMax(floor);
            B = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
            just_reset = false;
            continue;
        }
        if (since_reset > 2 * n) {
            B.setIdentity();
            just_reset = true;
            since_reset = 0;
        }
    }

    res.params = b;
    res.loglik = fmax;
    res.gradient_norm = g.lpNorm<Eigen::Infinity>();
    res.converged = res.gradient_norm < gradient_threshold(fmax) || no_ascent;
    res.message = res.gradient_norm < gradient_threshold(fmax) ? "converged"
                  : no_ascent ? fmt::format("converged at a non-smooth point (gradient norm {:.3g}, no ascent "
                                            "direction at resolution {:.0e})",
                                            res.gradient_norm, kCompassFinest)
                              : fmt::format("gradient norm {:.3g} above threshold after {} iterations",
                                              res.gradient_norm, res.iterations);
    if (opts.trace)
        *opts.trace << fmt::format("function evaluations: {}  gradient evaluations: {}  {}\n", res.n_function_evals,
                                   res.n_gradient_evals, res.message);

    res.covariance = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
    try {
        if (opts.covariance == CovarianceMethod::hessian) res.covariance = covariance_hessian(obj, b);
        if (opts.covariance == CovarianceMethod::opg) res.covariance = covariance_opg(obj, b);
    } catch (const NumericalError& e) {
        res.message += std::string("; covariance unavailable: ") + e.what();
    }
    res.std_errors = res.covariance.diagonal().cwiseSqrt();
    return res;
}

} // namespace tsecon
