#include "mgarch/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace mgarch {

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g[i] = (fp - fm) / (2.0 * h);
        } else if (std::isfinite(fp)) {
            g[i] = (fp - f(x)) / h;
        } else if (std::isfinite(fm)) {
            g[i] = (f(x) - fm) / h;
        } else {
            g[i] = 0.0;
        }
    }
    return g;
}

BfgsResult maximize(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opts) {
    const Eigen::Index n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);
    res.value = f(res.x);
    if (!std::isfinite(res.value))
        throw std::invalid_argument("maximize: objective non-finite at start point");
    res.accepted.push_back(res.value);

    Eigen::VectorXd grad = fd_gradient(f, res.x, opts.fd_step);
    Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
    constexpr double c1 = 1e-4;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter;
        const double scale = std::max(1.0, std::abs(res.value));
        if (grad.cwiseAbs().maxCoeff() <= opts.gradient_tolerance * scale) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd dir = Hinv * grad;  // ascent direction
        if (dir.dot(grad) <= 0.0) {         // curvature lost; restart from steepest ascent
            Hinv.setIdentity();
            dir = grad;
        }

        // backtracking line search on the ascent condition
        double t = 1.0;
        double f_new = -std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new;
        const double slope = dir.dot(grad);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = res.x + t * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new >= res.value + c1 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // retry once from a fresh steepest-ascent direction
            if (!Hinv.isIdentity(0.0)) {
                Hinv.setIdentity();
                continue;
            }
            break;
        }

        const Eigen::VectorXd step = x_new - res.x;
        Eigen::VectorXd grad_new = fd_gradient(f, x_new, opts.fd_step);
        const Eigen::VectorXd dg = grad_new - grad;  // change in ascent gradient
        // BFGS update on the inverse Hessian of -f: y = -dg, s = step
        const double sy = -step.dot(dg);
        if (sy > 1e-12 * step.norm() * dg.norm()) {
            const Eigen::VectorXd y = -dg;
            const Eigen::VectorXd Hy = Hinv * y;
            const double yHy = y.dot(Hy);
            Hinv += ((sy + yHy) / (sy * sy)) * (step * step.transpose()) -
                    (Hy * step.transpose() + step * Hy.transpose()) / sy;
        }

        const double step_size = step.cwiseAbs().maxCoeff();
        res.x = std::move(x_new);
        res.value = f_new;
        res.accepted.push_back(f_new);
        grad = std::move(grad_new);

        if (step_size <= opts.step_tolerance * std::max(1.0, res.x.cwiseAbs().maxCoeff())) {
            res.converged =
                grad.cwiseAbs().maxCoeff() <= opts.gradient_tolerance * 10.0 * scale;
            break;
        }
    }

    res.gradient = grad;
    return res;
}

}  // namespace mgarch
