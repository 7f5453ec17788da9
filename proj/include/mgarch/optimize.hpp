#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace mgarch {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
    int max_iterations = 500;
    /// Converged when max |g_i| <= gradient_tolerance * max(1, |f|).
    double gradient_tolerance = 1e-7;
    /// Stop when the accepted step is below this (relative to |x|).
    double step_tolerance = 1e-11;
    /// Relative step for central finite differences.
    double fd_step = 1e-5;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    Eigen::VectorXd gradient;  // finite-difference gradient of f at x
    int iterations = 0;
    bool converged = false;
    /// Accepted objective values in order; non-decreasing by construction.
    std::vector<double> accepted;
};

/// Central-difference gradient with per-coordinate step
/// h_i = rel_step * max(1, |x_i|). Falls back to a one-sided difference
/// when the objective is non-finite on one side.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step);

/// Maximize `f` from `x0` by BFGS with a backtracking (Armijo) line
/// search and finite-difference gradients. `f` may return -infinity for
/// out-of-domain points; the start point must be finite.
BfgsResult maximize(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace mgarch
