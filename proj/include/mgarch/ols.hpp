#pragma once

#include <Eigen/Dense>

namespace mgarch {

/// Least-squares fit y = X b + e with classical standard errors.
struct OlsResult {
    Eigen::VectorXd beta;
    Eigen::VectorXd se;         // sqrt(sigma2 * diag((X'X)^-1))
    Eigen::VectorXd residuals;
    double sse = 0.0;
    double sigma2 = 0.0;        // sse / (n - k)
    double tss_centered = 0.0;  // sum (y - ybar)^2
    Eigen::Index rank = 0;

    [[nodiscard]] double r_squared() const {
        return tss_centered > 0.0 ? 1.0 - sse / tss_centered : 0.0;
    }
};

OlsResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

}  // namespace mgarch
