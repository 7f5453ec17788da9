#pragma once

#include "mgarch/types.hpp"

#include <utility>

namespace mgarch {

/// MA(1) filter fit x_t = mu + e_t + theta e_{t-1}, e_0 = 0.
struct MaFilterResult {
    double theta = 0.0;
    double mu = 0.0;
    Eigen::VectorXd residuals;  // same length as the input
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Residuals of the MA(1) filter at given (mu, theta); theta = 0 reduces
/// to demeaning by mu.
Eigen::VectorXd ma1_residuals(const Eigen::VectorXd& x, double mu, double theta);

/// Maximize the Gaussian conditional likelihood over (mu, theta) with
/// theta constrained to the invertible region |theta| < 1.
MaFilterResult fit_ma1(const Eigen::VectorXd& x);
inline MaFilterResult fit_ma1(const ReturnSeries& s) { return fit_ma1(s.values); }

/// First-order VAR mean: r_t = c + Phi r_{t-1} + eps_t.
/// Phi(0,1) is the effect of the second series' lag on the first.
struct VarMeanParams {
    Vec2 c = Vec2::Zero();
    Mat2 phi = Mat2::Zero();

    [[nodiscard]] double spectral_radius() const;
};

struct Var1Fit {
    VarMeanParams params;
    ResidualPanel residuals;          // first observation dropped
    Eigen::Matrix<double, 2, 3> se;   // OLS standard errors: rows = equations,
                                      // columns = (const, lag 1, lag 2)
};

/// Equation-by-equation OLS of each series on a constant and both lags.
Var1Fit fit_var1(const MatX2& returns, const std::vector<Date>& dates);

/// Deterministic residual extraction eps_t = r_t - c - Phi r_{t-1}.
ResidualPanel var_residuals(const VarMeanParams& params, const MatX2& returns,
                            const std::vector<Date>& dates);

/// Residual values only (rows 1..T-1 of the panel), allocation-light form
/// used inside likelihood evaluations.
MatX2 var_residual_values(const VarMeanParams& params, const MatX2& returns);

}  // namespace mgarch
