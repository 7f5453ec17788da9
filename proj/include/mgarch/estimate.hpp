#pragma once

#include "mgarch/garch.hpp"
#include "mgarch/mean.hpp"
#include "mgarch/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mgarch {

/// Softplus positivity map and its inverse (used for C diagonals and the
/// univariate GARCH coefficients). Round-trips to machine precision.
double softplus(double u);
double softplus_inv(double c);

struct OptimizerSettings {
    int max_iterations = 600;
    /// Convergence requires max |dL/dtheta_i| <= tol * max(1, |L|) at the
    /// reported (constrained) estimates, by central differences.
    double gradient_tolerance = 1e-4;
    double step_tolerance = 1e-11;
    double fd_step = 1e-5;
    /// Jittered restarts beyond the seeded start; best likelihood wins,
    /// ties broken by smaller parameter norm.
    int restarts = 0;
    std::uint64_t seed = 20190321;

    void validate() const;
};

enum class MeanMode { Joint, TwoStep };

std::string to_string(MeanMode m);

struct StartValues {
    VarMeanParams mean;
    BekkParameters bekk;
};

/// Seed point: OLS VAR mean, diagonal A/B from per-series GARCH(1,1)
/// fits (square roots of alpha1/beta1), C from matching the residuals'
/// unconditional covariance. Guaranteed finite likelihood and stationary.
StartValues start_values(const MatX2& returns);

struct GarchFit {
    GarchParams params;
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Univariate GARCH(1,1) QML on a (mean-zero) residual series.
GarchFit fit_garch11(const Eigen::VectorXd& eps);

/// Bollerslev-Wooldridge sandwich covariance from a per-observation
/// log-likelihood map: V = A^-1 S A^-1 / T with A the average negative
/// Hessian (central differences) and S the average score outer product.
struct RobustCovariance {
    Eigen::MatrixXd V;
    Eigen::VectorXd se;
    double hessian_cond = 0.0;
    /// False when the average Hessian is not negative definite; SEs then
    /// come from a pseudo-inverse and should be treated with suspicion.
    bool hessian_pd = true;
};

using PerObservationLoglik = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

RobustCovariance robust_covariance(const PerObservationLoglik& loglik_terms,
                                   const Eigen::VectorXd& theta, double rel_step = 1e-4);

struct EstimationResult {
    VarMeanParams mean;
    BekkParameters bekk;
    double loglik = 0.0;

    /// Estimates with robust inference, in Table layout order:
    /// joint mode [c1 r11 r21 c2 r22 r12 | C11 C12 C22 a11 a12 a21 a22
    /// b11 b12 b21 b22 (nu)], two-step mode the variance block only.
    std::vector<std::string> parameter_names;
    Eigen::VectorXd estimates;
    Eigen::VectorXd robust_se;
    Eigen::VectorXd robust_t;

    /// OLS standard errors for the mean block (two-step mode).
    Eigen::Matrix<double, 2, 3> mean_ols_se = Eigen::Matrix<double, 2, 3>::Zero();

    double hessian_cond = 0.0;
    bool hessian_pd = true;
    int iterations = 0;
    bool converged = false;
    Distribution distribution = Distribution::Gaussian;
    MeanMode mean_mode = MeanMode::Joint;
    double stationarity_radius = 0.0;
    int floor_activations = 0;
    /// max |central-difference gradient| of the log-likelihood over the
    /// reported parameters, at the optimum.
    double max_abs_gradient = 0.0;
    bool short_sample = false;  // T below 250
    int attempts = 1;
    /// Accepted objective values of the winning optimizer run
    /// (non-decreasing).
    std::vector<double> accepted_loglik;
};

/// Quasi-maximum-likelihood VAR(1)-BEKK(1,1) fit on a bivariate return
/// block. Joint mode optimizes mean and variance parameters together;
/// two-step fixes the mean at OLS first. Non-convergence is reported
/// through `converged`, never silently.
EstimationResult fit_bekk(const MatX2& returns, const OptimizerSettings& settings = {},
                          Distribution dist = Distribution::Gaussian,
                          MeanMode mode = MeanMode::Joint,
                          const std::optional<StartValues>& start = std::nullopt);

/// In-effect conditional covariance path of a fitted system on its
/// estimation sample (entry t is the covariance of the date-t residual).
ConditionalPath fitted_path(const EstimationResult& fit, const MatX2& returns,
                            const std::vector<Date>& dates);

/// Standardized residuals z_t = H_t^{-1/2} eps_t under the fitted system.
MatX2 fitted_standardized_residuals(const EstimationResult& fit, const MatX2& returns);

}  // namespace mgarch
