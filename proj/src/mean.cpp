#include "mgarch/mean.hpp"

#include "mgarch/ols.hpp"
#include "mgarch/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace mgarch {

Eigen::VectorXd ma1_residuals(const Eigen::VectorXd& x, double mu, double theta) {
    Eigen::VectorXd eps(x.size());
    double prev = 0.0;
    for (Eigen::Index t = 0; t < x.size(); ++t) {
        eps[t] = x[t] - mu - theta * prev;
        prev = eps[t];
    }
    return eps;
}

namespace {

// Concentrated Gaussian conditional log-likelihood of the MA(1) filter.
double ma1_concentrated_loglik(const Eigen::VectorXd& x, double mu, double theta) {
    const auto T = static_cast<double>(x.size());
    const double rss = ma1_residuals(x, mu, theta).squaredNorm();
    if (!(rss > 0.0)) return std::numeric_limits<double>::infinity();  // degenerate
    return -0.5 * T * (std::log(2.0 * M_PI) + std::log(rss / T) + 1.0);
}

}  // namespace

MaFilterResult fit_ma1(const Eigen::VectorXd& x) {
    if (x.size() < 30) throw std::invalid_argument("fit_ma1: need T >= 30");
    if (!x.allFinite()) throw std::invalid_argument("fit_ma1: non-finite input");

    // moment-based start: rho_1 = theta / (1 + theta^2)
    const double mean = x.mean();
    const Eigen::ArrayXd c = x.array() - mean;
    const double denom = (c * c).sum();
    double theta0 = 0.0;
    if (denom > 0.0) {
        double num = 0.0;
        for (Eigen::Index t = 1; t < x.size(); ++t) num += c[t] * c[t - 1];
        const double rho1 = num / denom;
        if (std::abs(rho1) < 0.49)
            theta0 = (1.0 - std::sqrt(1.0 - 4.0 * rho1 * rho1)) / (2.0 * rho1 + 1e-300);
        theta0 = std::clamp(theta0, -0.9, 0.9);
    }

    const Objective obj = [&x](const Eigen::VectorXd& p) {
        const double ll = ma1_concentrated_loglik(x, p[0], std::tanh(p[1]));
        return std::isfinite(ll) ? ll : -std::numeric_limits<double>::infinity();
    };
    Eigen::VectorXd p0(2);
    p0 << mean, std::atanh(theta0);
    const auto opt = maximize(obj, p0, BfgsOptions{.max_iterations = 300});

    MaFilterResult r;
    r.mu = opt.x[0];
    r.theta = std::tanh(opt.x[1]);
    r.residuals = ma1_residuals(x, r.mu, r.theta);
    r.loglik = opt.value;
    r.iterations = opt.iterations;
    r.converged = opt.converged;
    if (!opt.converged) throw std::runtime_error("fit_ma1: optimizer failed to converge");
    if (std::abs(r.theta) >= 0.9999)
        throw std::runtime_error("fit_ma1: theta at the invertibility boundary");
    return r;
}

double VarMeanParams::spectral_radius() const {
    return phi.eigenvalues().cwiseAbs().maxCoeff();
}

Var1Fit fit_var1(const MatX2& returns, const std::vector<Date>& dates) {
    const Eigen::Index T = returns.rows();
    if (T < 30) throw std::invalid_argument("fit_var1: need T >= 30");
    if (dates.size() != static_cast<std::size_t>(T))
        throw std::invalid_argument("fit_var1: dates/rows mismatch");

    Eigen::MatrixXd X(T - 1, 3);
    X.col(0).setOnes();
    X.col(1) = returns.col(0).head(T - 1);
    X.col(2) = returns.col(1).head(T - 1);

    Var1Fit fit;
    fit.residuals.eps.resize(T - 1, 2);
    fit.residuals.dates.assign(dates.begin() + 1, dates.end());
    for (int eq = 0; eq < 2; ++eq) {
        const Eigen::VectorXd y = returns.col(eq).tail(T - 1);
        const auto r = ols(X, y);
        if (r.rank < 3) throw std::runtime_error("fit_var1: collinear regressors");
        fit.params.c[eq] = r.beta[0];
        fit.params.phi(eq, 0) = r.beta[1];
        fit.params.phi(eq, 1) = r.beta[2];
        fit.se.row(eq) = r.se.transpose();
        fit.residuals.eps.col(eq) = r.residuals;
    }
    return fit;
}

MatX2 var_residual_values(const VarMeanParams& params, const MatX2& returns) {
    const Eigen::Index T = returns.rows();
    if (T < 2) throw std::invalid_argument("var_residuals: need T >= 2");
    if (!params.c.allFinite() || !params.phi.allFinite())
        throw std::invalid_argument("var_residuals: non-finite parameters");
    MatX2 eps(T - 1, 2);
    for (Eigen::Index t = 1; t < T; ++t) {
        const Vec2 pred = params.c + params.phi * returns.row(t - 1).transpose();
        eps.row(t - 1) = returns.row(t) - pred.transpose();
    }
    return eps;
}

ResidualPanel var_residuals(const VarMeanParams& params, const MatX2& returns,
                            const std::vector<Date>& dates) {
    if (dates.size() != static_cast<std::size_t>(returns.rows()))
        throw std::invalid_argument("var_residuals: dates/rows mismatch");
    ResidualPanel out;
    out.eps = var_residual_values(params, returns);
    out.dates.assign(dates.begin() + 1, dates.end());
    return out;
}

}  // namespace mgarch
