#include "mgarch/estimate.hpp"

#include "mgarch/optimize.hpp"
#include "mgarch/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace mgarch {

double softplus(double u) {
    return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double softplus_inv(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("softplus_inv: need a positive argument");
    return c > 20.0 ? c + std::log1p(-std::exp(-c)) : std::log(std::expm1(c));
}

void OptimizerSettings::validate() const {
    if (max_iterations <= 0 || !(gradient_tolerance > 0.0) || !(step_tolerance > 0.0) ||
        !(fd_step > 0.0) || restarts < 0)
        throw std::invalid_argument("OptimizerSettings: all settings must be positive");
}

std::string to_string(MeanMode m) { return m == MeanMode::Joint ? "joint" : "two_step"; }

namespace {

// Parameter vector layout in Table order: an optional mean block
// [c1 r11 r21 c2 r22 r12], the variance block
// [C11 C12 C22 a11 a12 a21 a22 b11 b12 b21 b22], an optional nu.
struct Layout {
    MeanMode mode;
    Distribution dist;

    [[nodiscard]] int bekk_offset() const { return mode == MeanMode::Joint ? 6 : 0; }
    [[nodiscard]] int nu_index() const { return bekk_offset() + 11; }
    [[nodiscard]] int size() const {
        return bekk_offset() + 11 + (dist == Distribution::StudentT ? 1 : 0);
    }
};

Eigen::VectorXd pack(const Layout& lay, const VarMeanParams& mean, const BekkParameters& bekk) {
    Eigen::VectorXd th(lay.size());
    if (lay.mode == MeanMode::Joint) {
        th[0] = mean.c[0];
        th[1] = mean.phi(0, 0);
        th[2] = mean.phi(0, 1);
        th[3] = mean.c[1];
        th[4] = mean.phi(1, 1);
        th[5] = mean.phi(1, 0);
    }
    const int m = lay.bekk_offset();
    th[m + 0] = bekk.C(0, 0);
    th[m + 1] = bekk.C(0, 1);
    th[m + 2] = bekk.C(1, 1);
    th[m + 3] = bekk.A(0, 0);
    th[m + 4] = bekk.A(0, 1);
    th[m + 5] = bekk.A(1, 0);
    th[m + 6] = bekk.A(1, 1);
    th[m + 7] = bekk.B(0, 0);
    th[m + 8] = bekk.B(0, 1);
    th[m + 9] = bekk.B(1, 0);
    th[m + 10] = bekk.B(1, 1);
    if (lay.dist == Distribution::StudentT) th[lay.nu_index()] = bekk.nu.value_or(8.0);
    return th;
}

void unpack(const Layout& lay, const Eigen::VectorXd& th, VarMeanParams& mean,
            BekkParameters& bekk) {
    if (lay.mode == MeanMode::Joint) {
        mean.c[0] = th[0];
        mean.phi(0, 0) = th[1];
        mean.phi(0, 1) = th[2];
        mean.c[1] = th[3];
        mean.phi(1, 1) = th[4];
        mean.phi(1, 0) = th[5];
    }
    const int m = lay.bekk_offset();
    bekk.C = Mat2::Zero();
    bekk.C(0, 0) = th[m + 0];
    bekk.C(0, 1) = th[m + 1];
    bekk.C(1, 1) = th[m + 2];
    bekk.A(0, 0) = th[m + 3];
    bekk.A(0, 1) = th[m + 4];
    bekk.A(1, 0) = th[m + 5];
    bekk.A(1, 1) = th[m + 6];
    bekk.B(0, 0) = th[m + 7];
    bekk.B(0, 1) = th[m + 8];
    bekk.B(1, 0) = th[m + 9];
    bekk.B(1, 1) = th[m + 10];
    if (lay.dist == Distribution::StudentT) bekk.nu = th[lay.nu_index()];
}

// C diagonals are optimized through softplus, nu through 2 + exp(u);
// everything else is unconstrained.
Eigen::VectorXd to_unconstrained(const Layout& lay, Eigen::VectorXd th) {
    const int m = lay.bekk_offset();
    th[m + 0] = softplus_inv(th[m + 0]);
    th[m + 2] = softplus_inv(th[m + 2]);
    if (lay.dist == Distribution::StudentT) th[lay.nu_index()] = std::log(th[lay.nu_index()] - 2.0);
    return th;
}

Eigen::VectorXd to_constrained(const Layout& lay, Eigen::VectorXd u) {
    const int m = lay.bekk_offset();
    u[m + 0] = softplus(u[m + 0]);
    u[m + 2] = softplus(u[m + 2]);
    if (lay.dist == Distribution::StudentT) u[lay.nu_index()] = 2.0 + std::exp(u[lay.nu_index()]);
    return u;
}

std::vector<std::string> parameter_names(const Layout& lay) {
    std::vector<std::string> names;
    if (lay.mode == MeanMode::Joint) names = {"c1", "r11", "r21", "c2", "r22", "r12"};
    const char* bekk[] = {"C11", "C12", "C22", "a11", "a12", "a21",
                          "a22", "b11", "b12", "b21", "b22"};
    names.insert(names.end(), std::begin(bekk), std::end(bekk));
    if (lay.dist == Distribution::StudentT) names.emplace_back("nu");
    return names;
}

// Likelihood of the bivariate system at a constrained parameter vector.
class SystemLoglik {
public:
    SystemLoglik(const MatX2& returns, Layout lay, const VarMeanParams& ols_mean)
        : returns_(returns), lay_(lay), fixed_mean_(ols_mean) {
        if (lay_.mode == MeanMode::TwoStep) {
            fixed_eps_ = var_residual_values(fixed_mean_, returns_);
            fixed_h0_ = sample_covariance(fixed_eps_);
        }
    }

    [[nodiscard]] LoglikBreakdown breakdown(const Eigen::VectorXd& theta) const {
        VarMeanParams mean = fixed_mean_;
        BekkParameters bekk;
        unpack(lay_, theta, mean, bekk);
        const Distribution dist =
            lay_.dist == Distribution::StudentT ? Distribution::StudentT : Distribution::Gaussian;
        if (lay_.mode == MeanMode::Joint) {
            const MatX2 eps = var_residual_values(mean, returns_);
            return bekk_loglik(bekk, eps, sample_covariance(eps), dist);
        }
        return bekk_loglik(bekk, fixed_eps_, fixed_h0_, dist);
    }

    [[nodiscard]] double total(const Eigen::VectorXd& theta) const {
        try {
            return breakdown(theta).total;
        } catch (const std::exception&) {
            return -std::numeric_limits<double>::infinity();
        }
    }

    [[nodiscard]] Eigen::VectorXd per_observation(const Eigen::VectorXd& theta) const {
        return breakdown(theta).per_observation;
    }

private:
    const MatX2& returns_;
    Layout lay_;
    VarMeanParams fixed_mean_;
    MatX2 fixed_eps_;
    Mat2 fixed_h0_;
};

// BEKK is invariant to a sign flip of a whole loading matrix; pin the
// representative with a nonnegative leading diagonal.
void normalize_signs(BekkParameters& bekk) {
    auto flip = [](Mat2& m) {
        const double lead = m(0, 0) != 0.0 ? m(0, 0) : m(1, 1);
        if (lead < 0.0) m = -m;
    };
    flip(bekk.A);
    flip(bekk.B);
}

}  // namespace

GarchFit fit_garch11(const Eigen::VectorXd& eps) {
    const Eigen::Index T = eps.size();
    if (T < 50) throw std::invalid_argument("fit_garch11: need T >= 50");
    if (!eps.allFinite()) throw std::invalid_argument("fit_garch11: non-finite input");
    const double var = eps.squaredNorm() / static_cast<double>(T);
    if (!(var > 0.0)) throw std::invalid_argument("fit_garch11: zero variance");

    const auto loglik = [&](const GarchParams& p) {
        double h = var;
        double ll = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) {
            ll += -0.5 * (std::log(2.0 * M_PI) + std::log(h) + eps[t] * eps[t] / h);
            h = p.alpha0 + p.alpha1 * eps[t] * eps[t] + p.beta1 * h;
            if (!std::isfinite(h)) return -std::numeric_limits<double>::infinity();
        }
        return std::isfinite(ll) ? ll : -std::numeric_limits<double>::infinity();
    };
    const Objective obj = [&](const Eigen::VectorXd& u) {
        return loglik({softplus(u[0]), softplus(u[1]), softplus(u[2])});
    };

    Eigen::VectorXd u0(3);
    u0 << softplus_inv(0.05 * var), softplus_inv(0.10), softplus_inv(0.80);
    const auto opt = maximize(obj, u0, BfgsOptions{.max_iterations = 400});

    GarchFit fit;
    fit.params = {softplus(opt.x[0]), softplus(opt.x[1]), softplus(opt.x[2])};
    fit.loglik = opt.value;
    fit.iterations = opt.iterations;
    fit.converged = opt.converged;
    return fit;
}

StartValues start_values(const MatX2& returns) {
    const Eigen::Index T = returns.rows();
    if (T < 50) throw std::invalid_argument("start_values: need T >= 50");

    const auto vf = fit_var1(returns, business_days(Date{2000, 1, 3}, static_cast<std::size_t>(T)));
    const MatX2& eps = vf.residuals.eps;

    double a[2], b[2];
    for (int j = 0; j < 2; ++j) {
        a[j] = 0.3;
        b[j] = 0.9;
        try {
            const auto g = fit_garch11(eps.col(j));
            if (g.converged && g.params.alpha1 >= 0.0 && g.params.beta1 >= 0.0) {
                a[j] = std::sqrt(g.params.alpha1);
                b[j] = std::sqrt(g.params.beta1);
            }
        } catch (const std::exception&) {
            // fixed defaults already in place
        }
        const double r = a[j] * a[j] + b[j] * b[j];
        if (r >= 0.98) {
            const double s = std::sqrt(0.96 / r);
            a[j] *= s;
            b[j] *= s;
        }
    }

    // match C'C to the residual covariance under the seeded loadings
    const Mat2 sigma = sample_covariance(eps);
    Mat2 cct;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) cct(i, j) = sigma(i, j) * (1.0 - a[i] * a[j] - b[i] * b[j]);

    StartValues sv;
    sv.mean = vf.params;
    sv.bekk.A = Mat2::Zero();
    sv.bekk.B = Mat2::Zero();
    sv.bekk.A(0, 0) = a[0];
    sv.bekk.A(1, 1) = a[1];
    sv.bekk.B(0, 0) = b[0];
    sv.bekk.B(1, 1) = b[1];

    Eigen::LLT<Mat2> llt(cct);
    if (llt.info() == Eigen::Success) {
        sv.bekk.C = Mat2(llt.matrixL()).transpose();
    } else {
        sv.bekk.C = Mat2::Zero();
        sv.bekk.C(0, 0) = std::sqrt(std::max(cct(0, 0), 1e-8 * sigma(0, 0)));
        sv.bekk.C(1, 1) = std::sqrt(std::max(cct(1, 1), 1e-8 * sigma(1, 1)));
    }
    // softplus transforms need strictly positive diagonals
    sv.bekk.C(0, 0) = std::max(sv.bekk.C(0, 0), 1e-8);
    sv.bekk.C(1, 1) = std::max(sv.bekk.C(1, 1), 1e-8);
    return sv;
}

RobustCovariance robust_covariance(const PerObservationLoglik& loglik_terms,
                                   const Eigen::VectorXd& theta, double rel_step) {
    const Eigen::Index k = theta.size();
    const Eigen::VectorXd base = loglik_terms(theta);
    const auto T = static_cast<double>(base.size());
    if (base.size() <= k)
        throw std::invalid_argument("robust_covariance: more parameters than observations");

    const auto step = [&](Eigen::Index i) { return rel_step * std::max(1.0, std::abs(theta[i])); };

    // scores by central differences; the same evaluations feed the
    // diagonal of the Hessian
    Eigen::MatrixXd scores(base.size(), k);
    std::vector<double> sum_plus(static_cast<std::size_t>(k)), sum_minus(static_cast<std::size_t>(k));
    Eigen::VectorXd th = theta;
    for (Eigen::Index i = 0; i < k; ++i) {
        const double h = step(i);
        th[i] = theta[i] + h;
        const Eigen::VectorXd fp = loglik_terms(th);
        th[i] = theta[i] - h;
        const Eigen::VectorXd fm = loglik_terms(th);
        th[i] = theta[i];
        scores.col(i) = (fp - fm) / (2.0 * h);
        sum_plus[static_cast<std::size_t>(i)] = fp.sum();
        sum_minus[static_cast<std::size_t>(i)] = fm.sum();
    }
    const Eigen::MatrixXd s_hat = scores.transpose() * scores / T;

    Eigen::MatrixXd hess(k, k);
    const double f0 = base.sum();
    for (Eigen::Index i = 0; i < k; ++i) {
        const double h = step(i);
        hess(i, i) = (sum_plus[static_cast<std::size_t>(i)] - 2.0 * f0 +
                      sum_minus[static_cast<std::size_t>(i)]) /
                     (h * h);
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const double hi = step(i);
            const double hj = step(j);
            th[i] = theta[i] + hi;
            th[j] = theta[j] + hj;
            const double fpp = loglik_terms(th).sum();
            th[j] = theta[j] - hj;
            const double fpm = loglik_terms(th).sum();
            th[i] = theta[i] - hi;
            const double fmm = loglik_terms(th).sum();
            th[j] = theta[j] + hj;
            const double fmp = loglik_terms(th).sum();
            th[i] = theta[i];
            th[j] = theta[j];
            hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }

    const Eigen::MatrixXd a_hat = -hess / T;  // average negative Hessian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_hat);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lam_max = lam.cwiseAbs().maxCoeff();

    RobustCovariance rc;
    rc.hessian_pd = lam.minCoeff() > 0.0;
    const double lam_min_abs = lam.cwiseAbs().minCoeff();
    rc.hessian_cond =
        lam_min_abs > 0.0 ? lam_max / lam_min_abs : std::numeric_limits<double>::infinity();

    Eigen::VectorXd inv_lam(k);
    for (Eigen::Index i = 0; i < k; ++i)
        inv_lam[i] = std::abs(lam[i]) > 1e-12 * lam_max ? 1.0 / lam[i] : 0.0;
    const Eigen::MatrixXd a_inv =
        es.eigenvectors() * inv_lam.asDiagonal() * es.eigenvectors().transpose();

    rc.V = a_inv * s_hat * a_inv / T;
    rc.se = rc.V.diagonal().cwiseMax(0.0).cwiseSqrt();
    return rc;
}

EstimationResult fit_bekk(const MatX2& returns, const OptimizerSettings& settings,
                          Distribution dist, MeanMode mode,
                          const std::optional<StartValues>& start) {
    settings.validate();
    const Eigen::Index T = returns.rows();
    if (T < 100) throw std::invalid_argument("fit_bekk: need T >= 100");
    if (!returns.allFinite()) throw std::invalid_argument("fit_bekk: non-finite returns");

    const Layout lay{mode, dist};

    // OLS mean: the two-step residual base, and fallback start elsewhere
    const auto ols =
        fit_var1(returns, business_days(Date{2000, 1, 3}, static_cast<std::size_t>(T)));

    StartValues sv = start ? *start : start_values(returns);
    if (mode == MeanMode::TwoStep) sv.mean = ols.params;
    if (dist == Distribution::StudentT && !sv.bekk.nu) sv.bekk.nu = 8.0;

    const SystemLoglik sys(returns, lay, ols.params);
    const Objective objective = [&](const Eigen::VectorXd& u) {
        return sys.total(to_constrained(lay, u));
    };

    const Eigen::VectorXd u0 = to_unconstrained(lay, pack(lay, sv.mean, sv.bekk));
    const BfgsOptions bfgs{.max_iterations = settings.max_iterations,
                           .gradient_tolerance = 3e-8,
                           .step_tolerance = settings.step_tolerance,
                           .fd_step = settings.fd_step};

    Rng jitter(Rng::split(settings.seed, 0));
    std::optional<BfgsResult> best;
    int attempts = 0;
    for (int a = 0; a <= settings.restarts; ++a) {
        Eigen::VectorXd u_start = u0;
        if (a > 0)
            for (Eigen::Index i = 0; i < u_start.size(); ++i)
                u_start[i] += 0.05 * (1.0 + std::abs(u0[i])) * jitter.normal();
        try {
            auto run = maximize(objective, u_start, bfgs);
            ++attempts;
            constexpr double tie = 1e-9;
            if (!best || run.value > best->value + tie ||
                (std::abs(run.value - best->value) <= tie && run.x.norm() < best->x.norm()))
                best = std::move(run);
        } catch (const std::invalid_argument&) {
            // likelihood non-finite at this start point
        }
    }
    if (!best) throw std::runtime_error("fit_bekk: likelihood non-finite at all start points");

    EstimationResult res;
    res.distribution = dist;
    res.mean_mode = mode;
    res.short_sample = T < 250;
    res.attempts = attempts;
    res.iterations = best->iterations;
    res.accepted_loglik = best->accepted;

    Eigen::VectorXd theta = to_constrained(lay, best->x);
    res.mean = ols.params;
    unpack(lay, theta, res.mean, res.bekk);
    normalize_signs(res.bekk);
    theta = pack(lay, res.mean, res.bekk);

    const auto breakdown = sys.breakdown(theta);
    res.loglik = breakdown.total;
    res.floor_activations = breakdown.floor_activations;
    res.stationarity_radius = stationarity_check(res.bekk).radius;

    const Eigen::VectorXd grad = fd_gradient(
        [&](const Eigen::VectorXd& th) { return sys.total(th); }, theta, settings.fd_step);
    res.max_abs_gradient = grad.cwiseAbs().maxCoeff();
    res.converged =
        res.max_abs_gradient <= settings.gradient_tolerance * std::max(1.0, std::abs(res.loglik));

    const auto rc = robust_covariance(
        [&](const Eigen::VectorXd& th) { return sys.per_observation(th); }, theta);
    res.parameter_names = parameter_names(lay);
    res.estimates = theta;
    res.robust_se = rc.se;
    res.robust_t.resize(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i)
        res.robust_t[i] = rc.se[i] > 0.0 ? theta[i] / rc.se[i] : 0.0;
    res.hessian_cond = rc.hessian_cond;
    res.hessian_pd = rc.hessian_pd;
    if (mode == MeanMode::TwoStep) res.mean_ols_se = ols.se;
    return res;
}

ConditionalPath fitted_path(const EstimationResult& fit, const MatX2& returns,
                            const std::vector<Date>& dates) {
    const auto resid = var_residuals(fit.mean, returns, dates);
    return conditional_path(fit.bekk, resid, sample_covariance(resid.eps));
}

MatX2 fitted_standardized_residuals(const EstimationResult& fit, const MatX2& returns) {
    const MatX2 eps = var_residual_values(fit.mean, returns);
    return standardized_residuals(fit.bekk, eps, sample_covariance(eps));
}

}  // namespace mgarch
