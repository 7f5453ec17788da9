#include "mgarch/garch.hpp"

#include "mgarch/distributions.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgarch {

void GarchParams::validate() const {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("garch: alpha0 must be > 0");
    if (alpha1 < 0.0 || beta1 < 0.0)
        throw std::invalid_argument("garch: alpha1 and beta1 must be >= 0");
    if (!std::isfinite(alpha0 + alpha1 + beta1))
        throw std::invalid_argument("garch: non-finite parameters");
}

Eigen::VectorXd garch11_filter(const GarchParams& params, const Eigen::VectorXd& eps, double h0) {
    params.validate();
    if (!(h0 > 0.0)) throw std::invalid_argument("garch11_filter: h0 must be > 0");
    Eigen::VectorXd h(eps.size());
    double prev = h0;
    for (Eigen::Index t = 0; t < eps.size(); ++t) {
        prev = params.alpha0 + params.alpha1 * eps[t] * eps[t] + params.beta1 * prev;
        if (!std::isfinite(prev))
            throw std::runtime_error("garch11_filter: non-finite variance at index " +
                                     std::to_string(t));
        h[t] = prev;
    }
    return h;
}

void BekkParameters::validate() const {
    if (!C.allFinite() || !A.allFinite() || !B.allFinite())
        throw std::invalid_argument("bekk: non-finite parameter matrix");
    if (C(1, 0) != 0.0) throw std::invalid_argument("bekk: C must be upper triangular");
    if (nu && !(*nu > 2.0)) throw std::invalid_argument("bekk: nu must exceed 2");
}

Mat2 sample_covariance(const MatX2& x) {
    if (x.rows() < 2) throw std::invalid_argument("sample_covariance: need T >= 2");
    const Eigen::RowVector2d mean = x.colwise().mean();
    const MatX2 c = x.rowwise() - mean;
    return (c.transpose() * c) / static_cast<double>(x.rows());
}

Mat2 symmetric_sqrt(const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    const Vec2 lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Mat2 symmetric_inv_sqrt(const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    const Vec2 lam = es.eigenvalues();
    if (!(lam.minCoeff() > 0.0))
        throw std::invalid_argument("symmetric_inv_sqrt: matrix not positive definite");
    return es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

SpdFloor floor_spd(const Mat2& h, double rel_floor) {
    const double tr = h.trace();
    const double floor = rel_floor * std::abs(tr);
    // closed-form 2x2 eigenvalues
    const double mid = 0.5 * tr;
    const double half_diff = 0.5 * (h(0, 0) - h(1, 1));
    const double disc = std::sqrt(std::max(0.0, half_diff * half_diff + h(0, 1) * h(1, 0)));
    const double lam_min = mid - disc;
    if (lam_min >= floor && floor > 0.0) return {h, false};
    if (!(tr > 0.0)) throw std::runtime_error("floor_spd: covariance trace not positive");

    Eigen::SelfAdjointEigenSolver<Mat2> es(h);
    const Vec2 lam = es.eigenvalues().cwiseMax(floor);
    Mat2 out = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    out = 0.5 * (out + out.transpose());
    return {out, true};
}

namespace {

Mat2 bekk_update(const BekkParameters& p, const Mat2& cct, const Eigen::RowVector2d& eps,
                 const Mat2& prev) {
    const Vec2 ae = p.A.transpose() * eps.transpose();
    return cct + ae * ae.transpose() + p.B.transpose() * prev * p.B;
}

double correlation_from(const Mat2& h) {
    const double denom = h(0, 0) * h(1, 1);
    if (!(denom > 0.0)) return 0.0;
    return std::clamp(h(0, 1) / std::sqrt(denom), -1.0, 1.0);
}

}  // namespace

ConditionalPath bekk_filter(const BekkParameters& params, const ResidualPanel& eps,
                            const Mat2& H0) {
    params.validate();
    const Eigen::Index T = eps.T();
    if (T < 1) throw std::invalid_argument("bekk_filter: empty panel");
    if ((H0 - H0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H0.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("bekk_filter: H0 not symmetric");

    const Mat2 cct = params.cct();
    ConditionalPath path;
    path.dates = eps.dates;
    path.h11.resize(T);
    path.h12.resize(T);
    path.h22.resize(T);
    path.rho.resize(T);

    Mat2 h = H0;
    for (Eigen::Index t = 0; t < T; ++t) {
        h = bekk_update(params, cct, eps.eps.row(t), h);
        if (!h.allFinite())
            throw std::runtime_error("bekk_filter: non-finite covariance at index " +
                                     std::to_string(t));
        path.h11[t] = h(0, 0);
        path.h12[t] = 0.5 * (h(0, 1) + h(1, 0));
        path.h22[t] = h(1, 1);
        path.rho[t] = correlation_from(h);
    }
    return path;
}

ConditionalPath conditional_path(const BekkParameters& params, const ResidualPanel& eps,
                                 const Mat2& H0) {
    params.validate();
    const Eigen::Index T = eps.T();
    if (T < 1) throw std::invalid_argument("conditional_path: empty panel");

    const Mat2 cct = params.cct();
    ConditionalPath path;
    path.dates = eps.dates;
    path.h11.resize(T);
    path.h12.resize(T);
    path.h22.resize(T);
    path.rho.resize(T);

    Mat2 h = H0;
    for (Eigen::Index t = 0; t < T; ++t) {
        path.h11[t] = h(0, 0);
        path.h12[t] = 0.5 * (h(0, 1) + h(1, 0));
        path.h22[t] = h(1, 1);
        path.rho[t] = correlation_from(h);
        h = bekk_update(params, cct, eps.eps.row(t), h);
        if (!h.allFinite())
            throw std::runtime_error("conditional_path: non-finite covariance at index " +
                                     std::to_string(t));
    }
    return path;
}

MatX2 standardized_residuals(const BekkParameters& params, const MatX2& eps, const Mat2& H0) {
    params.validate();
    const Eigen::Index T = eps.rows();
    if (T < 1) throw std::invalid_argument("standardized_residuals: empty panel");

    const Mat2 cct = params.cct();
    MatX2 z(T, 2);
    Mat2 h = H0;
    for (Eigen::Index t = 0; t < T; ++t) {
        const Mat2 floored = floor_spd(h).value;
        z.row(t) = (symmetric_inv_sqrt(floored) * eps.row(t).transpose()).transpose();
        h = bekk_update(params, cct, eps.row(t), h);
        if (!h.allFinite())
            throw std::runtime_error("standardized_residuals: non-finite covariance at index " +
                                     std::to_string(t));
    }
    return z;
}

namespace {

struct ObsTerm {
    double loglik;
    bool floored;
};

ObsTerm observation_loglik(const Mat2& h_raw, const Eigen::RowVector2d& eps, Distribution dist,
                           double nu) {
    const auto [h, floored] = floor_spd(h_raw);
    const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(0, 1);
    if (!(det > 0.0)) throw std::runtime_error("bekk_loglik: singular covariance beyond floor");
    const double e1 = eps[0];
    const double e2 = eps[1];
    const double quad = (h(1, 1) * e1 * e1 - 2.0 * h(0, 1) * e1 * e2 + h(0, 0) * e2 * e2) / det;

    double ll;
    if (dist == Distribution::Gaussian) {
        ll = -0.5 * (2.0 * std::log(2.0 * M_PI) + std::log(det) + quad);
    } else {
        const double scale = (nu - 2.0) / nu;  // H is the covariance, not the t scale
        ll = std::lgamma(0.5 * (nu + 2.0)) - std::lgamma(0.5 * nu) - std::log(nu * M_PI) -
             0.5 * (std::log(det) + 2.0 * std::log(scale)) -
             0.5 * (nu + 2.0) * std::log1p(quad / (nu * scale));
    }
    return {ll, floored};
}

}  // namespace

LoglikBreakdown bekk_loglik(const BekkParameters& params, const MatX2& eps, const Mat2& H0,
                            Distribution dist) {
    params.validate();
    if (dist == Distribution::StudentT && !params.nu)
        throw std::invalid_argument("bekk_loglik: Student-t requested without nu");
    const double nu = params.nu.value_or(0.0);
    const Eigen::Index T = eps.rows();
    if (T < 1) throw std::invalid_argument("bekk_loglik: empty panel");

    const Mat2 cct = params.cct();
    LoglikBreakdown out;
    out.per_observation.resize(T);
    Mat2 h = H0;  // covariance in effect for the first observation
    for (Eigen::Index t = 0; t < T; ++t) {
        const auto term = observation_loglik(h, eps.row(t), dist, nu);
        out.per_observation[t] = term.loglik;
        out.total += term.loglik;
        out.floor_activations += term.floored ? 1 : 0;
        h = bekk_update(params, cct, eps.row(t), h);
        if (!h.allFinite())
            throw std::runtime_error("bekk_loglik: non-finite covariance at index " +
                                     std::to_string(t));
    }
    if (!std::isfinite(out.total)) throw std::runtime_error("bekk_loglik: non-finite total");
    return out;
}

namespace {

double system_loglik(const BekkParameters& bekk, const VarMeanParams& mean,
                     const MatX2& returns, Distribution dist) {
    const MatX2 eps = var_residual_values(mean, returns);
    const Mat2 h0 = sample_covariance(eps);
    return bekk_loglik(bekk, eps, h0, dist).total;
}

}  // namespace

double gaussian_loglik(const BekkParameters& bekk, const VarMeanParams& mean,
                       const MatX2& returns) {
    return system_loglik(bekk, mean, returns, Distribution::Gaussian);
}

double student_t_loglik(const BekkParameters& bekk, const VarMeanParams& mean,
                        const MatX2& returns) {
    if (!bekk.nu) throw std::invalid_argument("student_t_loglik: nu not set");
    return system_loglik(bekk, mean, returns, Distribution::StudentT);
}

Eigen::Matrix4d bekk_companion(const BekkParameters& params) {
    auto kron2 = [](const Mat2& m) {
        Eigen::Matrix4d k;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = m(i, j) * m;
        return k;
    };
    return kron2(params.A) + kron2(params.B);
}

StationarityCheck stationarity_check(const BekkParameters& params) {
    params.validate();
    const Eigen::Matrix4d k = bekk_companion(params);
    const double radius = k.eigenvalues().cwiseAbs().maxCoeff();
    return {radius, radius < 1.0};
}

Mat2 bekk_unconditional_covariance(const BekkParameters& params) {
    const auto check = stationarity_check(params);
    if (!check.stationary)
        throw std::runtime_error("bekk_unconditional_covariance: non-stationary (radius " +
                                 std::to_string(check.radius) + ")");
    const Eigen::Matrix4d k = bekk_companion(params);
    const Mat2 cct = params.cct();
    Eigen::Vector4d vec_c;
    vec_c << cct(0, 0), cct(1, 0), cct(0, 1), cct(1, 1);  // column-major vec
    const Eigen::Vector4d vec_sigma =
        (Eigen::Matrix4d::Identity() - k.transpose()).fullPivLu().solve(vec_c);
    Mat2 sigma;
    sigma << vec_sigma[0], vec_sigma[2], vec_sigma[1], vec_sigma[3];
    return 0.5 * (sigma + sigma.transpose());
}

std::string to_string(Distribution d) {
    return d == Distribution::Gaussian ? "gaussian" : "student_t";
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

CorrelationSummary correlation_summary(const ConditionalPath& path, bool lilliefors) {
    if (path.size() < 8) throw std::invalid_argument("correlation_summary: need >= 8 points");
    std::vector<double> sorted(path.rho.data(), path.rho.data() + path.rho.size());
    std::sort(sorted.begin(), sorted.end());

    CorrelationSummary s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.50);
    s.q3 = quantile_sorted(sorted, 0.75);
    const auto m = moment_summary(path.rho);
    s.mean = m.mean;
    s.std = std::sqrt(m.variance);
    s.skewness = m.skewness;
    s.excess_kurtosis = m.excess_kurtosis;
    s.ks = m.variance > 0.0 ? ks_normality(path.rho, lilliefors)
                            : TestResult{"ks", 0.0, 0, 1.0};
    return s;
}

}  // namespace mgarch
