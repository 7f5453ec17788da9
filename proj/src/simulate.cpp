#include "mgarch/simulate.hpp"

#include "mgarch/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mgarch {

void SimSpec::validate() const {
    if (T < 1) throw std::invalid_argument("SimSpec: T must be >= 1");
    if (burn_in < 0) throw std::invalid_argument("SimSpec: burn_in must be >= 0");
    bekk.validate();
    if (innovation == Distribution::StudentT && !(bekk.nu && *bekk.nu > 2.0))
        throw std::invalid_argument("SimSpec: Student-t innovations need nu > 2");
    if (!origin.valid()) throw std::invalid_argument("SimSpec: invalid origin date");
}

SimResult simulate_bekk(const SimSpec& spec) {
    spec.validate();
    const auto check = stationarity_check(spec.bekk);

    Rng mixing(Rng::split(spec.seed, 0));
    Rng normal1(Rng::split(spec.seed, 1));
    Rng normal2(Rng::split(spec.seed, 2));
    const double nu = spec.bekk.nu.value_or(0.0);

    const Mat2 cct = spec.bekk.cct();
    Mat2 h = check.stationary ? bekk_unconditional_covariance(spec.bekk) : cct;
    Vec2 r_prev = Vec2::Zero();
    if (spec.mean.spectral_radius() < 1.0)
        r_prev = (Mat2::Identity() - spec.mean.phi).fullPivLu().solve(spec.mean.c);

    SimResult out;
    out.stationarity_radius = check.radius;
    out.stationary = check.stationary;
    out.eps.resize(spec.T, 2);
    out.true_path.h11.resize(spec.T);
    out.true_path.h12.resize(spec.T);
    out.true_path.h22.resize(spec.T);
    out.true_path.rho.resize(spec.T);
    out.true_path.dates = business_days(spec.origin, static_cast<std::size_t>(spec.T));

    Eigen::MatrixXd returns(spec.T, 2);
    const Eigen::Index total = spec.burn_in + spec.T;
    for (Eigen::Index t = 0; t < total; ++t) {
        Vec2 z(normal1.normal(), normal2.normal());
        if (spec.innovation == Distribution::StudentT) {
            const double w = mixing.chi_squared(nu);
            z *= std::sqrt((nu - 2.0) / w);  // standardized-t: unit covariance
        }
        const Vec2 eps = symmetric_sqrt(h) * z;
        const Vec2 r = spec.mean.c + spec.mean.phi * r_prev + eps;

        const Eigen::Index keep = t - spec.burn_in;
        if (keep >= 0) {
            out.eps.row(keep) = eps.transpose();
            returns.row(keep) = r.transpose();
            out.true_path.h11[keep] = h(0, 0);
            out.true_path.h12[keep] = h(0, 1);
            out.true_path.h22[keep] = h(1, 1);
            const double denom = h(0, 0) * h(1, 1);
            out.true_path.rho[keep] =
                denom > 0.0 ? std::clamp(h(0, 1) / std::sqrt(denom), -1.0, 1.0) : 0.0;
        }

        const Vec2 ae = spec.bekk.A.transpose() * eps;
        h = cct + ae * ae.transpose() + spec.bekk.B.transpose() * h * spec.bekk.B;
        r_prev = r;
        if (!h.allFinite() || !r.allFinite())
            throw std::runtime_error(
                "simulate_bekk: explosive path produced non-finite values (radius " +
                std::to_string(check.radius) + ")");
    }

    out.panel.dates = out.true_path.dates;
    out.panel.names = {spec.names[0], spec.names[1]};
    out.panel.values = returns;
    return out;
}

ReturnSeries simulate_garch11(const GarchParams& params, Eigen::Index T, std::uint64_t seed,
                              Eigen::Index burn_in) {
    params.validate();
    if (T < 1) throw std::invalid_argument("simulate_garch11: T must be >= 1");
    Rng gen(Rng::split(seed, 1));

    double h = params.stationary() ? params.unconditional_variance() : params.alpha0;
    ReturnSeries s;
    s.name = "garch11";
    s.unit = Unit::Percent;
    s.dates = business_days(Date{2000, 1, 3}, static_cast<std::size_t>(T));
    s.values.resize(T);
    for (Eigen::Index t = 0; t < burn_in + T; ++t) {
        const double x = std::sqrt(h) * gen.normal();
        if (t >= burn_in) s.values[t - burn_in] = x;
        h = params.alpha0 + params.alpha1 * x * x + params.beta1 * h;
        if (!std::isfinite(h))
            throw std::runtime_error("simulate_garch11: explosive variance path");
    }
    return s;
}

}  // namespace mgarch
