#include "mgarch/diagnostics.hpp"

#include "mgarch/distributions.hpp"
#include "mgarch/ols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgarch {

namespace {

void require_finite(const Eigen::VectorXd& x, const char* who) {
    if (!x.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}

double central_moment(const Eigen::VectorXd& x, double mean, int k) {
    return (x.array() - mean).pow(k).mean();
}

// MacKinnon (1994/2010) response surfaces, single-series case.
struct MacKinnonTable {
    double tau_max, tau_min, tau_star;
    double smallp[3];  // quadratic in the statistic
    double largep[4];  // cubic in the statistic
    double crit[3][4];  // rows 1%, 5%, 10%; columns 1, 1/T, 1/T^2, 1/T^3
};

constexpr MacKinnonTable kMacKinnonConstant = {
    2.74, -18.83, -1.61,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368},
    {{-3.43035, -6.5393, -16.786, -79.433},
     {-2.86154, -2.8903, -4.234, -40.040},
     {-2.56677, -1.5384, -2.809, 0.0}},
};

constexpr MacKinnonTable kMacKinnonTrend = {
    0.70, -16.18, -2.89,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285},
    {{-3.95877, -9.0531, -28.428, -134.155},
     {-3.41049, -4.3904, -9.036, -45.374},
     {-3.12705, -2.5856, -3.925, -22.380}},
};

const MacKinnonTable& mackinnon_table(AdfSpec spec) {
    return spec == AdfSpec::Constant ? kMacKinnonConstant : kMacKinnonTrend;
}

double mackinnon_pvalue(double stat, AdfSpec spec) {
    const auto& tab = mackinnon_table(spec);
    if (stat > tab.tau_max) return 1.0;
    if (stat < tab.tau_min) return 0.0;
    double z;
    if (stat <= tab.tau_star) {
        const auto& c = tab.smallp;
        z = c[0] + c[1] * stat + c[2] * stat * stat;
    } else {
        const auto& c = tab.largep;
        z = c[0] + c[1] * stat + c[2] * stat * stat + c[3] * stat * stat * stat;
    }
    return normal_cdf(z);
}

// Design matrix for the ADF regression of dx_t on x_{t-1}, lagged dx,
// and deterministic terms; returns usable row count through `n`.
Eigen::MatrixXd adf_design(const Eigen::VectorXd& x, int lags, AdfSpec spec, Eigen::VectorXd& dy) {
    const Eigen::Index T = x.size();
    const Eigen::Index nd = T - 1;          // length of the differenced series
    const Eigen::Index n = nd - lags;       // usable rows
    const int k = 2 + lags + (spec == AdfSpec::ConstantTrend ? 1 : 0);
    Eigen::VectorXd dx(nd);
    for (Eigen::Index t = 0; t < nd; ++t) dx[t] = x[t + 1] - x[t];

    Eigen::MatrixXd X(n, k);
    dy.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index t = i + lags;  // index into dx
        dy[i] = dx[t];
        X(i, 0) = x[t];  // level lagged once relative to dx_t
        for (int j = 1; j <= lags; ++j) X(i, j) = dx[t - j];
        X(i, lags + 1) = 1.0;
        if (spec == AdfSpec::ConstantTrend) X(i, lags + 2) = static_cast<double>(i + 1);
    }
    return X;
}

}  // namespace

MomentSummary moment_summary(const Eigen::VectorXd& x) {
    require_finite(x, "moment_summary");
    if (x.size() < 4) throw std::invalid_argument("moment_summary: need T >= 4");
    MomentSummary m;
    m.T = static_cast<long>(x.size());
    m.mean = x.mean();
    const double m2 = central_moment(x, m.mean, 2);
    m.variance = m2;
    if (m2 <= 0.0) {
        m.higher_moments_defined = false;
        return m;
    }
    const double m3 = central_moment(x, m.mean, 3);
    const double m4 = central_moment(x, m.mean, 4);
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return m;
}

CorrelationMatrix correlation_matrix(const AlignedPanel& panel) {
    panel.validate();
    if (panel.T() < 3) throw std::invalid_argument("correlation_matrix: need T >= 3");
    const Eigen::Index n = panel.width();
    Eigen::VectorXd mean(n), sd(n);
    Eigen::MatrixXd centered = panel.values;
    for (Eigen::Index j = 0; j < n; ++j) {
        mean[j] = panel.values.col(j).mean();
        centered.col(j).array() -= mean[j];
        sd[j] = std::sqrt(centered.col(j).squaredNorm());
        if (sd[j] <= 0.0)
            throw std::invalid_argument("correlation_matrix: zero-variance series '" +
                                        panel.names[static_cast<std::size_t>(j)] + "'");
    }
    CorrelationMatrix out;
    out.labels = panel.names;
    out.values.setIdentity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = centered.col(i).dot(centered.col(j)) / (sd[i] * sd[j]);
            out.values(i, j) = r;
            out.values(j, i) = r;
        }
    return out;
}

AcfResult acf(const Eigen::VectorXd& x, int max_lag) {
    require_finite(x, "acf");
    const Eigen::Index T = x.size();
    if (max_lag < 1 || T <= max_lag) throw std::invalid_argument("acf: need T > K >= 1");
    const double mean = x.mean();
    const Eigen::ArrayXd c = x.array() - mean;
    const double denom = (c * c).sum();
    if (denom <= 0.0) throw std::invalid_argument("acf: zero variance");

    AcfResult r;
    r.T = static_cast<long>(T);
    r.band = 1.96 / std::sqrt(static_cast<double>(T));
    r.coefficients.resize(max_lag);
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (Eigen::Index t = k; t < T; ++t) num += c[t] * c[t - k];
        r.coefficients[k - 1] = num / denom;
    }
    return r;
}

TestResult ljung_box(const Eigen::VectorXd& x, int max_lag) {
    const auto r = acf(x, max_lag);
    const auto T = static_cast<double>(r.T);
    double q = 0.0;
    for (int k = 1; k <= max_lag; ++k)
        q += r.coefficients[k - 1] * r.coefficients[k - 1] / (T - k);
    q *= T * (T + 2.0);
    return TestResult{"ljung_box", q, max_lag, chi_squared_sf(q, max_lag)};
}

TestResult lm_arch(const Eigen::VectorXd& x, int order) {
    require_finite(x, "lm_arch");
    const Eigen::Index T = x.size();
    if (order < 1 || T <= 2 * order + 1)
        throw std::invalid_argument("lm_arch: need T > 2p + 1, p >= 1");
    const Eigen::ArrayXd sq = x.array().square();
    const Eigen::Index n = T - order;
    Eigen::MatrixXd X(n, order + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] = sq[i + order];
        X(i, 0) = 1.0;
        for (int j = 1; j <= order; ++j) X(i, j) = sq[i + order - j];
    }
    const auto fit = ols(X, y);
    const double stat = static_cast<double>(n) * fit.r_squared();
    return TestResult{"lm_arch", stat, order, chi_squared_sf(stat, order)};
}

TestResult jarque_bera(const Eigen::VectorXd& x) {
    const auto m = moment_summary(x);
    if (!m.higher_moments_defined) throw std::invalid_argument("jarque_bera: zero variance");
    const double jb = m.T / 6.0 *
                      (m.skewness * m.skewness + m.excess_kurtosis * m.excess_kurtosis / 4.0);
    return TestResult{"jarque_bera", jb, 2, chi_squared_sf(jb, 2)};
}

Eigen::Vector3d adf_critical_values(long T, AdfSpec spec) {
    const auto& tab = mackinnon_table(spec);
    Eigen::Vector3d out;
    const double t = static_cast<double>(T);
    for (int i = 0; i < 3; ++i) {
        const auto& c = tab.crit[i];
        out[i] = c[0] + c[1] / t + c[2] / (t * t) + c[3] / (t * t * t);
    }
    return out;
}

TestResult adf_test(const Eigen::VectorXd& x, int lags, AdfSpec spec) {
    require_finite(x, "adf_test");
    if (lags < 0) throw std::invalid_argument("adf_test: negative lag order");
    if (x.size() <= lags + 10) throw std::invalid_argument("adf_test: insufficient sample");

    Eigen::VectorXd dy;
    const Eigen::MatrixXd X = adf_design(x, lags, spec, dy);
    const auto fit = ols(X, dy);
    if (fit.rank < X.cols()) throw std::runtime_error("adf_test: collinear regressors");
    // an (essentially) exact fit leaves no residual scale for the t-ratio
    if (fit.sse <= 1e-12 * std::max(1.0, dy.squaredNorm()))
        throw std::runtime_error("adf_test: degenerate (near-exact) fit");
    if (!(fit.se[0] > 0.0)) throw std::runtime_error("adf_test: zero standard error");

    const double stat = fit.beta[0] / fit.se[0];
    return TestResult{"adf", stat, lags, mackinnon_pvalue(stat, spec)};
}

int adf_auto_lags(const Eigen::VectorXd& x, int max_lags, AdfSpec spec) {
    if (max_lags < 0) throw std::invalid_argument("adf_auto_lags: negative max_lags");
    int best = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_lags; ++p) {
        if (x.size() <= p + 10) break;
        Eigen::VectorXd dy;
        // keep the estimation window fixed across candidate lag orders
        const Eigen::VectorXd tail = x.tail(x.size() - (max_lags - p));
        const Eigen::MatrixXd X = adf_design(tail, p, spec, dy);
        const auto fit = ols(X, dy);
        const auto n = static_cast<double>(dy.size());
        if (fit.sse <= 0.0) continue;
        const double aic = n * std::log(fit.sse / n) + 2.0 * X.cols();
        if (aic < best_aic) {
            best_aic = aic;
            best = p;
        }
    }
    return best;
}

TestResult ks_normality(const Eigen::VectorXd& x, bool lilliefors) {
    require_finite(x, "ks_normality");
    const Eigen::Index n = x.size();
    if (n < 8) throw std::invalid_argument("ks_normality: need T >= 8");
    const double mean = x.mean();
    const double sd = std::sqrt(central_moment(x, mean, 2));
    if (!(sd > 0.0)) throw std::invalid_argument("ks_normality: zero variance");

    std::vector<double> sorted(x.data(), x.data() + n);
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z = normal_cdf((sorted[static_cast<std::size_t>(i)] - mean) / sd);
        const double hi = static_cast<double>(i + 1) / n - z;
        const double lo = z - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    const double p = lilliefors ? lilliefors_pvalue(d, static_cast<long>(n))
                                : kolmogorov_sf(std::sqrt(static_cast<double>(n)) * d);
    return TestResult{lilliefors ? "ks_lilliefors" : "ks", d, 0, p};
}

}  // namespace mgarch
