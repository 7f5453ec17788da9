#pragma once

#include "mgarch/types.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mgarch {

/// First four moments under population (1/T) normalization.
/// Kurtosis is reported as excess (normal = 0) throughout.
struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    long T = 0;
    /// False when variance is zero; skewness/kurtosis are then meaningless.
    bool higher_moments_defined = true;
};

struct CorrelationMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;  // symmetric, unit diagonal
};

/// Sample autocorrelations rho_1..rho_K with the +-1.96/sqrt(T) band.
struct AcfResult {
    Eigen::VectorXd coefficients;  // coefficients[k-1] = rho_k
    double band = 0.0;
    long T = 0;
};

/// Generic hypothesis-test outcome. `order` holds the lag count or the
/// degrees of freedom, depending on the test.
struct TestResult {
    std::string name;
    double statistic = 0.0;
    int order = 0;
    double p_value = 1.0;
};

MomentSummary moment_summary(const Eigen::VectorXd& x);
inline MomentSummary moment_summary(const ReturnSeries& s) { return moment_summary(s.values); }

/// Pairwise Pearson correlations; throws naming any zero-variance series.
CorrelationMatrix correlation_matrix(const AlignedPanel& panel);

AcfResult acf(const Eigen::VectorXd& x, int max_lag);

/// Ljung-Box portmanteau test, Q = T(T+2) sum rho_k^2/(T-k), chi2(K).
TestResult ljung_box(const Eigen::VectorXd& x, int max_lag);

/// Engle LM test for ARCH of order p: regress x_t^2 on its own p lags,
/// statistic = (usable T) * R^2, chi2(p).
TestResult lm_arch(const Eigen::VectorXd& x, int order);

/// Jarque-Bera normality test: T/6 (S^2 + K_excess^2/4), chi2(2).
TestResult jarque_bera(const Eigen::VectorXd& x);

enum class AdfSpec { Constant, ConstantTrend };

/// Augmented Dickey-Fuller unit-root t-test with MacKinnon p-values.
TestResult adf_test(const Eigen::VectorXd& x, int lags, AdfSpec spec = AdfSpec::Constant);

/// AIC-minimizing lag order over 0..max_lags for adf_test.
int adf_auto_lags(const Eigen::VectorXd& x, int max_lags, AdfSpec spec = AdfSpec::Constant);

/// MacKinnon response-surface critical values {1%, 5%, 10%} at sample size T.
Eigen::Vector3d adf_critical_values(long T, AdfSpec spec);

/// Kolmogorov-Smirnov normality test against N(sample mean, sample SD).
/// With `lilliefors` set, p-values use the Dallal-Wilkinson approximation
/// for estimated parameters; otherwise the asymptotic Kolmogorov law.
TestResult ks_normality(const Eigen::VectorXd& x, bool lilliefors = false);

}  // namespace mgarch
