#pragma once

#include "mgarch/diagnostics.hpp"
#include "mgarch/mean.hpp"
#include "mgarch/types.hpp"

#include <optional>

namespace mgarch {

/// Univariate GARCH(1,1): h_next = alpha0 + alpha1 eps^2 + beta1 h.
struct GarchParams {
    double alpha0 = 0.0;  // level, > 0
    double alpha1 = 0.0;  // ARCH loading, >= 0
    double beta1 = 0.0;   // GARCH loading, >= 0

    [[nodiscard]] bool stationary() const { return alpha1 + beta1 < 1.0; }
    [[nodiscard]] double unconditional_variance() const {
        return alpha0 / (1.0 - alpha1 - beta1);
    }
    void validate() const;
};

/// Variance recursion. Output[t] is the variance updated after observing
/// eps[t]: out[t] = alpha0 + alpha1 eps[t]^2 + beta1 * (t ? out[t-1] : h0).
Eigen::VectorXd garch11_filter(const GarchParams& params, const Eigen::VectorXd& eps, double h0);

/// Bivariate BEKK(1,1) parameters for
///   H_next = C'C + A' eps eps' A + B' H B
/// with C upper triangular (11 free parameters). A(i,j) loads series i's
/// shock onto series j's variance — the ARCH side; B plays the same role
/// for lagged variance — the GARCH side. `nu` is the Student-t degrees of
/// freedom when the fat-tailed likelihood is used.
struct BekkParameters {
    Mat2 C = Mat2::Zero();  // C(1,0) identically zero
    Mat2 A = Mat2::Zero();
    Mat2 B = Mat2::Zero();
    std::optional<double> nu;

    [[nodiscard]] Mat2 cct() const { return C.transpose() * C; }
    void validate() const;

    static constexpr int free_parameter_count = 11;
};

/// Dated sequence of conditional covariance matrices with the derived
/// correlation rho_t = h12 / sqrt(h11 h22).
struct ConditionalPath {
    std::vector<Date> dates;
    Eigen::VectorXd h11, h12, h22, rho;

    [[nodiscard]] Eigen::Index size() const { return h11.size(); }
    [[nodiscard]] Mat2 cov(Eigen::Index t) const {
        Mat2 h;
        h << h11[t], h12[t], h12[t], h22[t];
        return h;
    }
};

/// BEKK covariance recursion with the same update convention as
/// garch11_filter: out[t] = C'C + A' eps_t eps_t' A + B' prev B.
/// Quadratic-form structure keeps every H_t symmetric PSD.
ConditionalPath bekk_filter(const BekkParameters& params, const ResidualPanel& eps,
                            const Mat2& H0);

/// In-effect covariance sequence: entry t is the covariance of eps_t given
/// data through t-1 (H0 for t = 0). This is what the likelihood scores
/// against and what correlation reports plot; it equals the bekk_filter
/// output shifted one step with H0 prepended.
ConditionalPath conditional_path(const BekkParameters& params, const ResidualPanel& eps,
                                 const Mat2& H0);

/// z_t = H_t^{-1/2} eps_t using the in-effect covariance sequence.
MatX2 standardized_residuals(const BekkParameters& params, const MatX2& eps, const Mat2& H0);

/// Population (1/T) covariance of a two-column residual block.
Mat2 sample_covariance(const MatX2& x);

/// Symmetric PSD square root / inverse square root via eigendecomposition.
Mat2 symmetric_sqrt(const Mat2& m);
Mat2 symmetric_inv_sqrt(const Mat2& m);

/// Eigenvalue floor at rel_floor * trace(H); `floored` reports whether a
/// projection was applied.
struct SpdFloor {
    Mat2 value;
    bool floored = false;
};
SpdFloor floor_spd(const Mat2& h, double rel_floor = 1e-10);

enum class Distribution { Gaussian, StudentT };

std::string to_string(Distribution d);

/// Log-likelihood of a residual panel under the BEKK recursion.
/// Observation t is scored against the covariance implied by data
/// through t-1 (H0 for the first observation). Near-singular covariances
/// are eigenvalue-floored before inversion and the activations counted.
struct LoglikBreakdown {
    double total = 0.0;
    Eigen::VectorXd per_observation;
    int floor_activations = 0;
};

LoglikBreakdown bekk_loglik(const BekkParameters& params, const MatX2& eps, const Mat2& H0,
                            Distribution dist);

/// Joint-system likelihoods over a bivariate return block: residuals come
/// from the VAR mean equation (first observation dropped) and H0 is their
/// sample covariance.
double gaussian_loglik(const BekkParameters& bekk, const VarMeanParams& mean,
                       const MatX2& returns);
double student_t_loglik(const BekkParameters& bekk, const VarMeanParams& mean,
                        const MatX2& returns);

/// Covariance-stationarity check: spectral radius of kron(A,A) + kron(B,B).
struct StationarityCheck {
    double radius = 0.0;
    bool stationary = false;
};
StationarityCheck stationarity_check(const BekkParameters& params);

Eigen::Matrix4d bekk_companion(const BekkParameters& params);

/// Unconditional covariance implied by a stationary BEKK specification;
/// throws when the spectral radius is >= 1.
Mat2 bekk_unconditional_covariance(const BekkParameters& params);

/// Order statistics and moments of a correlation path, Table-style.
struct CorrelationSummary {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    double mean = 0.0, std = 0.0, skewness = 0.0, excess_kurtosis = 0.0;
    TestResult ks;
};

/// Quartiles use linear interpolation on the sorted sample at (n-1)p.
CorrelationSummary correlation_summary(const ConditionalPath& path, bool lilliefors = false);

}  // namespace mgarch
