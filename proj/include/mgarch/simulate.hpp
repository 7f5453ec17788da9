#pragma once

#include "mgarch/garch.hpp"
#include "mgarch/mean.hpp"
#include "mgarch/types.hpp"

#include <array>
#include <cstdint>

namespace mgarch {

/// VAR(1)-BEKK(1,1) data-generating process. Innovations are drawn from
/// three substreams of `seed` (Rng::split): stream 0 feeds the Student-t
/// chi-square mixing variable, streams 1 and 2 the per-series normals.
struct SimSpec {
    VarMeanParams mean;
    BekkParameters bekk;
    Eigen::Index T = 0;
    Eigen::Index burn_in = 200;
    std::uint64_t seed = 1;
    Distribution innovation = Distribution::Gaussian;
    Date origin = {2000, 1, 3};
    std::array<std::string, 2> names = {"series1", "series2"};

    void validate() const;
};

struct SimResult {
    AlignedPanel panel;         // simulated returns on synthetic business days
    MatX2 eps;                  // true mean-equation residuals
    ConditionalPath true_path;  // covariance in effect for each retained date
    double stationarity_radius = 0.0;
    bool stationary = true;
};

/// Draw from the BEKK recursion: eps_t = H_t^{1/2} z_t with the symmetric
/// PSD square root, mean applied per the VAR equation, burn-in discarded.
/// Feeding `eps` back through bekk_filter with true_path.cov(0) as H0
/// reproduces true_path.cov(t+1) exactly.
SimResult simulate_bekk(const SimSpec& spec);

/// Univariate GARCH(1,1) draw (zero mean), same seeding scheme.
ReturnSeries simulate_garch11(const GarchParams& params, Eigen::Index T, std::uint64_t seed,
                              Eigen::Index burn_in = 200);

}  // namespace mgarch
