#include "mgarch/ols.hpp"

#include <stdexcept>

namespace mgarch {

OlsResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("ols: row mismatch");
    if (X.rows() <= X.cols()) throw std::invalid_argument("ols: need more rows than columns");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    OlsResult r;
    r.rank = qr.rank();
    r.beta = qr.solve(y);
    r.residuals = y - X * r.beta;
    r.sse = r.residuals.squaredNorm();
    const double ybar = y.mean();
    r.tss_centered = (y.array() - ybar).matrix().squaredNorm();
    const auto dof = static_cast<double>(X.rows() - X.cols());
    r.sigma2 = r.sse / dof;

    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X)
            .ldlt()
            .solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    r.se = (r.sigma2 * xtx_inv.diagonal().array()).cwiseMax(0.0).sqrt();
    return r;
}

}  // namespace mgarch
