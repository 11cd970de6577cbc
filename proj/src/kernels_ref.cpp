#include <cmath>

#include "lapreg/kernels.hpp"

// Serial reference path. Composes the scalar rbf_core operations directly,
// one point at a time; intended for correctness, not speed.

namespace lapreg::kernels::ref {

void kernel_matrices(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                     double c, Eigen::MatrixXd& phi, Eigen::MatrixXd& lap) {
    const Eigen::Index n = points.rows();
    const Eigen::Index k = centers.rows();
    const double m = static_cast<double>(points.cols());
    phi.resize(n, k);
    lap.resize(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd x = points.row(i).transpose();
        for (Eigen::Index j = 0; j < k; ++j) {
            const Eigen::VectorXd cj = centers.row(j).transpose();
            const double p = rbf_eval(x, cj, c);
            double d2 = 0.0;
            for (Eigen::Index t = 0; t < x.size(); ++t) {
                const double diff = x[t] - cj[t];
                d2 += diff * diff;
            }
            phi(i, j) = p;
            lap(i, j) = 2.0 * c * p * (2.0 * c * d2 - m);
        }
    }
}

Eigen::VectorXd decision_values(const RbfExpansion& model, double lambda,
                                const Eigen::MatrixXd& points) {
    Eigen::VectorXd g(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        g[i] = g_eval(model, lambda, points.row(i).transpose());
    }
    return g;
}

}  // namespace lapreg::kernels::ref
