#include "lapreg/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace lapreg::kernels {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": feature dimension mismatch");
}

}  // namespace

void kernel_matrices(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                     double c, Eigen::MatrixXd& phi, Eigen::MatrixXd& lap) {
    require_same_dim(points.cols(), centers.cols(), "kernel_matrices");
    if (!(c > 0.0)) throw std::invalid_argument("kernel_matrices: c must be > 0");
    const Eigen::Index n = points.rows();
    const Eigen::Index k = centers.rows();
    const Eigen::Index m = points.cols();
    const double md = static_cast<double>(m);
    phi.resize(n, k);
    lap.resize(n, k);

#pragma omp parallel for schedule(static) if (n >= 16)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            double d2 = 0.0;
            for (Eigen::Index t = 0; t < m; ++t) {
                const double diff = points(i, t) - centers(j, t);
                d2 += diff * diff;
            }
            const double e = std::exp(-c * d2);
            phi(i, j) = e;
            lap(i, j) = 2.0 * c * e * (2.0 * c * d2 - md);
        }
    }
}

Eigen::VectorXd decision_values(const RbfExpansion& model, double lambda,
                                const Eigen::MatrixXd& points) {
    require_same_dim(points.cols(), model.dim(), "decision_values");
    if (lambda < 0.0) throw std::invalid_argument("decision_values: lambda must be >= 0");
    const Eigen::Index n = points.rows();
    const Eigen::Index k = model.num_centers();
    const Eigen::Index m = points.cols();
    const double c = model.c;
    const double md = static_cast<double>(m);
    Eigen::VectorXd g(n);

#pragma omp parallel for schedule(static) if (n >= 16)
    for (Eigen::Index i = 0; i < n; ++i) {
        double u = 0.0;
        double lap = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            double d2 = 0.0;
            for (Eigen::Index t = 0; t < m; ++t) {
                const double diff = points(i, t) - model.centers(j, t);
                d2 += diff * diff;
            }
            const double e = std::exp(-c * d2);
            u += model.weights[j] * e;
            lap += model.weights[j] * (2.0 * c * e * (2.0 * c * d2 - md));
        }
        g[i] = sigmoid(u) - lambda * lap;
    }
    return g;
}

}  // namespace lapreg::kernels
