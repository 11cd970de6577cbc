#pragma once

#include <Eigen/Dense>

#include "lapreg/rbf_core.hpp"

// Batch kernels over row-major point sets. The functions in lapreg::kernels
// are OpenMP-parallel over rows and fuse the shared exp() between the RBF
// value and its Laplacian; lapreg::kernels::ref holds the serial reference
// path that composes the scalar operations one call at a time. Both paths
// accumulate in the same index order, so their outputs are bit-identical;
// the test suite asserts exact equality and tools/bench_kernels compares
// their throughput.

namespace lapreg::kernels {

/// Fills phi(i,j) = exp(-c * ||points.row(i) - centers.row(j)||^2) and
/// lap(i,j) = 2c * phi(i,j) * (2c * ||points.row(i) - centers.row(j)||^2 - m).
void kernel_matrices(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                     double c, Eigen::MatrixXd& phi, Eigen::MatrixXd& lap);

/// g(x_i) = sigmoid(u(x_i)) - lambda * lap u(x_i) for every row of points.
Eigen::VectorXd decision_values(const RbfExpansion& model, double lambda,
                                const Eigen::MatrixXd& points);

namespace ref {

void kernel_matrices(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                     double c, Eigen::MatrixXd& phi, Eigen::MatrixXd& lap);

Eigen::VectorXd decision_values(const RbfExpansion& model, double lambda,
                                const Eigen::MatrixXd& points);

}  // namespace ref

}  // namespace lapreg::kernels
