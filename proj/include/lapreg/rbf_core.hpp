#pragma once

#include <Eigen/Dense>

namespace lapreg {

/// Gaussian RBF expansion u(x) = sum_i w_i * exp(-c * ||x - center_i||^2).
///
/// Centers are stored row-major (K x m); there is one weight per center.
/// The sharpness parameter c is called the fitting degree.
struct RbfExpansion {
    Eigen::MatrixXd centers;  // K x m
    Eigen::VectorXd weights;  // K
    double c = 1.0;

    Eigen::Index num_centers() const { return centers.rows(); }
    Eigen::Index dim() const { return centers.cols(); }

    /// Throws std::invalid_argument if any structural invariant is broken:
    /// K >= 1, m >= 1, weights.size() == K, c > 0, all values finite.
    void validate() const;
};

/// exp(-c * ||x - center||^2), in (0, 1]. Equals 1 exactly when the
/// rounded squared distance is zero.
double rbf_eval(const Eigen::VectorXd& x, const Eigen::VectorXd& center, double c);

/// u(x) = sum_i w_i * phi_i(x).
double u_eval(const RbfExpansion& model, const Eigen::VectorXd& x);

/// Analytic Laplacian of the expansion:
///   lap phi_i(x) = 2c * phi_i(x) * (2c * ||x - x_i||^2 - m)
/// summed with the weights. Checked against central finite differences in
/// the test suite before anything downstream relies on it.
double laplacian_u(const RbfExpansion& model, const Eigen::VectorXd& x);

/// Overflow-safe logistic function, saturating to exactly 0 / 1 for large
/// negative / positive arguments.
double sigmoid(double t);

/// sigma'(t) = sigma(t) * (1 - sigma(t)).
double sigmoid_prime(double t);

/// Decision function g(x) = sigmoid(u(x)) - lambda * lap u(x).
/// Bounded in (0,1) when lambda == 0, unbounded otherwise.
double g_eval(const RbfExpansion& model, double lambda, const Eigen::VectorXd& x);

}  // namespace lapreg
