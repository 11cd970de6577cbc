#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>

#include "lapreg/lm.hpp"
#include "lapreg/rbf_core.hpp"

namespace lapreg {

/// The model's parameter triplet: fitting degree c, regularization weight
/// lambda, damping eta.
struct Hyperparameters {
    double c = 1.0;
    double lambda = 0.0;
    double eta = 1.0;

    void validate() const;
};

/// Least-squares training problem for a fixed design: minimizes
/// S(w) = sum_i [y_i - g(x_i, w)]^2 with g = sigmoid(u) - lambda * lap u.
/// The kernel and Laplacian matrices are assembled once at construction;
/// residual and Jacobian evaluations are then matrix-vector work.
class TrainingProblem {
public:
    TrainingProblem(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Hyperparameters& hyper);

    /// r_i(w) = y_i - sigmoid(u(x_i, w)) + lambda * lap u(x_i, w).
    Eigen::VectorXd residuals(const Eigen::VectorXd& w) const;

    /// dr_i/dw_j = -[sigmoid'(u(x_i)) * phi_j(x_i) - lambda * lap phi_j(x_i)].
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& w) const;

    Eigen::Index size() const { return phi_.rows(); }

private:
    Eigen::MatrixXd phi_;  // N x N, phi_j(x_i)
    Eigen::MatrixXd lap_;  // N x N, lap phi_j(x_i)
    Eigen::VectorXd y_;
    double lambda_;
};

/// Fitted model: the RBF expansion (centers are the training inputs, one
/// weight per training point), the hyperparameters it was trained with, and
/// the solver trace. Immutable once fitted; shareable across threads.
struct RbfClassifier {
    RbfExpansion expansion;
    Hyperparameters hyper;
    std::optional<LmReport> fit_report;  // absent on models loaded from disk
};

/// Trains on standardized inputs: centers <- rows of x, w <- LM result from
/// w0 = 0, with hyper.eta overriding lm.eta. Rejects labels outside {0,1}
/// and single-class targets.
RbfClassifier fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const Hyperparameters& hyper, const LmConfig& lm);

/// g(x) for the fitted model.
double decision_value(const RbfClassifier& model, const Eigen::VectorXd& x);

/// 0 if g(x) <= 1/2, else 1 (the boundary goes to class 0).
int predict(const RbfClassifier& model, const Eigen::VectorXd& x);

/// Text serialization of {m, c, lambda, eta, K, centers, weights}. Floats
/// are written as C99 hexfloats, so a load reproduces the saved model
/// bit-exactly.
void save_classifier(std::ostream& out, const RbfClassifier& model);
RbfClassifier load_classifier(std::istream& in);

}  // namespace lapreg
