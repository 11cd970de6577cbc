#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace lapreg {

enum class LmMode {
    kFixedDamping,  // constant eta * I, temporary x10 boost on rejected steps
    kAdaptive,      // Marquardt diagonal scaling with eta adapted per step
};

enum class LmStop {
    kStepTol,
    kCostTol,
    kMaxIter,
    kSingularSystem,
};

std::string to_string(LmStop stop);

struct LmConfig {
    double eta = 1.0;          // damping strength
    int max_iter = 100;        // solve/evaluate passes, accepted or rejected
    double step_tol = 1e-8;    // inf-norm of the accepted step
    double cost_tol = 1e-10;   // relative decrease of the cost
    LmMode mode = LmMode::kFixedDamping;

    void validate() const;
};

/// Convergence trace of one minimization. cost_history holds the cost of the
/// initial point followed by every accepted iterate, so with fixed damping it
/// is non-increasing by construction.
struct LmReport {
    int iterations = 0;        // accepted steps
    int rejected_steps = 0;
    std::vector<double> cost_history;
    LmStop termination = LmStop::kMaxIter;

    double initial_cost() const { return cost_history.front(); }
    double final_cost() const { return cost_history.back(); }
    bool cost_monotone() const;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct LmResult {
    Eigen::VectorXd w;
    LmReport report;
};

/// Damped nonlinear least squares: minimizes S(w) = ||r(w)||^2 by iterating
/// w <- w + delta with (J^T J + eta I) delta = -J^T r, J = dr/dw. Steps that
/// would increase S are rejected and retried with the damping boosted x10
/// (reset after the next accepted step). The normal system is factorized as
/// SPD with a small jitter escalation on failure; if it still cannot be
/// solved the best iterate so far is returned with termination
/// kSingularSystem. NaN residuals raise NumericError naming the iterate.
LmResult lm_minimize(const ResidualFn& residual_fn, const JacobianFn& jacobian_fn,
                     const Eigen::VectorXd& w0, const LmConfig& config);

/// Central-difference Jacobian, column j = (r(w + h e_j) - r(w - h e_j)) / 2h.
Eigen::MatrixXd numeric_jacobian(const ResidualFn& residual_fn, const Eigen::VectorXd& w,
                                 double h);

}  // namespace lapreg
