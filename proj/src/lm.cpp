#include "lapreg/lm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lapreg/errors.hpp"

namespace lapreg {

namespace {

// Jitter escalation for the SPD factorization: 1e-10, then x10, three tries.
constexpr double kJitterBase = 1e-10;
constexpr int kJitterTries = 3;

bool spd_solve(const Eigen::MatrixXd& normal, double damping, const Eigen::VectorXd& rhs,
               Eigen::VectorXd& out) {
    double jitter = 0.0;
    for (int attempt = 0; attempt <= kJitterTries; ++attempt) {
        Eigen::MatrixXd a = normal;
        a.diagonal().array() += damping + jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) {
            out = llt.solve(rhs);
            if (out.allFinite()) return true;
        }
        jitter = (jitter == 0.0) ? kJitterBase : jitter * 10.0;
    }
    return false;
}

}  // namespace

std::string to_string(LmStop stop) {
    switch (stop) {
        case LmStop::kStepTol: return "step_tol";
        case LmStop::kCostTol: return "cost_tol";
        case LmStop::kMaxIter: return "max_iter";
        case LmStop::kSingularSystem: return "singular_system";
    }
    return "unknown";
}

void LmConfig::validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("LmConfig: eta must be > 0");
    if (max_iter < 1) throw std::invalid_argument("LmConfig: max_iter must be >= 1");
    if (!(step_tol > 0.0) || !(cost_tol > 0.0)) {
        throw std::invalid_argument("LmConfig: tolerances must be > 0");
    }
}

bool LmReport::cost_monotone() const {
    for (std::size_t i = 1; i < cost_history.size(); ++i) {
        if (cost_history[i] > cost_history[i - 1]) return false;
    }
    return true;
}

LmResult lm_minimize(const ResidualFn& residual_fn, const JacobianFn& jacobian_fn,
                     const Eigen::VectorXd& w0, const LmConfig& config) {
    config.validate();
    if (!w0.allFinite()) throw std::invalid_argument("lm_minimize: w0 must be finite");

    Eigen::VectorXd w = w0;
    Eigen::VectorXd r = residual_fn(w);
    if (!r.allFinite()) {
        throw NumericError("lm_minimize: NaN/Inf in residuals at the initial point");
    }
    double cost = r.squaredNorm();

    LmReport report;
    report.cost_history.push_back(cost);
    report.termination = LmStop::kMaxIter;

    if (cost == 0.0) {
        report.termination = LmStop::kCostTol;
        return {w, report};
    }

    const Eigen::Index k = w.size();
    double eta_eff = config.eta;
    Eigen::MatrixXd normal(k, k);
    Eigen::VectorXd delta(k);

    for (int pass = 0; pass < config.max_iter; ++pass) {
        const Eigen::MatrixXd jac = jacobian_fn(w);
        if (jac.rows() != r.size() || jac.cols() != k) {
            throw std::invalid_argument("lm_minimize: jacobian shape inconsistent with residuals");
        }
        if (!jac.allFinite()) {
            report.termination = LmStop::kSingularSystem;
            break;
        }

        normal.setZero();
        normal.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
        normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
        Eigen::VectorXd rhs = -(jac.transpose() * r);

        Eigen::MatrixXd system = normal;
        if (config.mode == LmMode::kAdaptive) {
            // Marquardt scaling: damp proportionally to the curvature diagonal.
            Eigen::VectorXd d = normal.diagonal().cwiseMax(1e-12);
            system.diagonal() += eta_eff * d;
            if (!spd_solve(system, 0.0, rhs, delta)) {
                report.termination = LmStop::kSingularSystem;
                break;
            }
        } else {
            if (!spd_solve(normal, eta_eff, rhs, delta)) {
                report.termination = LmStop::kSingularSystem;
                break;
            }
        }

        const Eigen::VectorXd w_trial = w + delta;
        const Eigen::VectorXd r_trial = residual_fn(w_trial);
        if (!r_trial.allFinite()) {
            throw NumericError("lm_minimize: NaN/Inf in residuals at iterate " +
                               std::to_string(pass + 1));
        }
        const double cost_trial = r_trial.squaredNorm();

        if (cost_trial <= cost) {
            const double rel_drop =
                (cost - cost_trial) / std::max(cost, std::numeric_limits<double>::min());
            w = w_trial;
            r = r_trial;
            cost = cost_trial;
            report.cost_history.push_back(cost);
            ++report.iterations;
            eta_eff = (config.mode == LmMode::kAdaptive) ? std::max(eta_eff / 10.0, 1e-12)
                                                         : config.eta;
            if (delta.lpNorm<Eigen::Infinity>() < config.step_tol) {
                report.termination = LmStop::kStepTol;
                break;
            }
            if (rel_drop < config.cost_tol) {
                report.termination = LmStop::kCostTol;
                break;
            }
        } else {
            ++report.rejected_steps;
            eta_eff *= 10.0;
        }
    }

    return {w, report};
}

Eigen::MatrixXd numeric_jacobian(const ResidualFn& residual_fn, const Eigen::VectorXd& w,
                                 double h) {
    if (!(h > 0.0)) throw std::invalid_argument("numeric_jacobian: h must be > 0");
    const Eigen::Index k = w.size();
    const Eigen::Index n = residual_fn(w).size();
    Eigen::MatrixXd jac(n, k);
#pragma omp parallel for schedule(static) if (k >= 8)
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd wp = w;
        Eigen::VectorXd wm = w;
        wp[j] += h;
        wm[j] -= h;
        jac.col(j) = (residual_fn(wp) - residual_fn(wm)) / (2.0 * h);
    }
    return jac;
}

}  // namespace lapreg
