#include "lapreg/rbf_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lapreg {

namespace {

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch, got " +
                                    std::to_string(got) + ", expected " + std::to_string(want));
    }
}

template <typename A, typename B>
double squared_distance(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& center) {
    double d2 = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double diff = x(k) - center(k);
        d2 += diff * diff;
    }
    return d2;
}

}  // namespace

void RbfExpansion::validate() const {
    if (centers.rows() < 1) throw std::invalid_argument("RbfExpansion: need at least one center");
    if (centers.cols() < 1) throw std::invalid_argument("RbfExpansion: feature dimension must be >= 1");
    if (weights.size() != centers.rows()) {
        throw std::invalid_argument("RbfExpansion: weight count " + std::to_string(weights.size()) +
                                    " != center count " + std::to_string(centers.rows()));
    }
    if (!(c > 0.0)) throw std::invalid_argument("RbfExpansion: fitting degree c must be > 0");
    if (!centers.allFinite() || !weights.allFinite() || !std::isfinite(c)) {
        throw std::invalid_argument("RbfExpansion: non-finite value");
    }
}

double rbf_eval(const Eigen::VectorXd& x, const Eigen::VectorXd& center, double c) {
    require_dim(x.size(), center.size(), "rbf_eval");
    if (!(c > 0.0)) throw std::invalid_argument("rbf_eval: c must be > 0");
    return std::exp(-c * squared_distance(x, center));
}

double u_eval(const RbfExpansion& model, const Eigen::VectorXd& x) {
    require_dim(x.size(), model.dim(), "u_eval");
    double u = 0.0;
    for (Eigen::Index i = 0; i < model.num_centers(); ++i) {
        u += model.weights[i] * std::exp(-model.c * squared_distance(x, model.centers.row(i)));
    }
    return u;
}

double laplacian_u(const RbfExpansion& model, const Eigen::VectorXd& x) {
    require_dim(x.size(), model.dim(), "laplacian_u");
    const double c = model.c;
    const double m = static_cast<double>(model.dim());
    double lap = 0.0;
    for (Eigen::Index i = 0; i < model.num_centers(); ++i) {
        const double d2 = squared_distance(x, model.centers.row(i));
        const double phi = std::exp(-c * d2);
        lap += model.weights[i] * (2.0 * c * phi * (2.0 * c * d2 - m));
    }
    return lap;
}

double sigmoid(double t) {
    // Branch on the sign so exp never overflows; underflow saturates to 0/1.
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double sigmoid_prime(double t) {
    const double s = sigmoid(t);
    return s * (1.0 - s);
}

double g_eval(const RbfExpansion& model, double lambda, const Eigen::VectorXd& x) {
    if (lambda < 0.0) throw std::invalid_argument("g_eval: lambda must be >= 0");
    return sigmoid(u_eval(model, x)) - lambda * laplacian_u(model, x);
}

}  // namespace lapreg
