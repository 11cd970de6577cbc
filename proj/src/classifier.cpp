#include "lapreg/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lapreg/errors.hpp"
#include "lapreg/kernels.hpp"

namespace lapreg {

void Hyperparameters::validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("Hyperparameters: c must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("Hyperparameters: lambda must be >= 0");
    if (!(eta > 0.0)) throw std::invalid_argument("Hyperparameters: eta must be > 0");
}

TrainingProblem::TrainingProblem(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 const Hyperparameters& hyper)
    : y_(y), lambda_(hyper.lambda) {
    hyper.validate();
    if (x.rows() != y.size()) {
        throw std::invalid_argument("TrainingProblem: row count of X != length of y");
    }
    kernels::kernel_matrices(x, x, hyper.c, phi_, lap_);
}

Eigen::VectorXd TrainingProblem::residuals(const Eigen::VectorXd& w) const {
    if (w.size() != phi_.cols()) {
        throw std::invalid_argument("TrainingProblem::residuals: weight vector has wrong size");
    }
    const Eigen::VectorXd u = phi_ * w;
    const Eigen::VectorXd lap = lap_ * w;
    Eigen::VectorXd r(y_.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        r[i] = y_[i] - sigmoid(u[i]) + lambda_ * lap[i];
    }
    return r;
}

Eigen::MatrixXd TrainingProblem::jacobian(const Eigen::VectorXd& w) const {
    if (w.size() != phi_.cols()) {
        throw std::invalid_argument("TrainingProblem::jacobian: weight vector has wrong size");
    }
    const Eigen::VectorXd u = phi_ * w;
    Eigen::MatrixXd jac(phi_.rows(), phi_.cols());
    for (Eigen::Index i = 0; i < jac.rows(); ++i) {
        const double sp = sigmoid_prime(u[i]);
        for (Eigen::Index j = 0; j < jac.cols(); ++j) {
            jac(i, j) = -(sp * phi_(i, j) - lambda_ * lap_(i, j));
        }
    }
    return jac;
}

RbfClassifier fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const Hyperparameters& hyper, const LmConfig& lm) {
    hyper.validate();
    if (x.rows() < 2) throw std::invalid_argument("fit: need at least two training points");
    if (x.rows() != y.size()) throw std::invalid_argument("fit: row count of X != length of y");
    bool saw0 = false;
    bool saw1 = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) {
            saw0 = true;
        } else if (y[i] == 1.0) {
            saw1 = true;
        } else {
            throw std::invalid_argument("fit: labels must be exactly 0 or 1, got " +
                                        std::to_string(y[i]) + " at row " + std::to_string(i));
        }
    }
    if (!saw0 || !saw1) throw std::invalid_argument("fit: both classes must be present");

    const TrainingProblem problem(x, y, hyper);
    LmConfig config = lm;
    config.eta = hyper.eta;  // the triplet's eta is authoritative

    LmResult solved = lm_minimize(
        [&problem](const Eigen::VectorXd& w) { return problem.residuals(w); },
        [&problem](const Eigen::VectorXd& w) { return problem.jacobian(w); },
        Eigen::VectorXd::Zero(x.rows()), config);

    RbfClassifier model;
    model.expansion.centers = x;
    model.expansion.weights = std::move(solved.w);
    model.expansion.c = hyper.c;
    model.hyper = hyper;
    model.fit_report = std::move(solved.report);
    model.expansion.validate();
    return model;
}

double decision_value(const RbfClassifier& model, const Eigen::VectorXd& x) {
    return g_eval(model.expansion, model.hyper.lambda, x);
}

int predict(const RbfClassifier& model, const Eigen::VectorXd& x) {
    return decision_value(model, x) <= 0.5 ? 0 : 1;
}

namespace {

constexpr char kMagic[] = "lapreg-model";
constexpr int kFormatVersion = 1;

void write_hex(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    out << buf;
}

double read_hex(std::istream& in, const char* what) {
    std::string tok;
    if (!(in >> tok)) throw DataError(std::string("model file: missing value for ") + what);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw DataError(std::string("model file: bad value '") + tok + "' for " + what);
    }
    return v;
}

long read_count(std::istream& in, const char* what) {
    long v = 0;
    if (!(in >> v) || v < 0) throw DataError(std::string("model file: bad count for ") + what);
    return v;
}

void expect_key(std::istream& in, const char* key) {
    std::string tok;
    if (!(in >> tok) || tok != key) {
        throw DataError(std::string("model file: expected '") + key + "', got '" + tok + "'");
    }
}

}  // namespace

void save_classifier(std::ostream& out, const RbfClassifier& model) {
    model.expansion.validate();
    const Eigen::Index k = model.expansion.num_centers();
    const Eigen::Index m = model.expansion.dim();
    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "m " << m << '\n';
    out << "k " << k << '\n';
    out << "c ";
    write_hex(out, model.hyper.c);
    out << "\nlambda ";
    write_hex(out, model.hyper.lambda);
    out << "\neta ";
    write_hex(out, model.hyper.eta);
    out << "\ncenters\n";
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j) out << ' ';
            write_hex(out, model.expansion.centers(i, j));
        }
        out << '\n';
    }
    out << "weights\n";
    for (Eigen::Index i = 0; i < k; ++i) {
        write_hex(out, model.expansion.weights[i]);
        out << '\n';
    }
}

RbfClassifier load_classifier(std::istream& in) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic) {
        throw DataError("model file: bad magic, not a model file");
    }
    if (version != kFormatVersion) {
        throw DataError("model file: unsupported format version " + std::to_string(version));
    }
    expect_key(in, "m");
    const long m = read_count(in, "m");
    expect_key(in, "k");
    const long k = read_count(in, "k");
    expect_key(in, "c");
    const double c = read_hex(in, "c");
    expect_key(in, "lambda");
    const double lambda = read_hex(in, "lambda");
    expect_key(in, "eta");
    const double eta = read_hex(in, "eta");

    RbfClassifier model;
    model.hyper = Hyperparameters{c, lambda, eta};
    model.expansion.c = c;
    model.expansion.centers.resize(k, m);
    model.expansion.weights.resize(k);
    expect_key(in, "centers");
    for (long i = 0; i < k; ++i) {
        for (long j = 0; j < m; ++j) {
            model.expansion.centers(i, j) = read_hex(in, "center coordinate");
        }
    }
    expect_key(in, "weights");
    for (long i = 0; i < k; ++i) {
        model.expansion.weights[i] = read_hex(in, "weight");
    }
    model.hyper.validate();
    model.expansion.validate();
    return model;
}

}  // namespace lapreg
