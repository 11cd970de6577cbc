#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "lapreg/classifier.hpp"
#include "lapreg/data.hpp"
#include "lapreg/kernels.hpp"
#include "test_util.hpp"

using namespace lapreg;

namespace {

Eigen::VectorXd alternating_labels(Eigen::Index n) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = static_cast<double>(i % 2);
    return y;
}

}  // namespace

TEST_CASE("residuals at w=0 are y - 1/2") {
    auto g = rng::make_engine(301, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(6, 2, g);
    const Eigen::VectorXd y = alternating_labels(6);
    const TrainingProblem problem(x, y, Hyperparameters{1.0, 2.0, 1.0});
    const Eigen::VectorXd r = problem.residuals(Eigen::VectorXd::Zero(6));
    for (Eigen::Index i = 0; i < 6; ++i) {
        CHECK(r[i] == doctest::Approx(y[i] - 0.5).epsilon(1e-15));
    }
}

TEST_CASE("residuals vanish under saturation") {
    // lambda=0, u(x_i) huge positive, y_i = 1 -> r_i ~ 0
    Eigen::MatrixXd x(2, 1);
    x << 0.0, 10.0;
    Eigen::VectorXd y(2);
    y << 1.0, 0.0;
    const TrainingProblem problem(x, y, Hyperparameters{1.0, 0.0, 1.0});
    Eigen::VectorXd w(2);
    w << 1000.0, -1000.0;
    const Eigen::VectorXd r = problem.residuals(w);
    CHECK(std::abs(r[0]) < 1e-12);
    CHECK(std::abs(r[1]) < 1e-12);
}

TEST_CASE("residuals equal row-by-row composition of g_eval") {
    auto g = rng::make_engine(302, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(4, 2, g);
    const Eigen::VectorXd y = alternating_labels(4);
    const Hyperparameters hyper{1.3, 2.5, 1.0};
    const TrainingProblem problem(x, y, hyper);
    const Eigen::VectorXd w = testutil::random_vector(4, g, 0.5);
    const Eigen::VectorXd r = problem.residuals(w);

    RbfExpansion expansion{x, w, hyper.c};
    for (Eigen::Index i = 0; i < 4; ++i) {
        const double gi = g_eval(expansion, hyper.lambda, x.row(i).transpose());
        CHECK(r[i] == doctest::Approx(y[i] - gi).epsilon(1e-12));
    }
}

TEST_CASE("jacobian at w=0 with lambda=0 is -phi/4") {
    auto g = rng::make_engine(303, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(5, 3, g);
    const Eigen::VectorXd y = alternating_labels(5);
    const Hyperparameters hyper{0.8, 0.0, 1.0};
    const TrainingProblem problem(x, y, hyper);
    const Eigen::MatrixXd jac = problem.jacobian(Eigen::VectorXd::Zero(5));

    Eigen::MatrixXd phi;
    Eigen::MatrixXd lap;
    kernels::ref::kernel_matrices(x, x, hyper.c, phi, lap);
    CHECK((jac + 0.25 * phi).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("jacobian rows coincide for a degenerate kernel") {
    // c -> 0+: all phi_j(x_i) -> 1, rows become identical
    auto g = rng::make_engine(304, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(4, 2, g);
    const Eigen::VectorXd y = alternating_labels(4);
    const TrainingProblem problem(x, y, Hyperparameters{1e-12, 0.0, 1.0});
    const Eigen::MatrixXd jac = problem.jacobian(Eigen::VectorXd::Zero(4));
    for (Eigen::Index i = 1; i < jac.rows(); ++i) {
        CHECK((jac.row(i) - jac.row(0)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("analytic jacobian matches numeric_jacobian") {
    auto g = rng::make_engine(305, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(6, 3, g);
    const Eigen::VectorXd y = alternating_labels(6);
    const Hyperparameters hyper{1.5, 2.0, 1.0};
    const TrainingProblem problem(x, y, hyper);
    const Eigen::VectorXd w = testutil::random_vector(6, g, 0.5);

    const Eigen::MatrixXd analytic = problem.jacobian(w);
    const Eigen::MatrixXd numeric = numeric_jacobian(
        [&problem](const Eigen::VectorXd& v) { return problem.residuals(v); }, w, 1e-6);
    const double scale = std::max(analytic.cwiseAbs().maxCoeff(), 1.0);
    CHECK((analytic - numeric).cwiseAbs().maxCoeff() / scale < 1e-5);
}

TEST_CASE("jacobian property: 50 random instances against finite differences") {
    auto g = rng::make_engine(306, 0);
    const Eigen::Index dims[] = {1, 2, 5};
    const double lambdas[] = {0.0, 1.0, 5.0};
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng::uniform_below(g, 9));
        const Eigen::Index m = dims[trial % 3];
        const double c = 0.5 + 4.5 * rng::uniform01(g);
        const double lambda = lambdas[trial % 3];
        const Eigen::MatrixXd x = testutil::random_matrix(n, m, g);
        const Eigen::VectorXd y = alternating_labels(n);
        const TrainingProblem problem(x, y, Hyperparameters{c, lambda, 1.0});
        const Eigen::VectorXd w = testutil::random_vector(n, g, 0.5);

        const Eigen::MatrixXd analytic = problem.jacobian(w);
        const Eigen::MatrixXd numeric = numeric_jacobian(
            [&problem](const Eigen::VectorXd& v) { return problem.residuals(v); }, w, 1e-6);
        const double scale = std::max({analytic.cwiseAbs().maxCoeff(),
                                       numeric.cwiseAbs().maxCoeff(), 1e-8});
        CHECK((analytic - numeric).cwiseAbs().maxCoeff() / scale < 1e-5);
    }
}

TEST_CASE("fit rejects bad labels") {
    Eigen::MatrixXd x(4, 1);
    x << -1.0, -0.5, 0.5, 1.0;
    Eigen::VectorXd y(4);
    y << 0.0, 1.0, 2.0, 1.0;
    CHECK_THROWS_AS(fit(x, y, Hyperparameters{1.0, 0.0, 1.0}, LmConfig{}),
                    std::invalid_argument);
    y << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(fit(x, y, Hyperparameters{1.0, 0.0, 1.0}, LmConfig{}),
                    std::invalid_argument);
}

TEST_CASE("two-point problem separates and is antisymmetric") {
    Eigen::MatrixXd x(2, 1);
    x << -1.0, 1.0;
    Eigen::VectorXd y(2);
    y << 0.0, 1.0;
    const RbfClassifier model = fit(x, y, Hyperparameters{1.0, 0.0, 1.0}, LmConfig{});

    Eigen::VectorXd a(1);
    a << -1.0;
    Eigen::VectorXd b(1);
    b << 1.0;
    CHECK(predict(model, a) == 0);
    CHECK(predict(model, b) == 1);
    // the problem is symmetric under x -> -x, y -> 1-y, w -> -w
    CHECK(std::abs(model.expansion.weights[0] + model.expansion.weights[1]) < 1e-8);
}

TEST_CASE("well-separated blobs reach 99% training accuracy") {
    const data::Dataset ds = data::make_blobs(100, 2, std::sqrt(32.0), 1.0, 77);
    const RbfClassifier model = fit(ds.x, ds.targets(), Hyperparameters{1.0, 1.0, 1.0},
                                    LmConfig{});
    int correct = 0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        correct += predict(model, ds.x.row(i).transpose()) == ds.labels[static_cast<std::size_t>(i)];
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(ds.n()) >= 0.99);
}

TEST_CASE("decision_value delegates to g_eval and thresholds to class 0 on the boundary") {
    auto g = rng::make_engine(307, 0);
    const Eigen::MatrixXd x = testutil::random_matrix(4, 2, g);
    Eigen::VectorXd y(4);
    y << 0.0, 1.0, 0.0, 1.0;
    const RbfClassifier model = fit(x, y, Hyperparameters{1.0, 0.5, 1.0}, LmConfig{});

    const Eigen::VectorXd p = testutil::random_vector(2, g);
    CHECK(decision_value(model, p) ==
          doctest::Approx(g_eval(model.expansion, 0.5, p)).epsilon(1e-15));

    // w = 0 gives g = 1/2 exactly: the tie goes to class 0
    RbfClassifier flat = model;
    flat.expansion.weights.setZero();
    CHECK(decision_value(flat, p) == 0.5);
    CHECK(predict(flat, p) == 0);

    // a negative decision value (possible when lambda > 0) also maps to 0
    RbfClassifier neg;
    neg.expansion.centers = Eigen::MatrixXd::Zero(1, 2);
    neg.expansion.weights = Eigen::VectorXd::Constant(1, -1.0);
    neg.expansion.c = 1.0;
    neg.hyper = Hyperparameters{1.0, 5.0, 1.0};
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
    CHECK(decision_value(neg, origin) < 0.0);
    CHECK(predict(neg, origin) == 0);
}

TEST_CASE("lambda=0 decision values stay in (0,1) and equal the u>0 rule") {
    auto g = rng::make_engine(308, 0);
    const data::Dataset ds = data::make_blobs(20, 2, 2.0, 1.0, 5);
    const RbfClassifier model = fit(ds.x, ds.targets(), Hyperparameters{1.0, 0.0, 1.0},
                                    LmConfig{});
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd p = testutil::random_vector(2, g, 2.0);
        const double v = decision_value(model, p);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK(predict(model, p) == (u_eval(model.expansion, p) > 0.0 ? 1 : 0));
    }
}

TEST_CASE("fit is deterministic") {
    const data::Dataset ds = data::make_blobs(15, 3, 2.0, 1.0, 9);
    const RbfClassifier m1 = fit(ds.x, ds.targets(), Hyperparameters{1.2, 1.0, 1.0}, LmConfig{});
    const RbfClassifier m2 = fit(ds.x, ds.targets(), Hyperparameters{1.2, 1.0, 1.0}, LmConfig{});
    CHECK((m1.expansion.weights.array() == m2.expansion.weights.array()).all());
}

TEST_CASE("permutation equivariance") {
    const data::Dataset ds = data::make_blobs(10, 2, 2.5, 1.0, 13);
    const Eigen::Index n = ds.n();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = static_cast<int>(i);
    auto g = rng::make_engine(309, 0);
    rng::shuffle(perm, g);

    Eigen::MatrixXd xp(n, ds.m());
    Eigen::VectorXd yp(n);
    const Eigen::VectorXd y = ds.targets();
    for (Eigen::Index i = 0; i < n; ++i) {
        xp.row(i) = ds.x.row(perm[static_cast<std::size_t>(i)]);
        yp[i] = y[perm[static_cast<std::size_t>(i)]];
    }

    const Hyperparameters hyper{1.0, 1.0, 1.0};
    const RbfClassifier base = fit(ds.x, y, hyper, LmConfig{});
    const RbfClassifier permuted = fit(xp, yp, hyper, LmConfig{});

    // centers and weights are permuted identically
    for (Eigen::Index i = 0; i < n; ++i) {
        const int src = perm[static_cast<std::size_t>(i)];
        CHECK((permuted.expansion.centers.row(i) - base.expansion.centers.row(src))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK(std::abs(permuted.expansion.weights[i] - base.expansion.weights[src]) < 1e-10);
    }
    // and the decision surface is unchanged
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd p = testutil::random_vector(2, g, 2.0);
        CHECK(decision_value(base, p) ==
              doctest::Approx(decision_value(permuted, p)).epsilon(1e-10));
    }
}

TEST_CASE("serialization round-trips bit-exactly") {
    const data::Dataset ds = data::make_blobs(12, 3, 2.0, 1.0, 21);
    const RbfClassifier model = fit(ds.x, ds.targets(), Hyperparameters{1.4, 2.0, 1.0},
                                    LmConfig{});
    std::stringstream buffer;
    save_classifier(buffer, model);
    const RbfClassifier loaded = load_classifier(buffer);

    CHECK(loaded.hyper.c == model.hyper.c);
    CHECK(loaded.hyper.lambda == model.hyper.lambda);
    CHECK(loaded.hyper.eta == model.hyper.eta);
    CHECK((loaded.expansion.centers.array() == model.expansion.centers.array()).all());
    CHECK((loaded.expansion.weights.array() == model.expansion.weights.array()).all());
    CHECK(!loaded.fit_report.has_value());

    auto g = rng::make_engine(310, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd p = testutil::random_vector(3, g);
        CHECK(decision_value(loaded, p) == decision_value(model, p));
    }
}
