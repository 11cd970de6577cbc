#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lapreg/rbf_core.hpp"
#include "test_util.hpp"

using namespace lapreg;

TEST_CASE("rbf_eval basics") {
    Eigen::VectorXd x(2);
    Eigen::VectorXd center(2);
    x << 1.0, 0.0;
    center << 0.0, 0.0;

    CHECK(rbf_eval(center, center, 3.7) == 1.0);
    CHECK(rbf_eval(x, center, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    // c -> 0+ degenerates toward the constant kernel
    CHECK(rbf_eval(x, center, 1e-300) == doctest::Approx(1.0));

    Eigen::VectorXd bad(3);
    bad.setZero();
    CHECK_THROWS_AS(rbf_eval(bad, center, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rbf_eval(x, center, 0.0), std::invalid_argument);
}

TEST_CASE("rbf_eval stays in (0,1] and peaks only at the center") {
    auto g = rng::make_engine(42, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 5));
        const double c = 0.5 + 4.5 * rng::uniform01(g);
        const Eigen::VectorXd x = testutil::random_vector(m, g);
        const Eigen::VectorXd center = testutil::random_vector(m, g);
        const double v = rbf_eval(x, center, c);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        if ((x - center).squaredNorm() > 1e-6) CHECK(v < 1.0);
        CHECK(rbf_eval(x, x, c) == 1.0);
    }
}

TEST_CASE("u_eval") {
    RbfExpansion model;
    model.centers = Eigen::MatrixXd::Zero(1, 2);
    model.weights = Eigen::VectorXd::Constant(1, 3.0);
    model.c = 2.0;

    Eigen::VectorXd at_center(2);
    at_center.setZero();
    CHECK(u_eval(model, at_center) == 3.0);

    model.weights[0] = 0.0;
    Eigen::VectorXd x(2);
    x << 0.3, -0.7;
    CHECK(u_eval(model, x) == 0.0);

    // K=2 random instance against term-by-term summation
    auto g = rng::make_engine(7, 0);
    RbfExpansion two = testutil::random_expansion(2, 3, 1.3, g);
    const Eigen::VectorXd p = testutil::random_vector(3, g);
    const double by_hand =
        two.weights[0] * std::exp(-two.c * (p - two.centers.row(0).transpose()).squaredNorm()) +
        two.weights[1] * std::exp(-two.c * (p - two.centers.row(1).transpose()).squaredNorm());
    CHECK(u_eval(two, p) == doctest::Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("laplacian_u closed form") {
    // single center, evaluated at the center: -2cm
    RbfExpansion model;
    model.centers = Eigen::MatrixXd::Zero(1, 3);
    model.weights = Eigen::VectorXd::Ones(1);
    model.c = 1.7;
    Eigen::VectorXd zero3 = Eigen::VectorXd::Zero(3);
    CHECK(laplacian_u(model, zero3) == doctest::Approx(-2.0 * 1.7 * 3.0).epsilon(1e-12));

    // zero crossing at r^2 = m/(2c): m=1, c=1, r = sqrt(0.5)
    RbfExpansion one;
    one.centers = Eigen::MatrixXd::Zero(1, 1);
    one.weights = Eigen::VectorXd::Ones(1);
    one.c = 1.0;
    Eigen::VectorXd xc(1);
    xc << std::sqrt(0.5);
    CHECK(laplacian_u(one, xc) == doctest::Approx(0.0).epsilon(1e-12));
    // finite differences confirm the sign change around the crossing
    auto u_fn = [&one](const Eigen::VectorXd& p) { return u_eval(one, p); };
    Eigen::VectorXd inside(1);
    inside << 0.5;
    Eigen::VectorXd outside(1);
    outside << 1.0;
    CHECK(testutil::fd_laplacian(u_fn, inside, 1e-4) < 0.0);
    CHECK(testutil::fd_laplacian(u_fn, outside, 1e-4) > 0.0);

    one.weights[0] = 0.0;
    Eigen::VectorXd half(1);
    half << 0.5;
    CHECK(laplacian_u(one, half) == 0.0);
}

TEST_CASE("laplacian_u matches finite differences on random instances") {
    auto g = rng::make_engine(2026, 1);
    const Eigen::Index dims[] = {1, 2, 5, 30};
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index m = dims[trial % 4];
        const double c = 0.5 + 4.5 * rng::uniform01(g);
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 6));
        const RbfExpansion model = testutil::random_expansion(k, m, c, g);
        const Eigen::VectorXd x = testutil::random_vector(m, g);

        const double analytic = laplacian_u(model, x);
        const double fd = testutil::fd_laplacian(
            [&model](const Eigen::VectorXd& p) { return u_eval(model, p); }, x, 1e-4);
        const double denom = std::max(std::abs(analytic), std::abs(fd));
        if (denom > 1e-10) {
            CHECK(std::abs(analytic - fd) / denom < 1e-4);
        } else {
            CHECK(std::abs(analytic - fd) < 1e-8);
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("u_eval and laplacian_u are linear in the weights") {
    auto g = rng::make_engine(99, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 4));
        RbfExpansion a = testutil::random_expansion(4, m, 1.1, g);
        RbfExpansion b = a;
        b.weights = testutil::random_vector(4, g);
        RbfExpansion sum = a;
        sum.weights = a.weights + b.weights;
        const Eigen::VectorXd x = testutil::random_vector(m, g);
        CHECK(u_eval(sum, x) ==
              doctest::Approx(u_eval(a, x) + u_eval(b, x)).epsilon(1e-10));
        CHECK(laplacian_u(sum, x) ==
              doctest::Approx(laplacian_u(a, x) + laplacian_u(b, x)).epsilon(1e-10));
    }
}

TEST_CASE("sigmoid") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(1000.0) == 1.0);
    CHECK(sigmoid(-1000.0) == 0.0);
    CHECK(sigmoid(0.7) + sigmoid(-0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigmoid(1.0) == doctest::Approx(0.7310585786300049).epsilon(1e-14));

    auto g = rng::make_engine(5, 5);
    double prev_t = -1e308;
    double prev_s = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = (rng::uniform01(g) - 0.5) * 2000.0;
        const double s = sigmoid(t);
        CHECK(std::isfinite(s));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if (t >= prev_t) {
            CHECK(s >= prev_s);
        }
        prev_t = t;
        prev_s = s;
    }
}

TEST_CASE("g_eval") {
    RbfExpansion flat;
    flat.centers = Eigen::MatrixXd::Random(3, 2);
    flat.weights = Eigen::VectorXd::Zero(3);
    flat.c = 1.0;
    Eigen::VectorXd x(2);
    x << 0.1, 0.2;
    CHECK(g_eval(flat, 0.0, x) == 0.5);
    CHECK(g_eval(flat, 7.0, x) == 0.5);

    // lambda=0 reduces to sigma(u)
    auto g = rng::make_engine(17, 3);
    const RbfExpansion model = testutil::random_expansion(4, 2, 1.5, g);
    const Eigen::VectorXd p = testutil::random_vector(2, g);
    CHECK(g_eval(model, 0.0, p) == sigmoid(u_eval(model, p)));

    // single center, x at center, c=1, m=2, lambda=1: sigma(1) + 4
    RbfExpansion single;
    single.centers = Eigen::MatrixXd::Zero(1, 2);
    single.weights = Eigen::VectorXd::Ones(1);
    single.c = 1.0;
    Eigen::VectorXd zero2 = Eigen::VectorXd::Zero(2);
    const double expected = sigmoid(1.0) - 1.0 * laplacian_u(single, zero2);
    CHECK(expected == doctest::Approx(4.7310585786).epsilon(1e-10));
    CHECK(g_eval(single, 1.0, zero2) == doctest::Approx(expected).epsilon(1e-15));
    // (the same instance shows g is unbounded once lambda > 0)
    CHECK(g_eval(single, 1.0, zero2) > 1.0);
}

TEST_CASE("g_eval with lambda=0 stays in (0,1)") {
    auto g = rng::make_engine(31, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 4));
        const RbfExpansion model = testutil::random_expansion(5, m, 2.0, g);
        const Eigen::VectorXd x = testutil::random_vector(m, g);
        const double v = g_eval(model, 0.0, x);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("RbfExpansion validation") {
    RbfExpansion model;
    model.centers = Eigen::MatrixXd::Zero(2, 2);
    model.weights = Eigen::VectorXd::Zero(3);
    model.c = 1.0;
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
    model.weights = Eigen::VectorXd::Zero(2);
    CHECK_NOTHROW(model.validate());
    model.c = -1.0;
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}
