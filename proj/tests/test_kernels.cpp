#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include "lapreg/kernels.hpp"
#include "test_util.hpp"

using namespace lapreg;

namespace {

bool bit_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) != b(i, j)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("parallel kernel matrices match the serial reference bit-exactly") {
    auto g = rng::make_engine(123, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 60));
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 40));
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng::uniform_below(g, 8));
        const double c = 0.5 + 3.0 * rng::uniform01(g);
        const Eigen::MatrixXd points = testutil::random_matrix(n, m, g);
        const Eigen::MatrixXd centers = testutil::random_matrix(k, m, g);

        Eigen::MatrixXd phi_ref;
        Eigen::MatrixXd lap_ref;
        Eigen::MatrixXd phi_omp;
        Eigen::MatrixXd lap_omp;
        kernels::ref::kernel_matrices(points, centers, c, phi_ref, lap_ref);
        kernels::kernel_matrices(points, centers, c, phi_omp, lap_omp);
        CHECK(bit_equal(phi_ref, phi_omp));
        CHECK(bit_equal(lap_ref, lap_omp));
    }
}

TEST_CASE("parallel decision values match the serial reference bit-exactly") {
    auto g = rng::make_engine(124, 0);
    for (double lambda : {0.0, 1.0, 5.0}) {
        const RbfExpansion model = testutil::random_expansion(25, 3, 1.2, g);
        const Eigen::MatrixXd points = testutil::random_matrix(40, 3, g);
        const Eigen::VectorXd ref = kernels::ref::decision_values(model, lambda, points);
        const Eigen::VectorXd omp = kernels::decision_values(model, lambda, points);
        CHECK(bit_equal(ref, omp));
    }
}

TEST_CASE("results are independent of the OpenMP thread count") {
    auto g = rng::make_engine(125, 0);
    const RbfExpansion model = testutil::random_expansion(30, 4, 2.0, g);
    const Eigen::MatrixXd points = testutil::random_matrix(64, 4, g);

    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    Eigen::MatrixXd phi1;
    Eigen::MatrixXd lap1;
    kernels::kernel_matrices(points, model.centers, model.c, phi1, lap1);
    const Eigen::VectorXd g1 = kernels::decision_values(model, 2.0, points);

    omp_set_num_threads(4);
    Eigen::MatrixXd phi4;
    Eigen::MatrixXd lap4;
    kernels::kernel_matrices(points, model.centers, model.c, phi4, lap4);
    const Eigen::VectorXd g4 = kernels::decision_values(model, 2.0, points);
    omp_set_num_threads(saved);

    CHECK(bit_equal(phi1, phi4));
    CHECK(bit_equal(lap1, lap4));
    CHECK(bit_equal(g1, g4));
}

TEST_CASE("kernel matrices reject mismatched dimensions") {
    Eigen::MatrixXd a(2, 3);
    Eigen::MatrixXd b(2, 4);
    a.setZero();
    b.setZero();
    Eigen::MatrixXd phi;
    Eigen::MatrixXd lap;
    CHECK_THROWS_AS(kernels::kernel_matrices(a, b, 1.0, phi, lap), std::invalid_argument);
}
