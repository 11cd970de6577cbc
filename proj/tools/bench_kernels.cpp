// Throughput comparison of the OpenMP batch kernels against the serial
// reference path, on synthetic point sets. The two paths must agree
// bit-exactly; the max abs difference column is a sanity check and should
// print 0.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "lapreg/data.hpp"
#include "lapreg/kernels.hpp"
#include "lapreg/rbf_core.hpp"
#include "lapreg/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Eigen::MatrixXd random_points(int n, int m, std::uint64_t seed) {
    auto engine = lapreg::rng::make_engine(seed, 7);
    lapreg::rng::NormalSource normal(engine);
    Eigen::MatrixXd x(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) x(i, j) = normal.next();
    }
    return x;
}

void bench_case(int n, int k, int m, double c, int reps) {
    const Eigen::MatrixXd points = random_points(n, m, 11);
    const Eigen::MatrixXd centers = random_points(k, m, 23);

    lapreg::RbfExpansion model;
    model.centers = centers;
    model.c = c;
    auto engine = lapreg::rng::make_engine(31, 0);
    lapreg::rng::NormalSource normal(engine);
    model.weights.resize(k);
    for (int i = 0; i < k; ++i) model.weights[i] = normal.next();

    Eigen::MatrixXd phi_ref;
    Eigen::MatrixXd lap_ref;
    Eigen::MatrixXd phi_omp;
    Eigen::MatrixXd lap_omp;

    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
        lapreg::kernels::ref::kernel_matrices(points, centers, c, phi_ref, lap_ref);
    }
    const double t_ref_mat = ms_since(t0) / reps;

    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
        lapreg::kernels::kernel_matrices(points, centers, c, phi_omp, lap_omp);
    }
    const double t_omp_mat = ms_since(t0) / reps;

    const double diff_mat = (phi_ref - phi_omp).cwiseAbs().maxCoeff() +
                            (lap_ref - lap_omp).cwiseAbs().maxCoeff();

    t0 = Clock::now();
    Eigen::VectorXd g_ref;
    for (int r = 0; r < reps; ++r) {
        g_ref = lapreg::kernels::ref::decision_values(model, 1.0, points);
    }
    const double t_ref_dec = ms_since(t0) / reps;

    t0 = Clock::now();
    Eigen::VectorXd g_omp;
    for (int r = 0; r < reps; ++r) {
        g_omp = lapreg::kernels::decision_values(model, 1.0, points);
    }
    const double t_omp_dec = ms_since(t0) / reps;

    const double diff_dec = (g_ref - g_omp).cwiseAbs().maxCoeff();

    std::printf("%5d %5d %4d | %9.2f %9.2f %6.2fx %8.1e | %9.2f %9.2f %6.2fx %8.1e\n", n, k, m,
                t_ref_mat, t_omp_mat, t_ref_mat / t_omp_mat, diff_mat, t_ref_dec, t_omp_dec,
                t_ref_dec / t_omp_dec, diff_dec);
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%5s %5s %4s | %31s %8s | %31s %8s\n", "n", "k", "m",
                "kernel_matrices ref/omp ms  speedup", "maxdiff",
                "decision_values ref/omp ms  speedup", "maxdiff");
    bench_case(200, 200, 2, 1.0, 5);
    bench_case(500, 500, 6, 1.4, 3);
    bench_case(1000, 1000, 24, 2.1, 2);
    bench_case(1000, 1000, 60, 0.7, 2);
    return 0;
}
