#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lapreg/classifier.hpp"
#include "lapreg/data.hpp"
#include "lapreg/lm.hpp"

namespace lapreg::eval {

/// Column standardizer: transform(x)_j = (x_j - mean_j) / scale_j with the
/// population standard deviation as scale. Zero-variance columns store
/// scale 1 and map to 0.
struct Scaler {
    Eigen::VectorXd means;
    Eigen::VectorXd scales;

    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
    Eigen::VectorXd apply_row(const Eigen::VectorXd& x) const;

    void save(std::ostream& out) const;
    static Scaler load(std::istream& in);
};

Scaler scaler_fit(const Eigen::MatrixXd& x);

/// Stratified k-fold partitions for `repeats` shuffles. Within a repeat the
/// folds are disjoint, cover 0..N-1, and hold each class's count within one
/// of an even split. Deterministic in (seed, repeat).
struct FoldPlan {
    int repeats = 0;
    int k = 0;
    std::uint64_t seed = 0;
    // assignments[repeat][fold] = sorted row indices of that test fold
    std::vector<std::vector<std::vector<int>>> assignments;
};

FoldPlan make_fold_plan(const std::vector<int>& labels, int repeats, int k, std::uint64_t seed);

enum class ScaleMode {
    kGlobal,   // standardize the whole matrix once, before splitting
    kPerFold,  // fit the scaler on each training fold only
};

/// One test fold's scores plus the solver trace of the fold's fit.
struct FoldScore {
    int repeat = 0;
    int fold = 0;
    double accuracy = 0.0;  // percent
    double auc = 0.0;
    int lm_iterations = 0;
    bool lm_cost_monotone = true;
    LmStop lm_termination = LmStop::kMaxIter;
};

struct CvResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double mean_auc = 0.0;
    double std_auc = 0.0;
    std::vector<FoldScore> folds;
};

/// Recomputes the aggregate fields from the per-fold values (population
/// standard deviation).
CvResult aggregate(std::vector<FoldScore> folds);

/// Fits on each repeat x fold's training rows and scores accuracy and AUC on
/// the held-out rows, using the decision value g as the ranking score.
CvResult cross_validate(const data::Dataset& dataset, const Hyperparameters& hyper,
                        const FoldPlan& plan, const LmConfig& lm,
                        ScaleMode scale = ScaleMode::kGlobal);

/// The hyperparameter grid: c on multiples of ln 2 inside (0, 5), lambda on
/// 0..10 step 1, eta fixed.
struct GridSpec {
    std::vector<double> c_values;
    std::vector<double> lambda_values;
    double eta = 1.0;

    static GridSpec benchmark_default();
    std::vector<Hyperparameters> candidates() const;  // lambda-major order
};

struct GridSearchResult {
    Hyperparameters best;
    int best_index = 0;
    std::vector<Hyperparameters> candidates;
    std::vector<CvResult> table;  // aligned with candidates
};

/// Cross-validates every candidate (grid cells run in parallel) and picks the
/// highest mean CV accuracy; ties break toward smaller lambda, then smaller c.
GridSearchResult grid_search(const data::Dataset& dataset, const GridSpec& grid,
                             const FoldPlan& plan, const LmConfig& lm,
                             ScaleMode scale = ScaleMode::kGlobal);

}  // namespace lapreg::eval
