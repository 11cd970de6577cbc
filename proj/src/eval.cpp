#include "lapreg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lapreg/errors.hpp"
#include "lapreg/kernels.hpp"
#include "lapreg/metrics.hpp"
#include "lapreg/rng.hpp"

namespace lapreg::eval {

Eigen::MatrixXd Scaler::apply(const Eigen::MatrixXd& x) const {
    if (x.cols() != means.size()) throw std::invalid_argument("Scaler: column count mismatch");
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.col(j) = (x.col(j).array() - means[j]) / scales[j];
    }
    return out;
}

Eigen::VectorXd Scaler::apply_row(const Eigen::VectorXd& x) const {
    if (x.size() != means.size()) throw std::invalid_argument("Scaler: column count mismatch");
    return (x.array() - means.array()) / scales.array();
}

Scaler scaler_fit(const Eigen::MatrixXd& x) {
    if (x.rows() < 2) throw std::invalid_argument("scaler_fit: need at least two rows");
    const Eigen::Index n = x.rows();
    const Eigen::Index m = x.cols();
    Scaler s;
    s.means.resize(m);
    s.scales.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        // Exactly constant columns keep their value as the mean so they map
        // to exact zeros; near-constant ones fall back to scale 1 as well.
        if ((x.col(j).array() == x(0, j)).all()) {
            s.means[j] = x(0, j);
            s.scales[j] = 1.0;
            continue;
        }
        const double mean = x.col(j).mean();
        const double var = (x.col(j).array() - mean).square().sum() / static_cast<double>(n);
        const double std_dev = std::sqrt(var);
        s.means[j] = mean;
        s.scales[j] = std_dev > 1e-12 * std::max(1.0, std::abs(mean)) ? std_dev : 1.0;
    }
    return s;
}

namespace {

double parse_hex_field(const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw DataError("model file: bad scaler value '" + tok + "'");
    }
    return v;
}

}  // namespace

void Scaler::save(std::ostream& out) const {
    char buf[40];
    out << "scaler " << means.size() << '\n';
    for (Eigen::Index j = 0; j < means.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%a", means[j]);
        out << buf << ' ';
        std::snprintf(buf, sizeof buf, "%a", scales[j]);
        out << buf << '\n';
    }
}

Scaler Scaler::load(std::istream& in) {
    std::string key;
    long m = 0;
    if (!(in >> key >> m) || key != "scaler" || m < 1) {
        throw DataError("model file: bad scaler section");
    }
    Scaler s;
    s.means.resize(m);
    s.scales.resize(m);
    for (long j = 0; j < m; ++j) {
        std::string a;
        std::string b;
        if (!(in >> a >> b)) throw DataError("model file: truncated scaler section");
        s.means[j] = parse_hex_field(a);
        s.scales[j] = parse_hex_field(b);
    }
    return s;
}

FoldPlan make_fold_plan(const std::vector<int>& labels, int repeats, int k, std::uint64_t seed) {
    if (repeats < 1) throw std::invalid_argument("make_fold_plan: repeats must be >= 1");
    if (k < 2) throw std::invalid_argument("make_fold_plan: k must be >= 2");

    std::vector<int> class0;
    std::vector<int> class1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) class1.push_back(static_cast<int>(i));
        else if (labels[i] == 0) class0.push_back(static_cast<int>(i));
        else throw std::invalid_argument("make_fold_plan: labels must be 0/1");
    }
    if (static_cast<int>(class0.size()) < k || static_cast<int>(class1.size()) < k) {
        throw std::invalid_argument("make_fold_plan: each class needs at least k=" +
                                    std::to_string(k) + " members (have " +
                                    std::to_string(class0.size()) + " and " +
                                    std::to_string(class1.size()) + ")");
    }

    FoldPlan plan;
    plan.repeats = repeats;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.resize(static_cast<std::size_t>(repeats));

    for (int rep = 0; rep < repeats; ++rep) {
        auto engine = rng::make_engine(seed, static_cast<std::uint64_t>(rep));
        auto& folds = plan.assignments[static_cast<std::size_t>(rep)];
        folds.assign(static_cast<std::size_t>(k), {});

        std::vector<int> c0 = class0;
        std::vector<int> c1 = class1;
        rng::shuffle(c0, engine);
        rng::shuffle(c1, engine);

        // Deal each class round-robin; class 1 starts where class 0's extras
        // stop so fold sizes stay balanced.
        for (std::size_t s = 0; s < c0.size(); ++s) {
            folds[s % static_cast<std::size_t>(k)].push_back(c0[s]);
        }
        const std::size_t offset = c0.size() % static_cast<std::size_t>(k);
        for (std::size_t s = 0; s < c1.size(); ++s) {
            folds[(s + offset) % static_cast<std::size_t>(k)].push_back(c1[s]);
        }
        for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    }
    return plan;
}

CvResult aggregate(std::vector<FoldScore> folds) {
    if (folds.empty()) throw std::invalid_argument("aggregate: no folds");
    CvResult r;
    double acc_sum = 0.0;
    double auc_sum = 0.0;
    for (const auto& f : folds) {
        acc_sum += f.accuracy;
        auc_sum += f.auc;
    }
    const double n = static_cast<double>(folds.size());
    r.mean_accuracy = acc_sum / n;
    r.mean_auc = auc_sum / n;
    double acc_sq = 0.0;
    double auc_sq = 0.0;
    for (const auto& f : folds) {
        acc_sq += (f.accuracy - r.mean_accuracy) * (f.accuracy - r.mean_accuracy);
        auc_sq += (f.auc - r.mean_auc) * (f.auc - r.mean_auc);
    }
    r.std_accuracy = std::sqrt(acc_sq / n);
    r.std_auc = std::sqrt(auc_sq / n);
    r.folds = std::move(folds);
    return r;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<int>& idx) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = x.row(idx[i]);
    }
    return out;
}

}  // namespace

CvResult cross_validate(const data::Dataset& dataset, const Hyperparameters& hyper,
                        const FoldPlan& plan, const LmConfig& lm, ScaleMode scale) {
    dataset.validate();
    if (plan.assignments.empty()) throw std::invalid_argument("cross_validate: empty fold plan");

    Eigen::MatrixXd x_global;
    if (scale == ScaleMode::kGlobal) {
        x_global = scaler_fit(dataset.x).apply(dataset.x);
    }

    const Eigen::VectorXd y_all = dataset.targets();
    std::vector<FoldScore> scores;
    scores.reserve(static_cast<std::size_t>(plan.repeats * plan.k));

    for (int rep = 0; rep < plan.repeats; ++rep) {
        for (int fold = 0; fold < plan.k; ++fold) {
            const auto& test_idx = plan.assignments[static_cast<std::size_t>(rep)]
                                                   [static_cast<std::size_t>(fold)];
            std::vector<char> in_test(static_cast<std::size_t>(dataset.n()), 0);
            for (int i : test_idx) in_test[static_cast<std::size_t>(i)] = 1;
            std::vector<int> train_idx;
            train_idx.reserve(static_cast<std::size_t>(dataset.n()) - test_idx.size());
            for (int i = 0; i < dataset.n(); ++i) {
                if (!in_test[static_cast<std::size_t>(i)]) train_idx.push_back(i);
            }

            try {
                Eigen::MatrixXd x_train;
                Eigen::MatrixXd x_test;
                if (scale == ScaleMode::kGlobal) {
                    x_train = take_rows(x_global, train_idx);
                    x_test = take_rows(x_global, test_idx);
                } else {
                    const Eigen::MatrixXd raw_train = take_rows(dataset.x, train_idx);
                    const Scaler s = scaler_fit(raw_train);
                    x_train = s.apply(raw_train);
                    x_test = s.apply(take_rows(dataset.x, test_idx));
                }

                Eigen::VectorXd y_train(static_cast<Eigen::Index>(train_idx.size()));
                for (std::size_t i = 0; i < train_idx.size(); ++i) {
                    y_train[static_cast<Eigen::Index>(i)] = y_all[train_idx[i]];
                }

                const RbfClassifier model = fit(x_train, y_train, hyper, lm);
                const Eigen::VectorXd g =
                    kernels::decision_values(model.expansion, hyper.lambda, x_test);

                std::vector<int> y_test(test_idx.size());
                std::vector<int> preds(test_idx.size());
                std::vector<double> g_scores(test_idx.size());
                for (std::size_t i = 0; i < test_idx.size(); ++i) {
                    y_test[i] = dataset.labels[static_cast<std::size_t>(test_idx[i])];
                    g_scores[i] = g[static_cast<Eigen::Index>(i)];
                    preds[i] = g_scores[i] <= 0.5 ? 0 : 1;
                }

                FoldScore fs;
                fs.repeat = rep;
                fs.fold = fold;
                fs.accuracy = metrics::accuracy(preds, y_test);
                fs.auc = metrics::roc_auc(g_scores, y_test);
                fs.lm_iterations = model.fit_report->iterations;
                fs.lm_cost_monotone = model.fit_report->cost_monotone();
                fs.lm_termination = model.fit_report->termination;
                scores.push_back(fs);
            } catch (const NumericError& e) {
                throw NumericError("repeat " + std::to_string(rep) + " fold " +
                                   std::to_string(fold) + ": " + e.what());
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("repeat " + std::to_string(rep) + " fold " +
                                            std::to_string(fold) + ": " + e.what());
            }
        }
    }
    return aggregate(std::move(scores));
}

GridSpec GridSpec::benchmark_default() {
    GridSpec g;
    // c scans (0, 5) in steps of ln 2; seven multiples fit below 5.
    for (int k = 1; k <= 7; ++k) g.c_values.push_back(static_cast<double>(k) * std::numbers::ln2);
    for (int l = 0; l <= 10; ++l) g.lambda_values.push_back(static_cast<double>(l));
    g.eta = 1.0;
    return g;
}

std::vector<Hyperparameters> GridSpec::candidates() const {
    std::vector<Hyperparameters> out;
    out.reserve(c_values.size() * lambda_values.size());
    for (double lambda : lambda_values) {
        for (double c : c_values) {
            out.push_back(Hyperparameters{c, lambda, eta});
        }
    }
    return out;
}

GridSearchResult grid_search(const data::Dataset& dataset, const GridSpec& grid,
                             const FoldPlan& plan, const LmConfig& lm, ScaleMode scale) {
    GridSearchResult result;
    result.candidates = grid.candidates();
    if (result.candidates.empty()) throw std::invalid_argument("grid_search: empty grid");
    const int n_cand = static_cast<int>(result.candidates.size());
    result.table.resize(result.candidates.size());
    std::vector<std::exception_ptr> errors(result.candidates.size());

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_cand; ++i) {
        try {
            result.table[static_cast<std::size_t>(i)] =
                cross_validate(dataset, result.candidates[static_cast<std::size_t>(i)], plan, lm,
                               scale);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    int best = 0;
    for (int i = 1; i < n_cand; ++i) {
        const auto& ci = result.candidates[static_cast<std::size_t>(i)];
        const auto& cb = result.candidates[static_cast<std::size_t>(best)];
        const double ai = result.table[static_cast<std::size_t>(i)].mean_accuracy;
        const double ab = result.table[static_cast<std::size_t>(best)].mean_accuracy;
        const bool better = ai > ab || (ai == ab && (ci.lambda < cb.lambda ||
                                                     (ci.lambda == cb.lambda && ci.c < cb.c)));
        if (better) best = i;
    }
    result.best_index = best;
    result.best = result.candidates[static_cast<std::size_t>(best)];
    return result;
}

}  // namespace lapreg::eval
