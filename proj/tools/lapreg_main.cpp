// lapreg — Gaussian-RBF binary classifier with Laplacian-regularized decision
// values, trained by damped Levenberg-Marquardt least squares.
//
// Subcommands:
//   fit            train on one registry dataset and save the model
//   predict        score a CSV of feature rows with a saved model
//   bench          grid-searched, repeated 5-fold CV over registry datasets
//   validate-data  check registry files against their expected shapes

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lapreg/classifier.hpp"
#include "lapreg/data.hpp"
#include "lapreg/errors.hpp"
#include "lapreg/eval.hpp"
#include "lapreg/kernels.hpp"
#include "lapreg/reports.hpp"

namespace {

using namespace lapreg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitInternal = 1;

struct CommonOpts {
    std::string registry;
    std::vector<std::string> datasets;
    std::uint64_t seed = 0;
    int repeats = 10;
    std::string scale = "global";
    bool adaptive_lm = false;
};

eval::ScaleMode parse_scale(const std::string& s) {
    if (s == "global") return eval::ScaleMode::kGlobal;
    if (s == "per-fold") return eval::ScaleMode::kPerFold;
    throw CLI::ValidationError("--scale must be 'global' or 'per-fold'");
}

std::vector<data::RegistryEntry> select_entries(const std::string& registry_path,
                                                const std::vector<std::string>& filter) {
    auto entries = data::load_registry(registry_path);
    if (filter.empty()) return entries;
    std::vector<data::RegistryEntry> out;
    for (const std::string& name : filter) {
        bool found = false;
        for (const auto& e : entries) {
            if (e.name == name) {
                out.push_back(e);
                found = true;
                break;
            }
        }
        if (!found) {
            std::string known;
            for (const auto& e : entries) known += e.name + " ";
            throw DataError("dataset '" + name + "' not in registry; known: " + known);
        }
    }
    return out;
}

LmConfig make_lm_config(bool adaptive) {
    LmConfig lm;
    lm.mode = adaptive ? LmMode::kAdaptive : LmMode::kFixedDamping;
    return lm;
}

int run_fit(const CommonOpts& common, const std::string& dataset_name, double c, double lambda,
            double eta, const std::string& out_path) {
    const auto entries = select_entries(common.registry, {dataset_name});
    const data::Dataset ds = data::load_csv(entries.front());

    const eval::Scaler scaler = eval::scaler_fit(ds.x);
    const Eigen::MatrixXd xs = scaler.apply(ds.x);
    const Hyperparameters hyper{c, lambda, eta};
    const RbfClassifier model = fit(xs, ds.targets(), hyper, make_lm_config(common.adaptive_lm));

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write model file " + out_path);
    scaler.save(out);
    save_classifier(out, model);

    const LmReport& rep = *model.fit_report;
    std::printf("fit %s: n=%ld m=%ld c=%.4f lambda=%.4f eta=%.4f\n", ds.name.c_str(),
                static_cast<long>(ds.n()), static_cast<long>(ds.m()), c, lambda, eta);
    std::printf("lm: iterations=%d rejected=%d cost %.6e -> %.6e termination=%s\n",
                rep.iterations, rep.rejected_steps, rep.initial_cost(), rep.final_cost(),
                to_string(rep.termination).c_str());
    std::printf("model written to %s\n", out_path.c_str());
    return kExitOk;
}

int run_predict(const std::string& model_path, const std::string& input_csv,
                const std::string& out_csv, bool has_header) {
    std::ifstream in(model_path);
    if (!in) throw DataError("cannot open model file " + model_path);
    const eval::Scaler scaler = eval::Scaler::load(in);
    const RbfClassifier model = load_classifier(in);
    const Eigen::Index m = model.expansion.dim();

    std::ifstream csv(input_csv);
    if (!csv) throw DataError("cannot open input " + input_csv);
    std::vector<Eigen::VectorXd> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(csv, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
            trimmed.pop_back();
        }
        if (trimmed.empty()) continue;
        std::stringstream ss(trimmed);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw DataError(input_csv + ":" + std::to_string(line_no) +
                                ": cannot parse '" + tok + "' as a number");
            }
            vals.push_back(v);
        }
        if (static_cast<Eigen::Index>(vals.size()) != m) {
            throw DataError(input_csv + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(m) + " feature columns, got " +
                            std::to_string(vals.size()));
        }
        rows.push_back(Eigen::Map<Eigen::VectorXd>(vals.data(),
                                                   static_cast<Eigen::Index>(vals.size())));
    }

    Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()), m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        points.row(static_cast<Eigen::Index>(i)) = scaler.apply_row(rows[i]).transpose();
    }
    const Eigen::VectorXd g =
        rows.empty() ? Eigen::VectorXd()
                     : kernels::decision_values(model.expansion, model.hyper.lambda, points);

    std::ofstream out(out_csv, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_csv);
    out << "index,g,class\n";
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", g[i]);
        out << i << ',' << buf << ',' << (g[i] <= 0.5 ? 0 : 1) << '\n';
    }
    std::printf("wrote %ld predictions to %s\n", static_cast<long>(g.size()), out_csv.c_str());
    return kExitOk;
}

int run_bench(const CommonOpts& common, const std::string& out_dir) {
    const auto entries = select_entries(common.registry, common.datasets);
    const eval::ScaleMode scale = parse_scale(common.scale);
    const eval::GridSpec grid = eval::GridSpec::benchmark_default();
    const LmConfig lm = make_lm_config(common.adaptive_lm);

    reports::BenchmarkReport report;
    report.seed = common.seed;
    report.repeats = common.repeats;
    report.folds = 5;
    report.scale_mode = common.scale;

    bool any_failed = false;
    for (const auto& entry : entries) {
        try {
            const data::Dataset ds = data::load_csv(entry);
            const eval::FoldPlan plan =
                eval::make_fold_plan(ds.labels, common.repeats, 5, common.seed);
            std::printf("bench %s: n=%ld m=%ld, %zu grid points x %d repeats x 5 folds\n",
                        ds.name.c_str(), static_cast<long>(ds.n()), static_cast<long>(ds.m()),
                        grid.candidates().size(), common.repeats);
            std::fflush(stdout);
            eval::GridSearchResult gs = eval::grid_search(ds, grid, plan, lm, scale);

            reports::DatasetReport dr;
            dr.name = ds.name;
            dr.dim = ds.m();
            dr.n = ds.n();
            dr.best = gs.best;
            dr.best_cv = gs.table[static_cast<std::size_t>(gs.best_index)];
            dr.grid_candidates = std::move(gs.candidates);
            dr.grid_table = std::move(gs.table);
            std::printf("  best: c=%.4f lambda=%.4f acc=%.4f auc=%.4f\n", dr.best.c,
                        dr.best.lambda, dr.best_cv.mean_accuracy, dr.best_cv.mean_auc);
            std::fflush(stdout);
            report.datasets.push_back(std::move(dr));
        } catch (const std::exception& e) {
            any_failed = true;
            std::fprintf(stderr, "bench %s failed: %s\n", entry.name.c_str(), e.what());
        }
    }

    if (report.datasets.empty()) throw DataError("bench: all datasets failed");
    reports::write_benchmark_reports(report, out_dir);
    std::printf("reports written to %s\n", out_dir.c_str());
    return any_failed ? kExitData : kExitOk;
}

int run_validate(const CommonOpts& common) {
    const auto entries = select_entries(common.registry, common.datasets);
    bool all_ok = true;
    for (const auto& entry : entries) {
        try {
            const data::Dataset ds = data::load_csv(entry);
            std::printf("%-20s OK  n=%ld m=%ld (%s)\n", entry.name.c_str(),
                        static_cast<long>(ds.n()), static_cast<long>(ds.m()),
                        entry.path.c_str());
        } catch (const std::exception& e) {
            all_ok = false;
            std::printf("%-20s FAIL %s\n", entry.name.c_str(), e.what());
        }
    }
    return all_ok ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-RBF binary classifier with Laplacian-regularized decision values"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* fit_cmd = app.add_subcommand("fit", "train on a registry dataset and save the model");
    std::string fit_dataset;
    std::string fit_out = "model.lapreg";
    double fit_c = 1.0;
    double fit_lambda = 0.0;
    double fit_eta = 1.0;
    fit_cmd->add_option("--registry", common.registry, "registry JSON file")->required();
    fit_cmd->add_option("--dataset", fit_dataset, "registry dataset name")->required();
    fit_cmd->add_option("--c", fit_c, "fitting degree (> 0)")
        ->check(CLI::PositiveNumber)
        ->required();
    fit_cmd->add_option("--lambda", fit_lambda, "regularization weight (>= 0)")
        ->check(CLI::NonNegativeNumber);
    fit_cmd->add_option("--eta", fit_eta, "LM damping (> 0), default 1")
        ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--seed", common.seed, "random seed (reserved; fit is deterministic)");
    fit_cmd->add_option("--out", fit_out, "output model path");
    fit_cmd->add_flag("--adaptive-lm", common.adaptive_lm, "adaptive damping (experimental)");

    auto* predict_cmd = app.add_subcommand("predict", "score a feature CSV with a saved model");
    std::string pred_model;
    std::string pred_in;
    std::string pred_out = "predictions.csv";
    bool pred_header = false;
    predict_cmd->add_option("--model", pred_model, "model file from fit")->required();
    predict_cmd->add_option("--input", pred_in, "CSV of feature rows")->required();
    predict_cmd->add_option("--out", pred_out, "output CSV (index,g,class)");
    predict_cmd->add_flag("--has-header", pred_header, "skip the first input line");

    auto* bench_cmd =
        app.add_subcommand("bench", "grid search + repeated stratified 5-fold CV, with reports");
    std::string bench_out = "lapreg_reports";
    bench_cmd->add_option("--registry", common.registry, "registry JSON file")->required();
    bench_cmd->add_option("--datasets", common.datasets,
                          "dataset names (comma separated); default: all")
        ->delimiter(',');
    bench_cmd->add_option("--repeats", common.repeats, "CV repeats, default 10")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", common.seed, "master seed for fold shuffles");
    bench_cmd->add_option("--out", bench_out, "report output directory");
    bench_cmd->add_option("--scale", common.scale, "global | per-fold")->default_val("global");
    bench_cmd->add_flag("--adaptive-lm", common.adaptive_lm, "adaptive damping (experimental)");

    auto* validate_cmd =
        app.add_subcommand("validate-data", "check registry datasets parse and match shapes");
    validate_cmd->add_option("--registry", common.registry, "registry JSON file")->required();
    validate_cmd->add_option("--datasets", common.datasets, "dataset names (comma separated)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(fit_cmd)) {
            return run_fit(common, fit_dataset, fit_c, fit_lambda, fit_eta, fit_out);
        }
        if (app.got_subcommand(predict_cmd)) {
            return run_predict(pred_model, pred_in, pred_out, pred_header);
        }
        if (app.got_subcommand(bench_cmd)) {
            return run_bench(common, bench_out);
        }
        if (app.got_subcommand(validate_cmd)) {
            return run_validate(common);
        }
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitInternal;
}
