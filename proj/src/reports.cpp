#include "lapreg/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lapreg/errors.hpp"

namespace lapreg::reports {

namespace fs = std::filesystem;
using metrics::Grade;
using metrics::GradeTally;

const ReferenceRow* find_reference(const std::string& dataset_name) {
    for (const auto& row : kReference) {
        if (dataset_name == row.name) return &row;
    }
    return nullptr;
}

namespace {

GradeTally tally_of(double ReferenceRow::*field) {
    GradeTally t;
    for (const auto& row : kReference) t.add(metrics::grade(row.*field));
    return t;
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string place_label(int place) {
    switch (place) {
        case 1: return "1st";
        case 2: return "2nd";
        case 3: return "3rd";
        default: return std::to_string(place) + "th";
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("report: cannot write " + path.string());
    return out;
}

}  // namespace

GradeTally reference_tally_lr() { return tally_of(&ReferenceRow::lr_auc); }
GradeTally reference_tally_svm() { return tally_of(&ReferenceRow::svm_auc); }
GradeTally reference_tally_nn() { return tally_of(&ReferenceRow::nn_auc); }

void write_benchmark_reports(const BenchmarkReport& report, const std::string& out_dir) {
    if (report.datasets.empty()) throw std::invalid_argument("report: no datasets");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    // --- accuracy table -----------------------------------------------------
    {
        auto csv = open_out(dir / "accuracy.csv");
        auto md = open_out(dir / "accuracy.md");
        csv << "dataset,dim,n,best_c,best_lambda,eta,acc_mean,acc_std,svm_ref,nn_ref,"
               "place,dist_from_first\n";
        md << "# Accuracy (%)\n\n"
           << "LR is this run's cross-validated model; SVM and NN columns are the "
              "embedded reference results (constants v" << kReferenceVersion << ").\n\n"
           << "| Dataset | Dim | N | c | lambda | eta | LR mean | LR std | SVM (ref) | "
              "NN (ref) | Place | Dist. from 1st |\n"
           << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
        double dist_sum = 0.0;
        int dist_count = 0;
        for (const auto& ds : report.datasets) {
            const ReferenceRow* ref = find_reference(ds.name);
            const double lr = ds.best_cv.mean_accuracy;
            const double svm = ref ? ref->svm_acc : 0.0;
            const double nn = ref ? ref->nn_acc : 0.0;
            std::string place = "-";
            std::string dist = "-";
            if (ref) {
                const double top = std::max({lr, svm, nn});
                const int p = 1 + (svm > lr) + (nn > lr);
                place = place_label(p);
                dist = fmt4(top - lr);
                dist_sum += top - lr;
                ++dist_count;
            }
            csv << ds.name << ',' << ds.dim << ',' << ds.n << ',' << fmt4(ds.best.c) << ','
                << fmt4(ds.best.lambda) << ',' << fmt4(ds.best.eta) << ',' << fmt4(lr) << ','
                << fmt4(ds.best_cv.std_accuracy) << ',' << (ref ? fmt4(svm) : "-") << ','
                << (ref ? fmt4(nn) : "-") << ',' << place << ',' << dist << '\n';
            md << "| " << ds.name << " | " << ds.dim << " | " << ds.n << " | " << fmt4(ds.best.c)
               << " | " << fmt4(ds.best.lambda) << " | " << fmt4(ds.best.eta) << " | " << fmt4(lr)
               << " | " << fmt4(ds.best_cv.std_accuracy) << " | " << (ref ? fmt4(svm) : "-")
               << " | " << (ref ? fmt4(nn) : "-") << " | " << place << " | " << dist << " |\n";
        }
        if (dist_count > 0) {
            const std::string avg = fmt4(dist_sum / dist_count);
            csv << "AVERAGE,,,,,,,,,,," << avg << '\n';
            md << "\nAverage distance from 1st: " << avg << '\n';
        }
    }

    // --- AUC table ------------------------------------------------------
    GradeTally run_tally;
    {
        auto csv = open_out(dir / "auc.csv");
        auto md = open_out(dir / "auc.md");
        csv << "dataset,best_c,best_lambda,eta,auc_mean,auc_std,grade,svm_ref,svm_grade,"
               "nn_ref,nn_grade,place,dist_from_first\n";
        md << "# Area under the ROC curve\n\n"
           << "| Dataset | c | lambda | eta | LR AUC | SVM (ref) | NN (ref) | Place | "
              "Dist. from 1st |\n"
           << "|---|---|---|---|---|---|---|---|---|\n";
        double dist_sum = 0.0;
        int dist_count = 0;
        for (const auto& ds : report.datasets) {
            const ReferenceRow* ref = find_reference(ds.name);
            const double lr = ds.best_cv.mean_auc;
            const Grade g = metrics::grade(std::clamp(lr, 0.0, 1.0));
            run_tally.add(g);
            std::string place = "-";
            std::string dist = "-";
            std::string svm_cell = "-";
            std::string nn_cell = "-";
            if (ref) {
                const double top = std::max({lr, ref->svm_auc, ref->nn_auc});
                place = place_label(1 + (ref->svm_auc > lr) + (ref->nn_auc > lr));
                dist = fmt4(top - lr);
                dist_sum += top - lr;
                ++dist_count;
                svm_cell = fmt4(ref->svm_auc) + std::string(" (") +
                           metrics::grade_letter(metrics::grade(ref->svm_auc)) + ")";
                nn_cell = fmt4(ref->nn_auc) + std::string(" (") +
                          metrics::grade_letter(metrics::grade(ref->nn_auc)) + ")";
            }
            csv << ds.name << ',' << fmt4(ds.best.c) << ',' << fmt4(ds.best.lambda) << ','
                << fmt4(ds.best.eta) << ',' << fmt4(lr) << ',' << fmt4(ds.best_cv.std_auc) << ','
                << metrics::grade_letter(g) << ','
                << (ref ? fmt4(ref->svm_auc) : "-") << ','
                << (ref ? std::string(1, metrics::grade_letter(metrics::grade(ref->svm_auc)))
                        : "-")
                << ',' << (ref ? fmt4(ref->nn_auc) : "-") << ','
                << (ref ? std::string(1, metrics::grade_letter(metrics::grade(ref->nn_auc))) : "-")
                << ',' << place << ',' << dist << '\n';
            md << "| " << ds.name << " | " << fmt4(ds.best.c) << " | " << fmt4(ds.best.lambda)
               << " | " << fmt4(ds.best.eta) << " | " << fmt4(lr) << " ("
               << metrics::grade_letter(g) << ") | " << svm_cell << " | " << nn_cell << " | "
               << place << " | " << dist << " |\n";
        }
        if (dist_count > 0) {
            const std::string avg = fmt4(dist_sum / dist_count);
            csv << "AVERAGE,,,,,,,,,,,," << avg << '\n';
            md << "\nAverage distance from 1st: " << avg << '\n';
        }
    }

    // --- grade tallies ----------------------------------------------------
    {
        const GradeTally ref_lr = reference_tally_lr();
        const GradeTally ref_svm = reference_tally_svm();
        const GradeTally ref_nn = reference_tally_nn();
        auto csv = open_out(dir / "grades.csv");
        auto md = open_out(dir / "grades.md");
        csv << "grade,lr_run,lr_ref,svm_ref,nn_ref\n";
        md << "# Grade tallies\n\n"
           << "Counts of each grade over the benchmarked datasets. The lr_run column "
              "covers this run (" << report.datasets.size()
           << " datasets); the reference columns cover all nine reference datasets.\n\n"
           << "| Grade | LR (run) | LR (ref) | SVM (ref) | NN (ref) |\n"
           << "|---|---|---|---|---|\n";
        for (Grade g : {Grade::A, Grade::B, Grade::C, Grade::D, Grade::F}) {
            csv << metrics::grade_letter(g) << ',' << run_tally.count(g) << ','
                << ref_lr.count(g) << ',' << ref_svm.count(g) << ',' << ref_nn.count(g) << '\n';
            md << "| " << metrics::grade_letter(g) << " | " << run_tally.count(g) << " | "
               << ref_lr.count(g) << " | " << ref_svm.count(g) << " | " << ref_nn.count(g)
               << " |\n";
        }
        const int w_run = metrics::weighted_grade_total(run_tally);
        const int w_lr = metrics::weighted_grade_total(ref_lr);
        const int w_svm = metrics::weighted_grade_total(ref_svm);
        const int w_nn = metrics::weighted_grade_total(ref_nn);
        csv << "weighted_total," << w_run << ',' << w_lr << ',' << w_svm << ',' << w_nn << '\n';
        md << "| weighted total | " << w_run << " | " << w_lr << " | " << w_svm << " | " << w_nn
           << " |\n\n"
           << "Weighted totals use A=1, B=2, C=3, D=4, F=5; lower is better.\n\n"
           << "Note: the NN reference total is computed from its grade tally (" << w_nn
           << "); the published reference table prints " << kPublishedNnWeightedTotal
           << " for the same tally, which does not match its own counts. The computed value "
              "is reported.\n";
    }

    // --- per-cell CV values -------------------------------------------------
    for (const auto& ds : report.datasets) {
        auto csv = open_out(dir / ("cv_cells_" + ds.name + ".csv"));
        csv << "c,lambda,eta,repeat,fold,accuracy,auc,lm_iterations,lm_termination,"
               "lm_cost_monotone\n";
        for (std::size_t i = 0; i < ds.grid_candidates.size(); ++i) {
            const auto& hp = ds.grid_candidates[i];
            for (const auto& f : ds.grid_table[i].folds) {
                csv << fmt4(hp.c) << ',' << fmt4(hp.lambda) << ',' << fmt4(hp.eta) << ','
                    << f.repeat << ',' << f.fold << ',' << fmt4(f.accuracy) << ','
                    << fmt4(f.auc) << ',' << f.lm_iterations << ','
                    << to_string(f.lm_termination) << ',' << (f.lm_cost_monotone ? 1 : 0)
                    << '\n';
            }
        }
    }

    // --- manifest -----------------------------------------------------------
    {
        nlohmann::json manifest;
        manifest["schema_version"] = report.schema_version;
        manifest["reference_constants_version"] = kReferenceVersion;
        manifest["seed"] = report.seed;
        manifest["repeats"] = report.repeats;
        manifest["folds"] = report.folds;
        manifest["scale_mode"] = report.scale_mode;
        nlohmann::json names = nlohmann::json::array();
        for (const auto& ds : report.datasets) names.push_back(ds.name);
        manifest["datasets"] = names;
        manifest["nn_ref_weighted_total"] = {
            {"computed", metrics::weighted_grade_total(reference_tally_nn())},
            {"published", kPublishedNnWeightedTotal},
            {"note", "published total does not match its own tally; computed value reported"},
        };
        auto out = open_out(dir / "manifest.json");
        out << manifest.dump(2) << '\n';
    }
}

}  // namespace lapreg::reports
