#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace lapreg::data {

/// Canonical post-ingestion dataset: numeric features, labels in {0,1},
/// both classes present, no NaN/Inf.
struct Dataset {
    std::string name;
    Eigen::MatrixXd x;          // N x m
    std::vector<int> labels;    // N values in {0,1}
    std::string provenance;

    Eigen::Index n() const { return x.rows(); }
    Eigen::Index m() const { return x.cols(); }

    /// Labels as 0.0/1.0 targets for the least-squares fit.
    Eigen::VectorXd targets() const;

    void validate() const;
};

/// One record of the dataset registry. Paths are resolved relative to the
/// registry file. delimiter is "," or "whitespace" (runs of spaces/tabs).
struct RegistryEntry {
    std::string name;
    std::string path;
    std::string delimiter = ",";
    bool has_header = false;
    int label_column = -1;             // index into the raw columns
    std::string positive_label;        // raw token mapped to 1
    std::vector<int> drop_columns;     // raw columns excluded from features
    long expected_n = -1;
    long expected_m = -1;
};

/// Parses the registry JSON file and resolves relative paths.
std::vector<RegistryEntry> load_registry(const std::string& path);

/// Loads and validates one dataset. Label tokens other than positive_label
/// map to 0, but a file with more than two distinct label tokens is
/// rejected, as is one where positive_label never occurs. Shape must match
/// expected_n / expected_m when those are set.
Dataset load_csv(const RegistryEntry& entry);

/// Two Gaussian clouds of n_per_class points at +/-(separation/2)/sqrt(m)
/// per coordinate, labels 0 then 1, deterministic in seed.
Dataset make_blobs(int n_per_class, int m, double separation, double noise_sigma,
                   std::uint64_t seed);

}  // namespace lapreg::data
