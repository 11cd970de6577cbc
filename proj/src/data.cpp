#include "lapreg/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lapreg/errors.hpp"
#include "lapreg/rng.hpp"

namespace lapreg::data {

namespace fs = std::filesystem;
using nlohmann::json;

Eigen::VectorXd Dataset::targets() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
    return y;
}

void Dataset::validate() const {
    if (n() < 2) throw DataError(name + ": need at least two rows");
    if (m() < 1) throw DataError(name + ": need at least one feature");
    if (static_cast<Eigen::Index>(labels.size()) != n()) {
        throw DataError(name + ": label count does not match row count");
    }
    if (!x.allFinite()) throw DataError(name + ": non-finite feature value");
    bool saw0 = false;
    bool saw1 = false;
    for (int y : labels) {
        if (y == 0) saw0 = true;
        else if (y == 1) saw1 = true;
        else throw DataError(name + ": label outside {0,1}");
    }
    if (!saw0 || !saw1) throw DataError(name + ": only one class present");
}

namespace {

std::vector<std::string> split_line(const std::string& line, const std::string& delimiter) {
    std::vector<std::string> fields;
    if (delimiter == "whitespace") {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) fields.push_back(tok);
        return fields;
    }
    const char sep = delimiter.empty() ? ',' : delimiter[0];
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& token, const std::string& file, std::size_t line_no,
                    std::size_t col_no) {
    const std::string t = trim(token);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || t.empty()) {
        throw DataError(file + ":" + std::to_string(line_no) + ": column " +
                        std::to_string(col_no) + ": cannot parse '" + t + "' as a number");
    }
    return value;
}

}  // namespace

std::vector<RegistryEntry> load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("registry: cannot open " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw DataError("registry: " + path + ": " + e.what());
    }
    if (!root.contains("datasets") || !root["datasets"].is_array()) {
        throw DataError("registry: " + path + ": missing 'datasets' array");
    }
    const fs::path base = fs::path(path).parent_path();
    std::vector<RegistryEntry> entries;
    for (const auto& rec : root["datasets"]) {
        RegistryEntry e;
        try {
            e.name = rec.at("name").get<std::string>();
            e.path = (base / rec.at("path").get<std::string>()).string();
            e.delimiter = rec.value("delimiter", std::string(","));
            e.has_header = rec.value("has_header", false);
            e.label_column = rec.at("label_column").get<int>();
            e.positive_label = rec.at("positive_label").get<std::string>();
            e.expected_n = rec.value("expected_n", -1L);
            e.expected_m = rec.value("expected_m", -1L);
            if (rec.contains("drop_columns")) {
                e.drop_columns = rec["drop_columns"].get<std::vector<int>>();
            }
        } catch (const json::exception& ex) {
            throw DataError("registry: " + path + ": entry '" + e.name + "': " + ex.what());
        }
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw DataError("registry: " + path + ": no datasets");
    return entries;
}

Dataset load_csv(const RegistryEntry& entry) {
    std::ifstream in(entry.path);
    if (!in) throw DataError(entry.name + ": cannot open " + entry.path);

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::set<std::string> label_tokens;
    std::string line;
    std::size_t line_no = 0;
    bool skipped_header = false;
    std::size_t ncols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (entry.has_header && !skipped_header) {
            skipped_header = true;
            continue;
        }
        const std::vector<std::string> fields = split_line(line, entry.delimiter);
        if (ncols == 0) {
            ncols = fields.size();
            if (entry.label_column < 0 || static_cast<std::size_t>(entry.label_column) >= ncols) {
                throw DataError(entry.name + ": label_column " +
                                std::to_string(entry.label_column) + " out of range for " +
                                std::to_string(ncols) + " columns");
            }
        } else if (fields.size() != ncols) {
            throw DataError(entry.path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(ncols) + " columns, got " +
                            std::to_string(fields.size()));
        }

        std::vector<double> features;
        features.reserve(ncols - 1);
        for (std::size_t c = 0; c < ncols; ++c) {
            if (static_cast<int>(c) == entry.label_column) {
                const std::string tok = trim(fields[c]);
                raw_labels.push_back(tok);
                label_tokens.insert(tok);
                continue;
            }
            if (std::find(entry.drop_columns.begin(), entry.drop_columns.end(),
                          static_cast<int>(c)) != entry.drop_columns.end()) {
                continue;
            }
            features.push_back(parse_number(fields[c], entry.path, line_no, c + 1));
        }
        rows.push_back(std::move(features));
    }

    if (rows.empty()) throw DataError(entry.name + ": no data rows in " + entry.path);

    if (label_tokens.size() > 2) {
        std::string toks;
        for (const auto& t : label_tokens) toks += "'" + t + "' ";
        throw DataError(entry.name + ": more than two distinct label tokens: " + toks);
    }
    if (label_tokens.find(entry.positive_label) == label_tokens.end()) {
        throw DataError(entry.name + ": positive label '" + entry.positive_label +
                        "' never occurs (unknown label token?)");
    }

    const long n = static_cast<long>(rows.size());
    const long m = static_cast<long>(rows.front().size());
    if (entry.expected_n >= 0 && n != entry.expected_n) {
        throw DataError(entry.name + ": row count mismatch: expected " +
                        std::to_string(entry.expected_n) + ", got " + std::to_string(n));
    }
    if (entry.expected_m >= 0 && m != entry.expected_m) {
        throw DataError(entry.name + ": feature count mismatch: expected " +
                        std::to_string(entry.expected_m) + ", got " + std::to_string(m));
    }

    Dataset ds;
    ds.name = entry.name;
    ds.provenance = entry.path;
    ds.x.resize(n, m);
    ds.labels.resize(rows.size());
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < m; ++j) ds.x(i, j) = rows[static_cast<std::size_t>(i)][j];
        ds.labels[static_cast<std::size_t>(i)] =
            raw_labels[static_cast<std::size_t>(i)] == entry.positive_label ? 1 : 0;
    }
    ds.validate();
    return ds;
}

Dataset make_blobs(int n_per_class, int m, double separation, double noise_sigma,
                   std::uint64_t seed) {
    if (n_per_class < 1 || m < 1 || separation < 0.0 || noise_sigma <= 0.0) {
        throw std::invalid_argument("make_blobs: parameters must be positive");
    }
    const int n = 2 * n_per_class;
    const double offset = 0.5 * separation / std::sqrt(static_cast<double>(m));

    auto engine = rng::make_engine(seed, 0);
    rng::NormalSource normal(engine);

    Dataset ds;
    ds.name = "blobs";
    ds.provenance = "synthetic seed=" + std::to_string(seed);
    ds.x.resize(n, m);
    ds.labels.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int label = i < n_per_class ? 0 : 1;
        const double center = label == 0 ? -offset : offset;
        for (int j = 0; j < m; ++j) {
            ds.x(i, j) = center + noise_sigma * normal.next();
        }
        ds.labels[static_cast<std::size_t>(i)] = label;
    }
    ds.validate();
    return ds;
}

}  // namespace lapreg::data
