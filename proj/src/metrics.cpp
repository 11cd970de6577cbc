#include "lapreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lapreg::metrics {

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.empty()) throw std::invalid_argument("accuracy: empty input");
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("accuracy: size mismatch");
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == labels[i]) ++matches;
    }
    return 100.0 * static_cast<double>(matches) / static_cast<double>(predictions.size());
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: size mismatch");
    const std::size_t n = scores.size();
    std::size_t pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("roc_auc: labels must be 0/1");
        pos += static_cast<std::size_t>(y);
    }
    const std::size_t neg = n - pos;
    if (pos == 0 || neg == 0) {
        throw std::invalid_argument("roc_auc: undefined with a single class");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) throw std::invalid_argument("roc_auc: non-finite score");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Mid-rank sum over positives; ranks are 1-based, ties get the group mean.
    // All quantities are small dyadic rationals, so this is exact and equals
    // the pairwise win + half-tie count.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) {
            if (labels[order[t]] == 1) rank_sum_pos += mid_rank;
        }
        i = j + 1;
    }
    const double p = static_cast<double>(pos);
    const double q = static_cast<double>(neg);
    return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * q);
}

double cross_entropy(const std::vector<double>& sigma_values, const std::vector<int>& labels) {
    if (sigma_values.empty()) throw std::invalid_argument("cross_entropy: empty input");
    if (sigma_values.size() != labels.size()) {
        throw std::invalid_argument("cross_entropy: size mismatch");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double total = 0.0;
    for (std::size_t i = 0; i < sigma_values.size(); ++i) {
        const double s = std::clamp(sigma_values[i], eps, 1.0 - eps);
        total += labels[i] == 1 ? -std::log(s) : -std::log(1.0 - s);
    }
    return total / static_cast<double>(sigma_values.size());
}

char grade_letter(Grade g) {
    switch (g) {
        case Grade::A: return 'A';
        case Grade::B: return 'B';
        case Grade::C: return 'C';
        case Grade::D: return 'D';
        case Grade::F: return 'F';
    }
    return '?';
}

int grade_weight(Grade g) {
    switch (g) {
        case Grade::A: return 1;
        case Grade::B: return 2;
        case Grade::C: return 3;
        case Grade::D: return 4;
        case Grade::F: return 5;
    }
    return 0;
}

Grade grade(double auc) {
    if (!(auc >= 0.0 && auc <= 1.0)) {
        throw std::invalid_argument("grade: auc outside [0,1]: " + std::to_string(auc));
    }
    if (auc >= 0.9) return Grade::A;
    if (auc >= 0.8) return Grade::B;
    if (auc >= 0.7) return Grade::C;
    if (auc >= 0.6) return Grade::D;
    return Grade::F;
}

int GradeTally::total() const {
    int t = 0;
    for (int c : counts) t += c;
    return t;
}

int weighted_grade_total(const GradeTally& tally) {
    int total = 0;
    for (Grade g : {Grade::A, Grade::B, Grade::C, Grade::D, Grade::F}) {
        total += tally.count(g) * grade_weight(g);
    }
    return total;
}

}  // namespace lapreg::metrics
