#pragma once

#include <array>
#include <vector>

namespace lapreg::metrics {

/// Percentage of matching predictions, in [0, 100].
double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

/// Area under the ROC curve as the Mann-Whitney statistic
///   (#(pos > neg) + 1/2 #(pos == neg)) / (P * Q)
/// computed with an O(n log n) mid-rank sweep that equals the pairwise
/// definition exactly. Throws if only one class is present (AUC undefined).
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Mean binary cross-entropy of sigmoid outputs, clamped to
/// [eps, 1 - eps] at machine-epsilon margins. Diagnostic only.
double cross_entropy(const std::vector<double>& sigma_values, const std::vector<int>& labels);

enum class Grade { A, B, C, D, F };

char grade_letter(Grade g);

/// A=1, B=2, C=3, D=4, F=5 (lower is better).
int grade_weight(Grade g);

/// Lower-closed AUC bands: A on [0.9,1], B on [0.8,0.9), C on [0.7,0.8),
/// D on [0.6,0.7), F on [0, 0.6) — below-chance values clamp to F.
/// Throws on auc outside [0, 1].
Grade grade(double auc);

/// Counts per grade over a set of graded results.
struct GradeTally {
    std::array<int, 5> counts{};  // indexed by Grade

    void add(Grade g) { ++counts[static_cast<int>(g)]; }
    int count(Grade g) const { return counts[static_cast<int>(g)]; }
    int total() const;
};

/// sum over letters of count(letter) * weight(letter).
int weighted_grade_total(const GradeTally& tally);

}  // namespace lapreg::metrics
