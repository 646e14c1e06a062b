#pragma once

#include <span>
#include <string>
#include <vector>

namespace fiqa::eval {

struct LabeledStack {
    std::vector<std::pair<std::string, int>> entries; // (source_id, 0/1)
};

struct CorrelationReport {
    double plcc = 0.0;
    double srcc = 0.0;
    double krcc = 0.0;
    std::size_t n = 0;
};

// Pearson product-moment correlation.
double plcc(std::span<const double> x, std::span<const double> y);

// Spearman: Pearson on mid-ranks (ties averaged).
double srcc(std::span<const double> x, std::span<const double> y);

// Kendall tau-b via Knight's O(n log n) merge counting.
double krcc(std::span<const double> x, std::span<const double> y);

// Mid-ranks of v, 1-based, ties averaged.
std::vector<double> midranks(std::span<const double> v);

// Aligns scores with labels by source_id and computes all three coefficients.
CorrelationReport evaluate(const std::vector<std::pair<std::string, double>>& scores,
                           const LabeledStack& labels);

} // namespace fiqa::eval
