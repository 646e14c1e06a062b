#pragma once

#include <span>
#include <string>
#include <vector>

#include "fiqa/spectral.hpp"

namespace fiqa::stats {

// Descriptor mapped onto [0, 1]; values sum to 1.
struct ProbDescriptor {
    std::string source_id;
    std::vector<double> values;
};

// Kurtosis of every descriptor tail, one row per crop size.
struct KurtosisMatrix {
    std::vector<int> crop_sizes;       // row -> number of leading elements removed
    std::vector<std::vector<double>> entries; // entries[row][descriptor]
    std::vector<bool> valid;           // false when some tail had zero variance

    std::size_t rows() const { return crop_sizes.size(); }
};

struct ImageAssessment {
    std::string source_id;
    double iqr_score = 0.0;
    double z_score = 0.0;
    bool sharp = false;
    int rank = 0;              // 1-based, by iqr_score descending
};

struct StackAssessment {
    std::vector<ImageAssessment> images;
    int crop_threshold = 0;
    double z_threshold = 0.0;
};

ProbDescriptor normalize_probability(const spectral::Descriptor& d);

// Fisher excess kurtosis g2 = m4/m2^2 - 3 with m_r = (1/n) sum (v - mean)^r.
double kurtosis(std::span<const double> v);

// Minimum tail length kept when cropping; shorter tails are not evaluated.
inline constexpr int kDefaultMinTail = 8;

KurtosisMatrix kurtosis_matrix(const std::vector<ProbDescriptor>& stack,
                               int min_tail = kDefaultMinTail);

// Crop size whose row has the widest max-min range, skipping rows with any
// negative entry; ties go to the smallest crop size.
int optimal_crop_threshold(const KurtosisMatrix& a);

// Q3 - Q1 with linear-interpolation quantiles.
double iqr(std::span<const double> v);

// (x - mean)/sigma with population sigma.
std::vector<double> zscores(std::span<const double> scores);

StackAssessment classify_stack(const std::vector<ProbDescriptor>& descriptors,
                               double z_threshold,
                               int min_tail = kDefaultMinTail);

} // namespace fiqa::stats
