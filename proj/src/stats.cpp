#include "fiqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fiqa/errors.hpp"

namespace fiqa::stats {

ProbDescriptor normalize_probability(const spectral::Descriptor& d) {
    const double sum = std::accumulate(d.values.begin(), d.values.end(), 0.0);
    if (!(sum > 0.0))
        throw degenerate_input_error("descriptor has no positive mass");
    ProbDescriptor p;
    p.source_id = d.source_id;
    p.values.reserve(d.values.size());
    for (double v : d.values)
        p.values.push_back(v / sum);
    return p;
}

double kurtosis(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2)
        throw argument_error("kurtosis needs at least 2 samples");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if (m2 <= 0.0)
        throw degenerate_input_error("kurtosis undefined for zero variance");
    return m4 / (m2 * m2) - 3.0;
}

KurtosisMatrix kurtosis_matrix(const std::vector<ProbDescriptor>& stack, int min_tail) {
    if (stack.size() < 2)
        throw argument_error("kurtosis_matrix needs at least 2 descriptors");
    const std::size_t k = stack[0].values.size();
    for (const auto& d : stack)
        if (d.values.size() != k)
            throw argument_error("descriptors have unequal lengths");
    if (min_tail < 2)
        throw argument_error("min_tail must be at least 2");
    if (k < static_cast<std::size_t>(min_tail))
        throw argument_error("descriptors shorter than min_tail");

    const int n = static_cast<int>(stack.size());
    const int max_crop = static_cast<int>(k) - min_tail;

    KurtosisMatrix a;
    a.crop_sizes.resize(max_crop + 1);
    a.entries.assign(max_crop + 1, std::vector<double>(n, 0.0));
    a.valid.assign(max_crop + 1, true);

#pragma omp parallel for schedule(static)
    for (int c = 0; c <= max_crop; ++c) {
        a.crop_sizes[c] = c;
        for (int i = 0; i < n; ++i) {
            const auto& v = stack[i].values;
            try {
                a.entries[c][i] = kurtosis({v.data() + c, v.size() - c});
            } catch (const degenerate_input_error&) {
                a.valid[c] = false;
            }
        }
    }
    return a;
}

int optimal_crop_threshold(const KurtosisMatrix& a) {
    double best_range = -std::numeric_limits<double>::infinity();
    int best_crop = -1;
    for (std::size_t row = 0; row < a.rows(); ++row) {
        if (!a.valid[row])
            continue;
        const auto& r = a.entries[row];
        const auto [mn, mx] = std::minmax_element(r.begin(), r.end());
        if (*mn < 0.0) // row with any negative kurtosis is skipped
            continue;
        const double range = *mx - *mn;
        if (range > best_range) { // strict: ties keep the smallest crop
            best_range = range;
            best_crop = a.crop_sizes[row];
        }
    }
    if (best_crop < 0)
        throw no_threshold_error("no crop size with all kurtosis values non-negative");
    return best_crop;
}

double iqr(std::span<const double> v) {
    if (v.size() < 2)
        throw argument_error("iqr needs at least 2 samples");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    auto quantile = [&](double p) {
        const double h = p * (s.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, s.size() - 1);
        const double frac = h - lo;
        return s[lo] * (1.0 - frac) + s[hi] * frac;
    };
    return quantile(0.75) - quantile(0.25);
}

std::vector<double> zscores(std::span<const double> scores) {
    const std::size_t n = scores.size();
    if (n < 2)
        throw argument_error("zscores needs at least 2 samples");
    const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    double var = 0.0;
    for (double x : scores)
        var += (x - mean) * (x - mean);
    var /= n; // population variance
    if (var <= 0.0)
        throw degenerate_input_error("zscores undefined for zero standard deviation");
    const double sd = std::sqrt(var);
    std::vector<double> z;
    z.reserve(n);
    for (double x : scores)
        z.push_back((x - mean) / sd);
    return z;
}

StackAssessment classify_stack(const std::vector<ProbDescriptor>& descriptors,
                               double z_threshold, int min_tail) {
    const KurtosisMatrix a = kurtosis_matrix(descriptors, min_tail);
    const int crop = optimal_crop_threshold(a);

    const std::size_t n = descriptors.size();
    std::vector<double> iqr_scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = descriptors[i].values;
        iqr_scores[i] = iqr({v.data() + crop, v.size() - crop});
    }
    const std::vector<double> z = zscores(iqr_scores);

    StackAssessment out;
    out.crop_threshold = crop;
    out.z_threshold = z_threshold;
    out.images.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.images[i].source_id = descriptors[i].source_id;
        out.images[i].iqr_score = iqr_scores[i];
        out.images[i].z_score = z[i];
        out.images[i].sharp = z[i] >= z_threshold;
    }

    // Rank 1 = largest iqr; equal scores rank by input order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return iqr_scores[l] > iqr_scores[r];
    });
    for (std::size_t pos = 0; pos < n; ++pos)
        out.images[order[pos]].rank = static_cast<int>(pos) + 1;
    return out;
}

} // namespace fiqa::stats
