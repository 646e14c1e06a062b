#include "fiqa/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fiqa/errors.hpp"

namespace fiqa::eval {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw argument_error("correlation inputs have unequal lengths");
    if (x.size() < 2)
        throw argument_error("correlation needs at least 2 observations");
}

// Counts discordant pairs of y when sorted by x, via merge sort.
long long merge_count(std::vector<double>& v, std::vector<double>& buf,
                      std::size_t lo, std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = (lo + hi) / 2;
    long long swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            swaps += static_cast<long long>(mid - i);
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return swaps;
}

long long tie_pairs(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    long long total = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        const long long t = static_cast<long long>(j - i);
        total += t * (t - 1) / 2;
        i = j;
    }
    return total;
}

} // namespace

double plcc(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw degenerate_input_error("plcc undefined for zero variance");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> midranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && v[order[j]] == v[order[i]]) ++j;
        const double mid = (i + 1 + j) / 2.0; // average of ranks i+1 .. j
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = mid;
        i = j;
    }
    return ranks;
}

double srcc(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    try {
        return plcc(rx, ry);
    } catch (const degenerate_input_error&) {
        throw degenerate_input_error("srcc undefined: all ranks tied");
    }
}

double krcc(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();

    // Sort by x, ties broken by y; then discordant pairs are the swaps needed
    // to sort the y column (Knight's algorithm).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    long long joint_ties = 0; // pairs tied in both x and y
    long long x_ties = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && x[order[j]] == x[order[i]]) ++j;
            const long long t = static_cast<long long>(j - i);
            x_ties += t * (t - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && y[order[b]] == y[order[a]]) ++b;
                const long long u = static_cast<long long>(b - a);
                joint_ties += u * (u - 1) / 2;
                a = b;
            }
            i = j;
        }
    }

    std::vector<double> ysorted(n);
    for (std::size_t i = 0; i < n; ++i)
        ysorted[i] = y[order[i]];
    const long long y_ties = tie_pairs(ysorted);
    std::vector<double> buf(n);
    const long long swaps = merge_count(ysorted, buf, 0, n);

    const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
    if (x_ties == n0 || y_ties == n0)
        throw degenerate_input_error("krcc undefined: one input entirely tied");

    // concordant - discordant = n0 - x_ties - y_ties + joint_ties - 2*swaps
    const double num = static_cast<double>(n0 - x_ties - y_ties + joint_ties - 2 * swaps);
    const double den = std::sqrt(static_cast<double>(n0 - x_ties)) *
                       std::sqrt(static_cast<double>(n0 - y_ties));
    return num / den;
}

CorrelationReport evaluate(const std::vector<std::pair<std::string, double>>& scores,
                           const LabeledStack& labels) {
    std::map<std::string, double> by_id;
    for (const auto& [id, s] : scores)
        by_id[id] = s;

    std::vector<double> x, y;
    x.reserve(labels.entries.size());
    y.reserve(labels.entries.size());
    for (const auto& [id, label] : labels.entries) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw alignment_error("no score for labeled id: " + id);
        x.push_back(it->second);
        y.push_back(static_cast<double>(label));
    }
    if (by_id.size() != labels.entries.size())
        throw alignment_error("score/label id sets differ in size");

    CorrelationReport r;
    r.n = x.size();
    r.plcc = plcc(x, y);
    r.srcc = srcc(x, y);
    r.krcc = krcc(x, y);
    return r;
}

} // namespace fiqa::eval
