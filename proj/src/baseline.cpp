#include "fiqa/baseline.hpp"

#include <cmath>

#include "fiqa/spectral.hpp"

namespace fiqa::baseline {

BaselineScore kanjar_score(const GrayImage& img, const std::string& source_id,
                           double threshold_divisor) {
    if (threshold_divisor <= 0)
        throw argument_error("threshold divisor must be positive");

    // The shared normalized transform is reused: the 1/(MN) factor scales
    // |F| and the max-derived threshold equally, so the count is unchanged.
    const spectral::Spectrum spec = spectral::dft2(spectral::zero_pad_square(img));

    double max_mag = 0.0;
    for (const auto& c : spec.coeffs)
        max_mag = std::max(max_mag, std::abs(c));

    const double th = max_mag / threshold_divisor;
    std::size_t count = 0;
    for (const auto& c : spec.coeffs)
        if (std::abs(c) > th)
            ++count;

    BaselineScore s;
    s.source_id = source_id;
    s.value = static_cast<double>(count) / static_cast<double>(spec.coeffs.size());
    return s;
}

} // namespace fiqa::baseline
