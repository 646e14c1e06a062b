#pragma once

#include <string>

#include "fiqa/image.hpp"

namespace fiqa::baseline {

struct BaselineScore {
    std::string source_id;
    double value = 0.0; // fraction of coefficients, in [0, 1]
};

// Kanjar et al.: fraction of DFT coefficients with |F| > max|F| / divisor.
BaselineScore kanjar_score(const GrayImage& img, const std::string& source_id = {},
                           double threshold_divisor = 1000.0);

} // namespace fiqa::baseline
