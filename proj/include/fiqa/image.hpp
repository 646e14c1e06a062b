#pragma once

#include <cstddef>
#include <vector>

#include "fiqa/errors.hpp"

namespace fiqa {

// Single-channel image with real-valued intensities, nominal range [0, 255].
// Row-major storage, (x, y) = (column, row).
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0)
            throw argument_error("GrayImage dimensions must be positive");
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const GrayImage&) const = default;
};

// Three-channel image, each channel in [0, 255], equal dimensions.
struct RGBImage {
    int width = 0;
    int height = 0;
    std::vector<double> r, g, b;

    RGBImage() = default;
    RGBImage(int w, int h)
        : width(w), height(h),
          r(static_cast<std::size_t>(w) * h, 0.0),
          g(static_cast<std::size_t>(w) * h, 0.0),
          b(static_cast<std::size_t>(w) * h, 0.0) {
        if (w <= 0 || h <= 0)
            throw argument_error("RGBImage dimensions must be positive");
    }

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

} // namespace fiqa
