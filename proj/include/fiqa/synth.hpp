#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiqa/image.hpp"

namespace fiqa::synth {

// Normalized, centrally symmetric low-pass kernel (discrete PSF).
struct PSFKernel {
    int size = 1;                // odd
    double sigma = 0.0;
    std::vector<double> weights; // row-major size x size, sums to 1

    double at(int x, int y) const {
        return weights[static_cast<std::size_t>(y) * size + x];
    }
};

struct SyntheticStack {
    std::vector<GrayImage> images;
    std::vector<std::string> ids;
    std::vector<double> sigmas;
    std::vector<bool> sharp;     // sigma <= sharp_cutoff
    double noise_std = 0.0;
    std::uint64_t seed = 0;
};

// Sampled 2D Gaussian of std sigma, size 2*ceil(3*sigma)+1 (min 1x1).
PSFKernel gaussian_psf(double sigma);

// g = f * h + eta: flipped-kernel convolution with reflective borders plus
// i.i.d. Gaussian noise from the seeded generator; clamped to [0, 255].
GrayImage degrade(const GrayImage& img, const PSFKernel& psf, double noise_std,
                  std::uint64_t seed);

// One degraded copy of `base` per sigma; per-image seed = seed + index.
SyntheticStack generate_stack(const GrayImage& base, const std::vector<double>& sigmas,
                              double noise_std, double sharp_cutoff, std::uint64_t seed);

inline constexpr double kDefaultNoiseStd = 2.0;
inline constexpr double kDefaultSharpCutoff = 0.5;

} // namespace fiqa::synth
