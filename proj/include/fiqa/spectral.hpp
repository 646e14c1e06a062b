#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fiqa/image.hpp"

namespace fiqa::spectral {

// Square power-of-two grid of complex DFT coefficients.
struct Spectrum {
    int size = 0;                             // L, power of two
    std::vector<std::complex<double>> coeffs; // row-major L x L
    bool shifted = false;                     // DC at (L/2, L/2) when true

    std::complex<double>& at(int x, int y) {
        return coeffs[static_cast<std::size_t>(y) * size + x];
    }
    std::complex<double> at(int x, int y) const {
        return coeffs[static_cast<std::size_t>(y) * size + x];
    }
};

// Antialiased radial-line mask over the shifted spectrum, weights in [0, 1].
struct RadialMask {
    int size = 0;
    std::vector<double> weights;     // row-major L x L
    std::vector<double> angles;      // radians, ascending

    double at(int x, int y) const {
        return weights[static_cast<std::size_t>(y) * size + x];
    }
};

// Averaged radial spectral magnitudes, length L/2.
struct Descriptor {
    std::string source_id;
    std::vector<double> values;
};

// Pads to S x S, S = next power of two >= max(w, h); image at top-left.
GrayImage zero_pad_square(const GrayImage& img);

// Forward 2D DFT with the 1/(M N) normalization, radix-2 FFT.
// Requires a square power-of-two image.
Spectrum dft2(const GrayImage& img);

// Swaps quadrants 1<->3 and 2<->4 so DC lands at (L/2, L/2).
Spectrum shift_spectrum(const Spectrum& spec);

// a_j = j*pi/180 for j in {0, 5, ..., 100}.
std::vector<double> radial_angles();

// Lines from the center (L/2, L/2) to radius L/2 for each angle, rasterized
// at weight 1 then smoothed by a Gaussian of std aa_sigma, clamped to [0, 1].
RadialMask build_line_mask(int size, const std::vector<double>& angles, double aa_sigma);

// Samples the mask-weighted magnitude plane along each ray at integer radius
// steps r = 0 .. L/2-1 (positions rounded to the nearest pixel) and averages
// across angles per radius.
Descriptor extract_descriptor(const Spectrum& spec, const RadialMask& mask,
                              const std::string& source_id = {});

// Shared immutable mask, built once per (size, angles, sigma) and cached.
const RadialMask& cached_mask(int size, const std::vector<double>& angles, double aa_sigma);

} // namespace fiqa::spectral
