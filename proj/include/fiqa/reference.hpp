#pragma once

#include "fiqa/image.hpp"
#include "fiqa/spectral.hpp"
#include "fiqa/synth.hpp"

// Serial reference kernels. These are the slow, definitional versions of the
// transforms used by the parallel implementations; they back the test oracles
// and the serial side of the benchmarks. Not linked into the main library.
namespace fiqa::reference {

// O(n^4) double-sum DFT with the 1/(M N) normalization.
spectral::Spectrum dft2_naive(const GrayImage& img);

// Quadruple-loop flipped-kernel convolution, reflective borders, serial.
GrayImage convolve_naive(const GrayImage& img, const synth::PSFKernel& psf);

// Serial single-thread descriptor extraction, same sampling rule as
// spectral::extract_descriptor.
spectral::Descriptor extract_descriptor_serial(const spectral::Spectrum& spec,
                                               const spectral::RadialMask& mask);

} // namespace fiqa::reference
