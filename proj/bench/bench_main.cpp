// Serial reference vs parallel kernels.

#include <random>

#include <benchmark/benchmark.h>

#include "fiqa/reference.hpp"
#include "fiqa/spectral.hpp"
#include "fiqa/synth.hpp"

using namespace fiqa;

namespace {

GrayImage random_image(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 255.0);
    GrayImage img(n, n);
    for (auto& v : img.data)
        v = d(rng);
    return img;
}

void BM_dft2_naive(benchmark::State& state) {
    const GrayImage img = random_image(static_cast<int>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::dft2_naive(img));
}

void BM_dft2_fft(benchmark::State& state) {
    const GrayImage img = random_image(static_cast<int>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral::dft2(img));
}

void BM_convolve_naive(benchmark::State& state) {
    const GrayImage img = random_image(static_cast<int>(state.range(0)), 2);
    const auto psf = synth::gaussian_psf(4.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::convolve_naive(img, psf));
}

void BM_convolve_parallel(benchmark::State& state) {
    const GrayImage img = random_image(static_cast<int>(state.range(0)), 2);
    const auto psf = synth::gaussian_psf(4.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(synth::degrade(img, psf, 0.0, 0));
}

void BM_descriptor_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto spec = spectral::shift_spectrum(spectral::dft2(random_image(n, 3)));
    const auto& mask = spectral::cached_mask(n, spectral::radial_angles(), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::extract_descriptor_serial(spec, mask));
}

void BM_descriptor_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto spec = spectral::shift_spectrum(spectral::dft2(random_image(n, 3)));
    const auto& mask = spectral::cached_mask(n, spectral::radial_angles(), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral::extract_descriptor(spec, mask));
}

} // namespace

BENCHMARK(BM_dft2_naive)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_dft2_fft)->Arg(16)->Arg(32)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_convolve_naive)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_descriptor_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_descriptor_parallel)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
