#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fiqa/reference.hpp"
#include "fiqa/spectral.hpp"
#include "fiqa/synth.hpp"
#include "test_textures.hpp"

using namespace fiqa;

TEST_CASE("gaussian_psf normalization and symmetry") {
    const auto delta = synth::gaussian_psf(0.0);
    CHECK(delta.size == 1);
    CHECK(delta.weights[0] == 1.0);

    for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
        const auto psf = synth::gaussian_psf(sigma);
        CHECK(psf.size == 2 * static_cast<int>(std::ceil(3 * sigma)) + 1);
        const double sum = std::accumulate(psf.weights.begin(), psf.weights.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-12);
        // equal to its own 180-degree rotation
        const std::size_t n = psf.weights.size();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(psf.weights[i] == doctest::Approx(psf.weights[n - 1 - i]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(synth::gaussian_psf(-0.1), argument_error);
}

TEST_CASE("degrade identity and constant-preservation") {
    const GrayImage img = testutil::white_noise(16, 16, 50);
    const GrayImage same = synth::degrade(img, synth::gaussian_psf(0.0), 0.0, 7);
    CHECK(same == img);

    const GrayImage constant(20, 20, 99.0);
    const GrayImage blurred = synth::degrade(constant, synth::gaussian_psf(1.5), 0.0, 7);
    for (double v : blurred.data)
        CHECK(v == doctest::Approx(99.0).epsilon(1e-12));

    CHECK_THROWS_AS(synth::degrade(GrayImage(4, 4, 1.0), synth::gaussian_psf(2.0), 0.0, 7),
                    argument_error);
}

TEST_CASE("degrade matches the quadruple-loop convolution oracle") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const GrayImage img = testutil::white_noise(16, 16, seed);
        const auto psf = synth::gaussian_psf(0.6); // 5x5
        REQUIRE(psf.size == 5);
        const GrayImage fast = synth::degrade(img, psf, 0.0, 0);
        const GrayImage naive = reference::convolve_naive(img, psf);
        const int r = psf.size / 2;
        for (int y = r; y < img.height - r; ++y)
            for (int x = r; x < img.width - r; ++x)
                CHECK(std::abs(fast.at(x, y) - naive.at(x, y)) < 1e-9);
    }
}

TEST_CASE("noiseless convolution preserves the mean") {
    // Symmetric kernel + reflective padding give unit column sums, so the
    // image mean survives convolution exactly (border effects cancel).
    const GrayImage img = testutil::blobs(48, 48, 4);
    const auto psf = synth::gaussian_psf(1.0);
    const GrayImage out = synth::degrade(img, psf, 0.0, 0);
    const double src = std::accumulate(img.data.begin(), img.data.end(), 0.0) / img.data.size();
    const double dst = std::accumulate(out.data.begin(), out.data.end(), 0.0) / out.data.size();
    CHECK(std::abs(src - dst) / src < 1e-6);
}

TEST_CASE("degrade is deterministic for a fixed seed") {
    const GrayImage img = testutil::white_noise(24, 24, 5);
    const auto psf = synth::gaussian_psf(1.0);
    const GrayImage a = synth::degrade(img, psf, 3.0, 42);
    const GrayImage b = synth::degrade(img, psf, 3.0, 42);
    CHECK(a == b);
    const GrayImage c = synth::degrade(img, psf, 3.0, 43);
    CHECK(a != c);
}

TEST_CASE("generate_stack labels, determinism, and spectral ordering") {
    const GrayImage base = testutil::checkerboard(128, 128, 6, 8);
    const auto stack = synth::generate_stack(base, {0.0, 2.0, 4.0}, 0.0, 0.5, 9);
    REQUIRE(stack.images.size() == 3);
    CHECK(stack.sharp == std::vector<bool>{true, false, false});

    const auto stack2 = synth::generate_stack(base, {0.0, 2.0, 4.0}, 0.0, 0.5, 9);
    for (std::size_t i = 0; i < stack.images.size(); ++i)
        CHECK(stack.images[i] == stack2.images[i]);

    // ascending sigma, non-increasing high-frequency descriptor mass
    const auto mask = spectral::build_line_mask(128, spectral::radial_angles(), 1.0);
    std::vector<double> hi_mass;
    for (const auto& img : stack.images) {
        const auto d = spectral::extract_descriptor(
            spectral::shift_spectrum(spectral::dft2(img)), mask);
        double hi = 0.0;
        for (std::size_t r = d.values.size() / 2; r < d.values.size(); ++r)
            hi += d.values[r];
        hi_mass.push_back(hi);
    }
    CHECK(hi_mass[1] <= hi_mass[0]);
    CHECK(hi_mass[2] <= hi_mass[1]);

    CHECK_THROWS_AS(synth::generate_stack(base, {}, 0.0, 0.5, 1), argument_error);
}
