#include "fiqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

namespace fiqa::synth {

namespace {

// Reflect index into [0, n) (border mirrored without repeating the edge
// sample twice: -1 -> 0? no: -1 -> 0 would repeat; use symmetric reflect
// -1 -> 0 style "bcdcb" handled below).
int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// Deterministic standard normal via Box-Muller on a seeded 64-bit generator;
// std::normal_distribution is implementation-defined, this is not.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return (rng_() >> 11) * 0x1.0p-53; // [0, 1)
    }
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

bool is_separable_gaussian(const PSFKernel& psf) {
    // A sampled Gaussian is an exact outer product of its middle row/column.
    const int n = psf.size;
    const int c = n / 2;
    const double center = psf.at(c, c);
    if (center <= 0)
        return false;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const double expected = psf.at(x, c) * psf.at(c, y) / center;
            if (std::abs(psf.at(x, y) - expected) > 1e-14 * std::max(1.0, std::abs(expected)))
                return false;
        }
    return true;
}

} // namespace

PSFKernel gaussian_psf(double sigma) {
    if (sigma < 0)
        throw argument_error("sigma must be non-negative");
    PSFKernel psf;
    psf.sigma = sigma;
    if (sigma == 0.0) {
        psf.size = 1;
        psf.weights = {1.0};
        return psf;
    }
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    psf.size = 2 * r + 1;
    psf.weights.resize(static_cast<std::size_t>(psf.size) * psf.size);
    double sum = 0.0;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) {
            const double w = std::exp(-0.5 * (x * x + y * y) / (sigma * sigma));
            psf.weights[static_cast<std::size_t>(y + r) * psf.size + (x + r)] = w;
            sum += w;
        }
    for (auto& w : psf.weights)
        w /= sum;
    return psf;
}

GrayImage degrade(const GrayImage& img, const PSFKernel& psf, double noise_std,
                  std::uint64_t seed) {
    if (psf.size > img.width || psf.size > img.height)
        throw argument_error("kernel larger than image");
    if (noise_std < 0)
        throw argument_error("noise_std must be non-negative");

    const int w = img.width, h = img.height;
    const int r = psf.size / 2;
    GrayImage out(w, h);

    if (psf.size == 1) {
        const double k = psf.weights[0];
        for (std::size_t i = 0; i < out.data.size(); ++i)
            out.data[i] = img.data[i] * k;
    } else if (is_separable_gaussian(psf)) {
        // Exact rank-1 factorization: two 1D passes over the reflect-padded
        // image equal the full 2D sum.
        // psf(x,y) = kx[x] * ky[y] with the 1/center fold into ky.
        const int c = psf.size / 2;
        const double center = psf.at(c, c);
        std::vector<double> kx(psf.size), ky(psf.size);
        for (int i = 0; i < psf.size; ++i) {
            kx[i] = psf.at(i, c);
            ky[i] = psf.at(c, i) / center;
        }

        std::vector<double> tmp(static_cast<std::size_t>(w) * h);
        // Horizontal pass (kernel flip is a no-op for symmetric factors, but
        // index with the flip anyway to match Eq-form convolution).
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i)
                    acc += kx[r + i] * img.at(reflect(x - i, w), y);
                tmp[static_cast<std::size_t>(y) * w + x] = acc;
            }
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i)
                    acc += ky[r + i] * tmp[static_cast<std::size_t>(reflect(y - i, h)) * w + x];
                out.at(x, y) = acc;
            }
    } else {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int ky_ = -r; ky_ <= r; ++ky_)
                    for (int kx_ = -r; kx_ <= r; ++kx_)
                        acc += psf.at(r + kx_, r + ky_) *
                               img.at(reflect(x - kx_, w), reflect(y - ky_, h));
                out.at(x, y) = acc;
            }
    }

    if (noise_std > 0) {
        NormalSource noise(seed);
        for (auto& v : out.data)
            v += noise_std * noise.next();
    }
    for (auto& v : out.data)
        v = std::clamp(v, 0.0, 255.0);
    return out;
}

SyntheticStack generate_stack(const GrayImage& base, const std::vector<double>& sigmas,
                              double noise_std, double sharp_cutoff, std::uint64_t seed) {
    if (sigmas.empty())
        throw argument_error("sigma list must be nonempty");

    SyntheticStack stack;
    stack.noise_std = noise_std;
    stack.seed = seed;
    stack.sigmas = sigmas;
    stack.images.resize(sigmas.size());
    stack.ids.resize(sigmas.size());
    stack.sharp.resize(sigmas.size());

    const int n = static_cast<int>(sigmas.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const PSFKernel psf = gaussian_psf(sigmas[i]);
        stack.images[i] = degrade(base, psf, noise_std, seed + static_cast<std::uint64_t>(i));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "img_%03d", i);
        stack.ids[i] = buf;
        stack.sharp[i] = sigmas[i] <= sharp_cutoff;
    }
    return stack;
}

} // namespace fiqa::synth
