#include "fiqa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace fiqa::spectral {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 FFT on a stride-able row of length n.
void fft_radix2(std::complex<double>* data, int n, int stride) {
    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[static_cast<std::size_t>(i) * stride],
                             data[static_cast<std::size_t>(j) * stride]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / len;
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                auto& u = data[static_cast<std::size_t>(i + k) * stride];
                auto& v = data[static_cast<std::size_t>(i + k + len / 2) * stride];
                const std::complex<double> t = v * w;
                v = u - t;
                u += t;
                w *= wlen;
            }
        }
    }
}

} // namespace

GrayImage zero_pad_square(const GrayImage& img) {
    const int s = next_power_of_two(std::max(img.width, img.height));
    if (s == img.width && s == img.height)
        return img;
    GrayImage out(s, s, 0.0);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = img.at(x, y);
    return out;
}

Spectrum dft2(const GrayImage& img) {
    if (img.width != img.height || !is_power_of_two(img.width))
        throw argument_error("dft2 requires a square power-of-two image");
    const int n = img.width;

    Spectrum spec;
    spec.size = n;
    spec.shifted = false;
    spec.coeffs.assign(static_cast<std::size_t>(n) * n, {});
    for (std::size_t i = 0; i < spec.coeffs.size(); ++i)
        spec.coeffs[i] = img.data[i];

#pragma omp parallel for schedule(static)
    for (int y = 0; y < n; ++y)
        fft_radix2(spec.coeffs.data() + static_cast<std::size_t>(y) * n, n, 1);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < n; ++x)
        fft_radix2(spec.coeffs.data() + x, n, n);

    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (auto& c : spec.coeffs) c *= norm;
    return spec;
}

Spectrum shift_spectrum(const Spectrum& spec) {
    if (spec.shifted)
        throw argument_error("spectrum is already shifted");
    const int n = spec.size;
    const int h = n / 2;
    Spectrum out;
    out.size = n;
    out.shifted = true;
    out.coeffs.resize(spec.coeffs.size());
    for (int y = 0; y < n; ++y) {
        const int sy = (y + h) % n;
        for (int x = 0; x < n; ++x)
            out.at((x + h) % n, sy) = spec.at(x, y);
    }
    return out;
}

std::vector<double> radial_angles() {
    std::vector<double> a;
    for (int j = 0; j <= 100; j += 5)
        a.push_back(j * std::numbers::pi / 180.0);
    return a;
}

RadialMask build_line_mask(int size, const std::vector<double>& angles, double aa_sigma) {
    if (!is_power_of_two(size))
        throw argument_error("mask size must be a power of two");
    if (angles.empty())
        throw argument_error("angle list must be nonempty");
    if (aa_sigma <= 0)
        throw argument_error("aa_sigma must be positive");

    RadialMask mask;
    mask.size = size;
    mask.angles = angles;
    mask.weights.assign(static_cast<std::size_t>(size) * size, 0.0);

    const double cx = size / 2.0;
    const double cy = size / 2.0;
    const double radius = size / 2.0;
    auto round_away = [](double v) {
        return static_cast<int>(v >= 0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
    };

    for (double a : angles) {
        // Endpoint at radius L/2, row axis pointing down.
        const int ex = round_away(cx + radius * std::cos(a));
        const int ey = round_away(cy - radius * std::sin(a));
        const int x0 = static_cast<int>(cx), y0 = static_cast<int>(cy);
        const int steps = std::max(std::abs(ex - x0), std::abs(ey - y0));
        for (int s = 0; s <= steps; ++s) {
            const double t = steps > 0 ? double(s) / steps : 0.0;
            const int px = round_away(x0 + t * (ex - x0));
            const int py = round_away(y0 + t * (ey - y0));
            if (px >= 0 && px < size && py >= 0 && py < size)
                mask.weights[static_cast<std::size_t>(py) * size + px] = 1.0;
        }
    }

    // Separable Gaussian smoothing, then clamp.
    const int kr = std::max(1, static_cast<int>(std::ceil(3.0 * aa_sigma)));
    std::vector<double> kernel(2 * kr + 1);
    double ksum = 0.0;
    for (int i = -kr; i <= kr; ++i) {
        kernel[i + kr] = std::exp(-0.5 * (i * i) / (aa_sigma * aa_sigma));
        ksum += kernel[i + kr];
    }
    for (auto& k : kernel) k /= ksum;

    std::vector<double> tmp(mask.weights.size(), 0.0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double acc = 0.0;
            for (int i = -kr; i <= kr; ++i) {
                const int sx = std::clamp(x + i, 0, size - 1);
                acc += kernel[i + kr] * mask.weights[static_cast<std::size_t>(y) * size + sx];
            }
            tmp[static_cast<std::size_t>(y) * size + x] = acc;
        }
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double acc = 0.0;
            for (int i = -kr; i <= kr; ++i) {
                const int sy = std::clamp(y + i, 0, size - 1);
                acc += kernel[i + kr] * tmp[static_cast<std::size_t>(sy) * size + x];
            }
            mask.weights[static_cast<std::size_t>(y) * size + x] = std::clamp(acc, 0.0, 1.0);
        }
    return mask;
}

Descriptor extract_descriptor(const Spectrum& spec, const RadialMask& mask,
                              const std::string& source_id) {
    if (!spec.shifted)
        throw argument_error("extract_descriptor requires a shifted spectrum");
    if (spec.size != mask.size)
        throw argument_error("spectrum and mask sizes differ");

    const int n = spec.size;
    const int k = n / 2;
    const double cx = n / 2.0, cy = n / 2.0;
    auto round_away = [](double v) {
        return static_cast<int>(v >= 0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
    };

    Descriptor d;
    d.source_id = source_id;
    d.values.assign(static_cast<std::size_t>(k), 0.0);

#pragma omp parallel for schedule(static)
    for (int r = 0; r < k; ++r) {
        double acc = 0.0;
        for (double a : mask.angles) {
            const int px = std::clamp(round_away(cx + r * std::cos(a)), 0, n - 1);
            const int py = std::clamp(round_away(cy - r * std::sin(a)), 0, n - 1);
            acc += mask.at(px, py) * std::abs(spec.at(px, py));
        }
        d.values[r] = acc / static_cast<double>(mask.angles.size());
    }
    return d;
}

const RadialMask& cached_mask(int size, const std::vector<double>& angles, double aa_sigma) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::vector<double>, double>, RadialMask> cache;
    std::scoped_lock lock(mu);
    auto key = std::make_tuple(size, angles, aa_sigma);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(std::move(key), build_line_mask(size, angles, aa_sigma)).first;
    return it->second;
}

} // namespace fiqa::spectral
