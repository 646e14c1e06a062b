#include "fiqa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fiqa::reference {

spectral::Spectrum dft2_naive(const GrayImage& img) {
    const int m = img.width;
    const int n = img.height;
    spectral::Spectrum spec;
    spec.size = m;
    spec.shifted = false;
    spec.coeffs.assign(static_cast<std::size_t>(m) * n, {});

    const double norm = 1.0 / (static_cast<double>(m) * n);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < m; ++u) {
            std::complex<double> acc{};
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < m; ++x) {
                    const double phase = -2.0 * std::numbers::pi *
                                         (double(u) * x / m + double(v) * y / n);
                    acc += img.at(x, y) * std::complex<double>(std::cos(phase), std::sin(phase));
                }
            spec.coeffs[static_cast<std::size_t>(v) * m + u] = acc * norm;
        }
    return spec;
}

namespace {
int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}
} // namespace

GrayImage convolve_naive(const GrayImage& img, const synth::PSFKernel& psf) {
    const int w = img.width, h = img.height;
    const int r = psf.size / 2;
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = -r; j <= r; ++j)
                for (int i = -r; i <= r; ++i)
                    acc += psf.at(r + i, r + j) * img.at(reflect(x - i, w), reflect(y - j, h));
            out.at(x, y) = acc;
        }
    return out;
}

spectral::Descriptor extract_descriptor_serial(const spectral::Spectrum& spec,
                                               const spectral::RadialMask& mask) {
    if (!spec.shifted || spec.size != mask.size)
        throw argument_error("serial extraction needs a shifted spectrum matching the mask");
    const int n = spec.size;
    const int k = n / 2;
    const double cx = n / 2.0, cy = n / 2.0;
    auto round_away = [](double v) {
        return static_cast<int>(v >= 0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
    };
    spectral::Descriptor d;
    d.values.assign(static_cast<std::size_t>(k), 0.0);
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

} // namespace fiqa::reference
