#include "fiqa/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <opencv2/imgcodecs.hpp>

namespace fiqa::raster {

RGBImage load_image(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw io_error("cannot read image file: " + path);
    cv::Mat m = cv::imread(path, cv::IMREAD_COLOR); // BGR, 8-bit
    if (m.empty())
        throw format_error("unsupported or corrupt image file: " + path);

    RGBImage out(m.cols, m.rows);
    for (int y = 0; y < m.rows; ++y) {
        const auto* row = m.ptr<cv::Vec3b>(y);
        for (int x = 0; x < m.cols; ++x) {
            const std::size_t i = out.index(x, y);
            out.b[i] = row[x][0];
            out.g[i] = row[x][1];
            out.r[i] = row[x][2];
        }
    }
    return out;
}

GrayImage to_luminance(const RGBImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t n = out.data.size();
    for (std::size_t i = 0; i < n; ++i)
        out.data[i] = 0.299 * img.r[i] + 0.587 * img.g[i] + 0.114 * img.b[i];
    return out;
}

GrayImage resize_bilinear(const GrayImage& img, int target_w, int target_h) {
    if (target_w < 1 || target_h < 1)
        throw argument_error("resize target dimensions must be >= 1");
    if (target_w == img.width && target_h == img.height)
        return img;

    GrayImage out(target_w, target_h);
    // Corner-aligned: source corners map onto destination corners.
    const double sx = target_w > 1 ? double(img.width - 1) / (target_w - 1) : 0.0;
    const double sy = target_h > 1 ? double(img.height - 1) / (target_h - 1) : 0.0;

    for (int y = 0; y < target_h; ++y) {
        const double fy = y * sy;
        int y0 = static_cast<int>(fy);
        if (y0 >= img.height - 1) y0 = img.height - 2;
        if (y0 < 0) y0 = 0;
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < target_w; ++x) {
            const double fx = x * sx;
            int x0 = static_cast<int>(fx);
            if (x0 >= img.width - 1) x0 = img.width - 2;
            if (x0 < 0) x0 = 0;
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
            const double bot = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
            out.at(x, y) = top * (1 - wy) + bot * wy;
        }
    }
    return out;
}

GrayImage downscale_longest(const GrayImage& img, int longest) {
    if (longest < 1)
        throw argument_error("longest-side target must be >= 1");
    const int side = std::max(img.width, img.height);
    if (side <= longest)
        return img;
    const double scale = double(longest) / side;
    const int w = std::max(1, static_cast<int>(std::lround(img.width * scale)));
    const int h = std::max(1, static_cast<int>(std::lround(img.height * scale)));
    return resize_bilinear(img, w, h);
}

namespace {

constexpr int kBins = 256;

int quantize(double v) {
    const int q = static_cast<int>(std::floor(v + 0.5)); // round half up
    return std::clamp(q, 0, kBins - 1);
}

// Clipped-and-redistributed equalization mapping for one tile histogram.
// Returns the 256-entry lookup table. A single-occupied-bin histogram maps
// identically: there is no contrast to spread, and constant tiles stay fixed.
std::array<double, kBins> tile_mapping(const std::array<int, kBins>& hist, int area,
                                       double clip_limit) {
    std::array<double, kBins> lut{};
    int occupied = 0;
    for (int c : hist)
        if (c > 0) ++occupied;
    if (occupied <= 1) {
        for (int i = 0; i < kBins; ++i) lut[i] = i;
        return lut;
    }

    // Clip at clip_limit times the uniform bin height, redistribute the
    // excess uniformly; the remainder goes to the lowest bins first.
    const double uniform = double(area) / kBins;
    const long long limit = std::max(1LL, static_cast<long long>(clip_limit * uniform));
    std::array<long long, kBins> h{};
    long long excess = 0;
    for (int i = 0; i < kBins; ++i) {
        h[i] = hist[i];
        if (h[i] > limit) {
            excess += h[i] - limit;
            h[i] = limit;
        }
    }
    const long long share = excess / kBins;
    long long remainder = excess % kBins;
    for (int i = 0; i < kBins; ++i) {
        h[i] += share;
        if (remainder > 0) {
            ++h[i];
            --remainder;
        }
    }

    long long cdf = 0, cdf_min = 0;
    for (int i = 0; i < kBins; ++i)
        if (h[i] > 0) { cdf_min = h[i]; break; }
    const double denom = double(area - cdf_min);
    for (int i = 0; i < kBins; ++i) {
        cdf += h[i];
        lut[i] = denom > 0 ? (kBins - 1) * double(cdf - cdf_min) / denom : double(i);
    }
    return lut;
}

} // namespace

GrayImage clahe(const GrayImage& img, double clip_limit, int tiles_x, int tiles_y) {
    if (clip_limit <= 0)
        throw argument_error("clip_limit must be positive");
    if (tiles_x < 1 || tiles_y < 1)
        throw argument_error("tile grid must be at least 1x1");
    if (img.width < tiles_x || img.height < tiles_y)
        throw argument_error("image smaller than tile grid");

    // Tile extents; remainder pixels go to the trailing tiles.
    auto tile_bounds = [](int extent, int tiles, int t) {
        const int lo = static_cast<int>(static_cast<long long>(extent) * t / tiles);
        const int hi = static_cast<int>(static_cast<long long>(extent) * (t + 1) / tiles);
        return std::pair{lo, hi};
    };

    std::vector<std::array<double, kBins>> luts(static_cast<std::size_t>(tiles_x) * tiles_y);
    std::vector<double> centers_x(tiles_x), centers_y(tiles_y);

    for (int ty = 0; ty < tiles_y; ++ty) {
        const auto [y0, y1] = tile_bounds(img.height, tiles_y, ty);
        centers_y[ty] = (y0 + y1 - 1) / 2.0;
        for (int tx = 0; tx < tiles_x; ++tx) {
            const auto [x0, x1] = tile_bounds(img.width, tiles_x, tx);
            centers_x[tx] = (x0 + x1 - 1) / 2.0;
            std::array<int, kBins> hist{};
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    ++hist[quantize(img.at(x, y))];
            luts[static_cast<std::size_t>(ty) * tiles_x + tx] =
                tile_mapping(hist, (x1 - x0) * (y1 - y0), clip_limit);
        }
    }

    // Bilinear blend between the four surrounding tile mappings.
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        int ty0 = tiles_y - 1;
        while (ty0 > 0 && centers_y[ty0] > y) --ty0;
        const int ty1 = std::min(ty0 + 1, tiles_y - 1);
        double wy = 0.0;
        if (ty1 != ty0 && y > centers_y[ty0])
            wy = (y - centers_y[ty0]) / (centers_y[ty1] - centers_y[ty0]);
        wy = std::clamp(wy, 0.0, 1.0);

        for (int x = 0; x < img.width; ++x) {
            int tx0 = tiles_x - 1;
            while (tx0 > 0 && centers_x[tx0] > x) --tx0;
            const int tx1 = std::min(tx0 + 1, tiles_x - 1);
            double wx = 0.0;
            if (tx1 != tx0 && x > centers_x[tx0])
                wx = (x - centers_x[tx0]) / (centers_x[tx1] - centers_x[tx0]);
            wx = std::clamp(wx, 0.0, 1.0);

            const int bin = quantize(img.at(x, y));
            const double v00 = luts[static_cast<std::size_t>(ty0) * tiles_x + tx0][bin];
            const double v01 = luts[static_cast<std::size_t>(ty0) * tiles_x + tx1][bin];
            const double v10 = luts[static_cast<std::size_t>(ty1) * tiles_x + tx0][bin];
            const double v11 = luts[static_cast<std::size_t>(ty1) * tiles_x + tx1][bin];
            const double top = v00 * (1 - wx) + v01 * wx;
            const double bot = v10 * (1 - wx) + v11 * wx;
            out.at(x, y) = std::clamp(top * (1 - wy) + bot * wy, 0.0, 255.0);
        }
    }
    return out;
}

void save_png(const GrayImage& img, const std::string& path) {
    cv::Mat m(img.height, img.width, CV_8UC1);
    for (int y = 0; y < img.height; ++y) {
        auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 255.0);
            row[x] = static_cast<std::uint8_t>(std::floor(v + 0.5));
        }
    }
    if (!cv::imwrite(path, m))
        throw io_error("cannot write PNG: " + path);
}

} // namespace fiqa::raster
