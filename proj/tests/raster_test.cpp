#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "fiqa/raster.hpp"

using namespace fiqa;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    auto p = fs::temp_directory_path() / "fiqa_raster_test";
    fs::create_directories(p);
    return p;
}

GrayImage random_image(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 255.0);
    GrayImage img(w, h);
    for (auto& v : img.data)
        v = d(rng);
    return img;
}

// Plain global histogram equalization with the cdf-min convention; oracle for
// the 1x1-tile unclipped CLAHE case.
GrayImage global_he(const GrayImage& img) {
    std::array<long long, 256> hist{};
    auto bin = [](double v) {
        return std::clamp(static_cast<int>(std::floor(v + 0.5)), 0, 255);
    };
    for (double v : img.data)
        ++hist[bin(v)];
    const long long area = static_cast<long long>(img.data.size());
    long long cdf_min = 0;
    for (long long h : hist)
        if (h > 0) { cdf_min = h; break; }
    std::array<double, 256> lut{};
    long long cdf = 0;
    for (int i = 0; i < 256; ++i) {
        cdf += hist[i];
        lut[i] = 255.0 * double(cdf - cdf_min) / double(area - cdf_min);
    }
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = lut[bin(img.data[i])];
    return out;
}

} // namespace

TEST_CASE("load_image decodes 1x1 white and black PNG") {
    const auto dir = tmp_dir();
    GrayImage white(1, 1, 255.0), black(1, 1, 0.0);
    raster::save_png(white, (dir / "white.png").string());
    raster::save_png(black, (dir / "black.png").string());

    const RGBImage w = raster::load_image((dir / "white.png").string());
    CHECK(w.width == 1);
    CHECK(w.r[0] == 255.0);
    CHECK(w.g[0] == 255.0);
    CHECK(w.b[0] == 255.0);

    const RGBImage b = raster::load_image((dir / "black.png").string());
    CHECK(b.r[0] == 0.0);
    CHECK(b.g[0] == 0.0);
    CHECK(b.b[0] == 0.0);
}

TEST_CASE("load_image error paths") {
    CHECK_THROWS_AS(raster::load_image("/nonexistent/nope.png"), io_error);

    const auto bad = tmp_dir() / "truncated.png";
    std::ofstream f(bad, std::ios::binary);
    f << "\x89PNG\r\n\x1a\nnot really a png";
    f.close();
    CHECK_THROWS_AS(raster::load_image(bad.string()), format_error);
}

TEST_CASE("to_luminance evaluates the channel weights") {
    RGBImage img(3, 1);
    img.r = {255, 255, 0};
    img.g = {255, 0, 255};
    img.b = {255, 0, 0};
    const GrayImage gray = raster::to_luminance(img);
    CHECK(gray.data[0] == doctest::Approx(255.0).epsilon(1e-12));
    CHECK(gray.data[1] == doctest::Approx(76.245).epsilon(1e-12));
    CHECK(gray.data[2] == doctest::Approx(149.685).epsilon(1e-12));
}

TEST_CASE("to_luminance range and permutation covariance") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(0.0, 255.0);
    RGBImage img(8, 8);
    for (std::size_t i = 0; i < img.r.size(); ++i) {
        img.r[i] = d(rng);
        img.g[i] = d(rng);
        img.b[i] = d(rng);
    }
    const GrayImage gray = raster::to_luminance(img);
    for (double v : gray.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
    }

    // permute pixels, then convert: must equal converting then permuting
    std::vector<std::size_t> perm(img.r.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    RGBImage shuffled(8, 8);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.r[i] = img.r[perm[i]];
        shuffled.g[i] = img.g[perm[i]];
        shuffled.b[i] = img.b[perm[i]];
    }
    const GrayImage gray2 = raster::to_luminance(shuffled);
    for (std::size_t i = 0; i < perm.size(); ++i)
        CHECK(gray2.data[i] == doctest::Approx(gray.data[perm[i]]).epsilon(1e-12));
}

TEST_CASE("resize_bilinear identity and constants") {
    const GrayImage img = random_image(13, 9, 3);
    const GrayImage same = raster::resize_bilinear(img, 13, 9);
    CHECK(same == img);

    const GrayImage constant(5, 4, 42.5);
    const GrayImage scaled = raster::resize_bilinear(constant, 11, 7);
    for (double v : scaled.data)
        CHECK(v == doctest::Approx(42.5).epsilon(1e-12));
}

TEST_CASE("resize_bilinear corner-aligned midpoint") {
    GrayImage row(2, 1);
    row.data = {10.0, 30.0};
    const GrayImage wide = raster::resize_bilinear(row, 3, 1);
    CHECK(wide.data[0] == doctest::Approx(10.0));
    CHECK(wide.data[1] == doctest::Approx(20.0));
    CHECK(wide.data[2] == doctest::Approx(30.0));
}

TEST_CASE("resize_bilinear preserves min/max bounds") {
    const GrayImage img = random_image(17, 11, 9);
    const auto [mn, mx] = std::minmax_element(img.data.begin(), img.data.end());
    for (auto [tw, th] : {std::pair{5, 3}, {40, 25}, {17, 30}}) {
        const GrayImage out = raster::resize_bilinear(img, tw, th);
        for (double v : out.data) {
            CHECK(v >= *mn - 1e-12);
            CHECK(v <= *mx + 1e-12);
        }
    }
    CHECK_THROWS_AS(raster::resize_bilinear(img, 0, 5), argument_error);
}

TEST_CASE("downscale_longest keeps aspect and passes small images through") {
    const GrayImage img = random_image(200, 100, 1);
    const GrayImage small = raster::downscale_longest(img, 50);
    CHECK(small.width == 50);
    CHECK(small.height == 25);
    CHECK(raster::downscale_longest(img, 512) == img);
}

TEST_CASE("clahe constant image is a fixed point") {
    const GrayImage constant(32, 32, 77.0);
    const GrayImage out = raster::clahe(constant, 2.0, 4, 4);
    for (double v : out.data)
        CHECK(v == doctest::Approx(77.0).epsilon(1e-12));
    const GrayImage again = raster::clahe(out, 2.0, 4, 4);
    CHECK(again == out);
}

TEST_CASE("clahe 1x1 tiles with huge clip equals global equalization") {
    const GrayImage img = random_image(24, 16, 5);
    const GrayImage out = raster::clahe(img, 1e9, 1, 1);
    const GrayImage oracle = global_he(img);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        CHECK(out.data[i] == doctest::Approx(oracle.data[i]).epsilon(1e-9));
}

TEST_CASE("clahe output stays in range and rejects tiny images") {
    const GrayImage img = random_image(40, 32, 8);
    const GrayImage out = raster::clahe(img, 2.0, 8, 8);
    for (double v : out.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
    }
    CHECK_THROWS_AS(raster::clahe(GrayImage(4, 4, 1.0), 2.0, 8, 8), argument_error);
    CHECK_THROWS_AS(raster::clahe(img, 0.0, 8, 8), argument_error);
}

TEST_CASE("save_png round-half-up quantization round-trips") {
    const auto dir = tmp_dir();
    GrayImage img(2, 1);
    img.data = {100.5, 99.4};
    raster::save_png(img, (dir / "q.png").string());
    const RGBImage back = raster::load_image((dir / "q.png").string());
    CHECK(back.r[0] == 101.0);
    CHECK(back.r[1] == 99.0);
}
