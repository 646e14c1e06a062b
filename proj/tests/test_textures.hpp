#pragma once

// Procedural base images shared by the blur-ladder tests.

#include <cmath>
#include <random>

#include "fiqa/image.hpp"

namespace testutil {

inline fiqa::GrayImage white_noise(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    fiqa::GrayImage img(w, h);
    for (auto& v : img.data)
        v = dist(rng);
    return img;
}

inline fiqa::GrayImage checkerboard(int w, int h, int cell, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(-20.0, 20.0);
    fiqa::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool on = ((x / cell) + (y / cell)) % 2 == 0;
            img.at(x, y) = std::clamp((on ? 220.0 : 35.0) + jitter(rng), 0.0, 255.0);
        }
    return img;
}

inline fiqa::GrayImage sinusoid_mix(int w, int h) {
    fiqa::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = std::sin(0.9 * x) + std::sin(0.53 * y) +
                             std::sin(0.21 * (x + y)) + std::sin(0.07 * x) * std::sin(0.11 * y);
            img.at(x, y) = 127.5 + 60.0 * v / 2.0;
        }
    return img;
}

// Random rectangles over a gradient: hard edges at many orientations.
inline fiqa::GrayImage rectangles(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    std::uniform_int_distribution<int> extent(3, std::max(4, w / 6));
    std::uniform_real_distribution<double> shade(0.0, 255.0);
    fiqa::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = 255.0 * x / w;
    for (int k = 0; k < 60; ++k) {
        const int x0 = px(rng), y0 = py(rng);
        const int x1 = std::min(w - 1, x0 + extent(rng));
        const int y1 = std::min(h - 1, y0 + extent(rng));
        const double s = shade(rng);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                img.at(x, y) = s;
    }
    return img;
}

// Smoothed blobs plus speckle: a rough stand-in for a natural photograph.
inline fiqa::GrayImage blobs(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    fiqa::GrayImage img(w, h);
    for (auto& v : img.data)
        v = dist(rng);
    // box-smooth twice for low-frequency structure
    for (int pass = 0; pass < 2; ++pass) {
        fiqa::GrayImage tmp = img;
        for (int y = 1; y < h - 1; ++y)
            for (int x = 1; x < w - 1; ++x)
                img.at(x, y) = (tmp.at(x - 1, y) + tmp.at(x + 1, y) + tmp.at(x, y - 1) +
                                tmp.at(x, y + 1) + tmp.at(x, y)) / 5.0;
    }
    std::uniform_real_distribution<double> speck(-40.0, 40.0);
    for (auto& v : img.data)
        v = std::clamp(v + speck(rng), 0.0, 255.0);
    return img;
}

// Soft-edged elliptical cells over a gradient, in the spirit of a
// bright-field micrograph.
inline fiqa::GrayImage cells(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> px(0.0, w), py(0.0, h), rad(6.0, 26.0),
        shade(40.0, 210.0), ecc(0.6, 1.6);
    fiqa::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = 170.0 + 40.0 * y / h;
    for (int k = 0; k < 40; ++k) {
        const double cx = px(rng), cy = py(rng), r = rad(rng), s = shade(rng), e = ecc(rng);
        const int x0 = std::max(0, static_cast<int>(cx - r * e - 3));
        const int x1 = std::min(w - 1, static_cast<int>(cx + r * e + 3));
        const int y0 = std::max(0, static_cast<int>(cy - r - 3));
        const int y1 = std::min(h - 1, static_cast<int>(cy + r + 3));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = (x - cx) / e, dy = y - cy;
                const double d = std::sqrt(dx * dx + dy * dy) - r;
                const double a = 1.0 / (1.0 + std::exp(d / 1.5)); // soft membrane edge
                img.at(x, y) = (1.0 - a) * img.at(x, y) + a * s;
            }
    }
    return img;
}

inline fiqa::GrayImage grid_lines(int w, int h, int period) {
    fiqa::GrayImage img(w, h, 200.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (x % period == 0 || y % period == 0)
                img.at(x, y) = 20.0;
    return img;
}

inline std::vector<fiqa::GrayImage> base_images(int w, int h) {
    return {white_noise(w, h, 11),  checkerboard(w, h, 6, 22), sinusoid_mix(w, h),
            rectangles(w, h, 33),   blobs(w, h, 44),           grid_lines(w, h, 9)};
}

} // namespace testutil
