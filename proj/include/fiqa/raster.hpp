#pragma once

#include <string>

#include "fiqa/image.hpp"

namespace fiqa::raster {

// Decodes PNG/TIFF/JPEG. Grayscale sources replicate into three equal channels.
RGBImage load_image(const std::string& path);

// I_lum = 0.299 R + 0.587 G + 0.114 B, kept floating-point.
GrayImage to_luminance(const RGBImage& img);

// Corner-aligned bilinear resize: source corners map onto destination corners.
GrayImage resize_bilinear(const GrayImage& img, int target_w, int target_h);

// Downscale so the longest side equals `longest` (aspect preserved).
// Images already at or below the limit pass through unchanged.
GrayImage downscale_longest(const GrayImage& img, int longest);

// Contrast-limited adaptive histogram equalization over a tiles_x x tiles_y
// grid. clip_limit is relative to the uniform bin height of a tile histogram.
// Tiles whose histogram occupies a single bin map identically (nothing to
// equalize, and constant images stay fixed points).
GrayImage clahe(const GrayImage& img, double clip_limit, int tiles_x, int tiles_y);

// 8-bit grayscale PNG, round-half-up quantization.
void save_png(const GrayImage& img, const std::string& path);

} // namespace fiqa::raster
