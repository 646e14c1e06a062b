#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiqa/stats.hpp"

namespace fiqa::pipeline {

struct RunConfig {
    int resize_longest = 512;
    double clahe_clip = 2.0;
    int clahe_tiles_x = 8;
    int clahe_tiles_y = 8;
    std::vector<int> angle_degrees = {0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50,
                                      55, 60, 65, 70, 75, 80, 85, 90, 95, 100};
    double aa_sigma = 1.0;
    double z_threshold = 1.0;
    int min_tail = stats::kDefaultMinTail;
    int threads = 0;                  // 0 = all available cores
    std::string debug_dir;            // when set, dump intermediates as PNG/CSV

    std::vector<double> angles_radians() const;
    void validate() const;
};

// Full per-image chain: luminance -> downscale -> CLAHE -> pad -> FFT ->
// shift -> radial sampling -> probability mapping.
stats::ProbDescriptor image_descriptor(const RGBImage& img, const std::string& source_id,
                                       const RunConfig& cfg);

// Lexicographically sorted image files (png/tif/tiff/jpg/jpeg) in a directory.
std::vector<std::string> list_image_files(const std::string& dir);

// Scores a whole stack of image files. Descriptors are computed in parallel,
// the stack statistics after all of them are done.
stats::StackAssessment score_files(const std::vector<std::string>& paths,
                                   const RunConfig& cfg);

std::string stack_to_csv(const stats::StackAssessment& a);
std::string stack_to_json(const stats::StackAssessment& a, const RunConfig& cfg);

} // namespace fiqa::pipeline
