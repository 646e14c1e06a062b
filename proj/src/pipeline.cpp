#include "fiqa/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "fiqa/raster.hpp"

namespace fs = std::filesystem;

namespace fiqa::pipeline {

std::vector<double> RunConfig::angles_radians() const {
    std::vector<double> a;
    a.reserve(angle_degrees.size());
    for (int deg : angle_degrees)
        a.push_back(deg * std::numbers::pi / 180.0);
    return a;
}

void RunConfig::validate() const {
    if (resize_longest < 1 || clahe_clip <= 0 || clahe_tiles_x < 1 || clahe_tiles_y < 1 ||
        aa_sigma <= 0 || min_tail < 2 || threads < 0)
        throw argument_error("invalid configuration value");
    if (angle_degrees.empty())
        throw argument_error("angle list must be nonempty");
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void dump_gray_png(const GrayImage& img, const std::string& path) {
    raster::save_png(img, path);
}

GrayImage log_magnitude_image(const spectral::Spectrum& spec) {
    GrayImage out(spec.size, spec.size);
    double mx = 0.0;
    for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
        out.data[i] = std::log1p(std::abs(spec.coeffs[i]));
        mx = std::max(mx, out.data[i]);
    }
    if (mx > 0)
        for (auto& v : out.data)
            v = v / mx * 255.0;
    return out;
}

} // namespace

stats::ProbDescriptor image_descriptor(const RGBImage& img, const std::string& source_id,
                                       const RunConfig& cfg) {
    GrayImage gray = raster::to_luminance(img);
    gray = raster::downscale_longest(gray, cfg.resize_longest);
    gray = raster::clahe(gray, cfg.clahe_clip, cfg.clahe_tiles_x, cfg.clahe_tiles_y);
    const GrayImage padded = spectral::zero_pad_square(gray);
    const spectral::Spectrum spec = spectral::shift_spectrum(spectral::dft2(padded));
    const auto& mask = spectral::cached_mask(padded.width, cfg.angles_radians(), cfg.aa_sigma);
    const spectral::Descriptor d = spectral::extract_descriptor(spec, mask, source_id);

    if (!cfg.debug_dir.empty()) {
        fs::create_directories(cfg.debug_dir);
        dump_gray_png(gray, cfg.debug_dir + "/" + source_id + "_preprocessed.png");
        dump_gray_png(log_magnitude_image(spec), cfg.debug_dir + "/" + source_id + "_spectrum.png");
        GrayImage m(mask.size, mask.size);
        for (std::size_t i = 0; i < m.data.size(); ++i)
            m.data[i] = mask.weights[i] * 255.0;
        dump_gray_png(m, cfg.debug_dir + "/mask.png");
        std::ofstream csv(cfg.debug_dir + "/" + source_id + "_descriptor.csv");
        csv << source_id;
        for (double v : d.values)
            csv << "," << fmt_double(v);
        csv << "\n";
    }
    return stats::normalize_probability(d);
}

std::vector<std::string> list_image_files(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw io_error("not a readable directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file())
            continue;
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png" || ext == ".tif" || ext == ".tiff" || ext == ".jpg" || ext == ".jpeg")
            paths.push_back(e.path().string());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

stats::StackAssessment score_files(const std::vector<std::string>& paths,
                                   const RunConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(paths.size());
    std::vector<stats::ProbDescriptor> descriptors(n);
    std::exception_ptr error;

#ifdef _OPENMP
    if (cfg.threads > 0)
        omp_set_num_threads(cfg.threads);
#endif
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            const RGBImage img = raster::load_image(paths[i]);
            descriptors[i] =
                image_descriptor(img, fs::path(paths[i]).stem().string(), cfg);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);

    return stats::classify_stack(descriptors, cfg.z_threshold, cfg.min_tail);
}

std::string stack_to_csv(const stats::StackAssessment& a) {
    std::ostringstream out;
    out << "source_id,iqr_score,z_score,label,rank\n";
    for (const auto& img : a.images)
        out << img.source_id << ',' << fmt_double(img.iqr_score) << ','
            << fmt_double(img.z_score) << ',' << (img.sharp ? "sharp" : "blurred") << ','
            << img.rank << '\n';
    return out.str();
}

std::string stack_to_json(const stats::StackAssessment& a, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["crop_threshold"] = a.crop_threshold;
    j["z_threshold"] = a.z_threshold;
    j["config"] = {{"resize_longest", cfg.resize_longest},
                   {"clahe_clip", cfg.clahe_clip},
                   {"clahe_tiles", {cfg.clahe_tiles_x, cfg.clahe_tiles_y}},
                   {"angles_deg", cfg.angle_degrees},
                   {"aa_sigma", cfg.aa_sigma},
                   {"min_tail", cfg.min_tail}};
    j["images"] = nlohmann::ordered_json::array();
    for (const auto& img : a.images)
        j["images"].push_back({{"source_id", img.source_id},
                               {"iqr_score", img.iqr_score},
                               {"z_score", img.z_score},
                               {"label", img.sharp ? "sharp" : "blurred"},
                               {"rank", img.rank}});
    return j.dump(2) + "\n";
}

} // namespace fiqa::pipeline
