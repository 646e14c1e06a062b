#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiqa/baseline.hpp"
#include "fiqa/evalharness.hpp"
#include "fiqa/pipeline.hpp"
#include "fiqa/raster.hpp"
#include "fiqa/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;      // usage or input errors
constexpr int kExitDegenerate = 3; // stack statistics undefined

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f)
            throw fiqa::io_error("cannot write output file: " + out_path);
        f << text;
    }
}

// CSV with a header line; returns rows of fields.
std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw fiqa::io_error("cannot read CSV: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

// CLI11 only processes config files registered on the root app, so a
// per-subcommand config is applied by hand after parsing: file values fill in
// options the command line left untouched (flags > file > defaults).
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw fiqa::io_error("cannot read config file: " + path);
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw fiqa::format_error("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr || opt->count() > 0)
            continue; // unknown keys ignored; explicit flags win
        std::stringstream ss(value);
        std::string token;
        while (ss >> token)
            opt->add_result(token);
        opt->run_callback();
    }
}

void add_config_options(CLI::App* cmd, fiqa::pipeline::RunConfig& cfg,
                        std::string& config_path) {
    // CLI flags override config-file values, which override the defaults.
    cmd->add_option("--config", config_path, "Plain key=value config file");
    cmd->add_option("--resize-longest", cfg.resize_longest, "Longest side after downscaling");
    cmd->add_option("--clahe-clip", cfg.clahe_clip, "CLAHE clip limit (x uniform bin height)");
    cmd->add_option("--clahe-tiles-x", cfg.clahe_tiles_x, "CLAHE tile columns");
    cmd->add_option("--clahe-tiles-y", cfg.clahe_tiles_y, "CLAHE tile rows");
    cmd->add_option("--angles", cfg.angle_degrees, "Radial mask angles in degrees");
    cmd->add_option("--aa-sigma", cfg.aa_sigma, "Mask antialiasing Gaussian std");
    cmd->add_option("--z-threshold", cfg.z_threshold, "Sharp/blurred z-score threshold");
    cmd->add_option("--min-tail", cfg.min_tail, "Minimum descriptor tail kept when cropping");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--debug-dir", cfg.debug_dir, "Dump intermediates (PNG/CSV) here");
}

int run_score(const std::string& input_dir, const fiqa::pipeline::RunConfig& cfg,
              const std::string& format, const std::string& out_path, bool rank_only) {
    const auto paths = fiqa::pipeline::list_image_files(input_dir);
    if (paths.size() < 2)
        throw fiqa::degenerate_input_error("need at least 2 images, found " +
                                           std::to_string(paths.size()));
    const auto assessment = fiqa::pipeline::score_files(paths, cfg);

    if (rank_only) {
        std::vector<const fiqa::stats::ImageAssessment*> ordered;
        for (const auto& img : assessment.images)
            ordered.push_back(&img);
        std::sort(ordered.begin(), ordered.end(),
                  [](auto* a, auto* b) { return a->rank < b->rank; });
        std::ostringstream out;
        for (const auto* img : ordered)
            out << img->rank << ',' << img->source_id << '\n';
        write_output(out.str(), out_path);
        return kExitOk;
    }

    if (format == "json")
        write_output(fiqa::pipeline::stack_to_json(assessment, cfg), out_path);
    else
        write_output(fiqa::pipeline::stack_to_csv(assessment), out_path);
    return kExitOk;
}

int run_evaluate(const std::string& scores_csv, const std::string& labels_csv,
                 const std::string& format, const std::string& out_path) {
    auto score_rows = read_csv(scores_csv);
    auto label_rows = read_csv(labels_csv);
    if (score_rows.empty() || label_rows.empty())
        throw fiqa::format_error("empty CSV input");

    auto parse_table = [](std::vector<std::vector<std::string>>& rows,
                          const std::string& value_col) {
        std::vector<std::pair<std::string, double>> out;
        const auto& header = rows.front();
        std::size_t id_idx = 0, val_idx = 1;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == "source_id") id_idx = i;
            if (header[i] == value_col) val_idx = i;
        }
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() <= std::max(id_idx, val_idx))
                throw fiqa::format_error("short CSV row");
            out.emplace_back(rows[r][id_idx], std::stod(rows[r][val_idx]));
        }
        return out;
    };

    const auto scores = parse_table(score_rows, "iqr_score");
    const auto label_pairs = parse_table(label_rows, "label");
    fiqa::eval::LabeledStack labels;
    for (const auto& [id, v] : label_pairs)
        labels.entries.emplace_back(id, static_cast<int>(v));

    const auto report = fiqa::eval::evaluate(scores, labels);

    if (format == "table") {
        std::ostringstream out;
        out << "Method      PLCC     SRCC     KRCC     n\n";
        char line[128];
        std::snprintf(line, sizeof(line), "%-10s %8.4f %8.4f %8.4f %5zu\n", "proposed",
                      report.plcc, report.srcc, report.krcc, report.n);
        out << line;
        write_output(out.str(), out_path);
    } else {
        ordered_json j;
        j["plcc"] = report.plcc;
        j["srcc"] = report.srcc;
        j["krcc"] = report.krcc;
        j["n"] = report.n;
        j["conventions"] = {{"spearman", "mid-ranks"}, {"kendall", "tau-b"}};
        write_output(j.dump(2) + "\n", out_path);
    }
    return kExitOk;
}

int run_generate(const std::string& base_path, const std::vector<double>& sigmas,
                 double noise_std, double sharp_cutoff, std::uint64_t seed,
                 const std::string& out_dir) {
    if (sigmas.empty())
        throw fiqa::argument_error("sigma list must be nonempty");
    const fiqa::RGBImage base_rgb = fiqa::raster::load_image(base_path);
    const fiqa::GrayImage base = fiqa::raster::to_luminance(base_rgb);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw fiqa::io_error("cannot create output directory: " + out_dir);

    const auto stack = fiqa::synth::generate_stack(base, sigmas, noise_std, sharp_cutoff, seed);

    std::ostringstream labels;
    labels << "source_id,sigma,label\n";
    for (std::size_t i = 0; i < stack.images.size(); ++i) {
        fiqa::raster::save_png(stack.images[i], out_dir + "/" + stack.ids[i] + ".png");
        labels << stack.ids[i] << ',' << fmt_double(stack.sigmas[i]) << ','
               << (stack.sharp[i] ? 1 : 0) << '\n';
    }
    {
        std::ofstream f(out_dir + "/labels.csv");
        if (!f)
            throw fiqa::io_error("cannot write labels CSV");
        f << labels.str();
    }

    ordered_json manifest;
    manifest["base_image"] = fs::path(base_path).filename().string();
    manifest["seed"] = seed;
    manifest["noise_std"] = noise_std;
    manifest["sharp_cutoff"] = sharp_cutoff;
    manifest["sigmas"] = stack.sigmas;
    std::ofstream mf(out_dir + "/manifest.json");
    if (!mf)
        throw fiqa::io_error("cannot write manifest");
    mf << manifest.dump(2) << "\n";
    return kExitOk;
}

int run_baseline(const std::string& input_dir, const std::string& metric,
                 double divisor, const std::string& out_path) {
    if (metric != "kanjar")
        throw fiqa::argument_error("unknown metric '" + metric + "'; supported: kanjar");
    const auto paths = fiqa::pipeline::list_image_files(input_dir);
    if (paths.empty())
        throw fiqa::io_error("no images in directory: " + input_dir);

    std::ostringstream out;
    out << "source_id,metric,score\n";
    for (const auto& p : paths) {
        const fiqa::GrayImage gray =
            fiqa::raster::to_luminance(fiqa::raster::load_image(p));
        const auto s =
            fiqa::baseline::kanjar_score(gray, fs::path(p).stem().string(), divisor);
        out << s.source_id << ",kanjar," << fmt_double(s.value) << '\n';
    }
    write_output(out.str(), out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"No-reference sharpness assessment for image stacks"};
    app.require_subcommand(1);

    fiqa::pipeline::RunConfig cfg;
    std::string input_dir, out_path, config_path, format = "csv";

    auto* score = app.add_subcommand("score", "Score and classify an image stack");
    score->add_option("input_dir", input_dir, "Directory with >= 2 images")->required();
    add_config_options(score, cfg, config_path);
    score->add_option("--format", format, "csv or json");
    score->add_option("-o,--output", out_path, "Output file (default stdout)");

    auto* rank = app.add_subcommand("rank", "Score a stack, emit ordering only");
    rank->add_option("input_dir", input_dir, "Directory with >= 2 images")->required();
    add_config_options(rank, cfg, config_path);
    rank->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string scores_csv, labels_csv;
    auto* evaluate = app.add_subcommand("evaluate", "Correlate scores with labels");
    evaluate->add_option("scores_csv", scores_csv, "CSV from 'score'")->required();
    evaluate->add_option("labels_csv", labels_csv, "CSV: source_id,label")->required();
    evaluate->add_option("--format", format, "json or table");
    evaluate->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string base_image, gen_out_dir;
    std::vector<double> sigmas;
    double noise_std = fiqa::synth::kDefaultNoiseStd;
    double sharp_cutoff = fiqa::synth::kDefaultSharpCutoff;
    std::uint64_t seed = 1;
    auto* generate = app.add_subcommand("generate", "Create a synthetic blur stack");
    generate->add_option("base_image", base_image, "Sharp base image")->required();
    generate->add_option("out_dir", gen_out_dir, "Destination directory")->required();
    generate->add_option("--sigmas", sigmas, "Blur stds, one image each");
    generate->add_option("--noise-std", noise_std, "Additive Gaussian noise std");
    generate->add_option("--sharp-cutoff", sharp_cutoff, "Label sharp iff sigma <= cutoff");
    generate->add_option("--seed", seed, "RNG seed");

    std::string metric = "kanjar";
    double kanjar_divisor = 1000.0;
    auto* baseline = app.add_subcommand("baseline", "Run a competitor metric");
    baseline->add_option("input_dir", input_dir, "Directory with images")->required();
    baseline->add_option("--metric", metric, "Metric name (kanjar)");
    baseline->add_option("--kanjar-divisor", kanjar_divisor, "Threshold divisor");
    baseline->add_option("-o,--output", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            if (score->parsed())
                apply_config_file(score, config_path);
            if (rank->parsed())
                apply_config_file(rank, config_path);
        }
        if (score->parsed())
            return run_score(input_dir, cfg, format, out_path, false);
        if (rank->parsed())
            return run_score(input_dir, cfg, format, out_path, true);
        if (evaluate->parsed())
            return run_evaluate(scores_csv, labels_csv, format, out_path);
        if (generate->parsed())
            return run_generate(base_image, sigmas, noise_std, sharp_cutoff, seed, gen_out_dir);
        if (baseline->parsed())
            return run_baseline(input_dir, metric, kanjar_divisor, out_path);
    } catch (const fiqa::degenerate_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const fiqa::no_threshold_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
