// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// polyocr: post-process OCR output of historical commentaries and evaluate
// it against coordinate-annotated ground truth.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyocr/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OCR post-processing and coordinate-based evaluation for historical "
                 "classical commentaries"};
    app.require_subcommand(1);

    std::string manifest_path;
    polyocr::CommonOptions opts;
    std::string groups = "on";
    std::vector<std::string> metrics_files;
    std::string report_out = "report.md";
    std::string ocr_root;
    std::string output_override;

    auto add_common = [&](CLI::App* cmd, bool needs_manifest = true) {
        cmd->add_option("--manifest", manifest_path, "Run manifest JSON")
            ->required(needs_manifest);
        cmd->add_option("--jobs", opts.jobs, "Worker threads per page batch")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--pin-timestamp", opts.pin_timestamp,
                        "Fixed ISO8601 timestamp for reproducible outputs");
        cmd->add_option("--out", output_override, "Override the manifest's output directory");
    };

    CLI::App* stats = app.add_subcommand("stats", "Ground-truth corpus statistics per region "
                                                  "group, plus OCR dictionary accuracy");
    add_common(stats);

    CLI::App* post = app.add_subcommand("postprocess", "Dehyphenate and spellcheck OCR pages");
    add_common(post);

    CLI::App* eval = app.add_subcommand("evaluate", "Align GT and OCR by coordinates and compute "
                                                    "CER/WER/F1/NLD per region group");
    add_common(eval);
    eval->add_option("--iou", opts.iou, "IoU threshold for word matching")
        ->check(CLI::Range(0.0, 1.0))
        ->default_val(polyocr::kDefaultIouThreshold);
    eval->add_option("--groups", groups, "Per-group rows in reports: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    eval->add_option("--label", opts.label, "Run label used in report rows and file names");
    eval->add_option("--ocr-root", ocr_root,
                     "Evaluate pages under <ocr-root>/<commentary-id> instead of the manifest's "
                     "ocr_dir (e.g. a postprocessed tree)");

    CLI::App* report = app.add_subcommand("report", "Merge evaluation metrics files into one "
                                                    "Markdown report");
    report->add_option("--metrics", metrics_files, "Evaluation metrics JSON files")
        ->required()
        ->expected(-1);
    report->add_option("--out", report_out, "Output Markdown path");
    report->add_option("--pin-timestamp", opts.pin_timestamp,
                       "Fixed ISO8601 timestamp for reproducible outputs");

    CLI11_PARSE(app, argc, argv);

    opts.groups = groups != "off";
    if (!ocr_root.empty()) opts.ocr_root = ocr_root;
    if (!output_override.empty()) opts.output_override = output_override;

    try {
        if (report->parsed()) {
            std::vector<polyocr::fs::path> files(metrics_files.begin(), metrics_files.end());
            return polyocr::cmd_report(files, report_out, opts, std::cout);
        }
        const polyocr::RunManifest manifest = polyocr::RunManifest::load(manifest_path);
        if (stats->parsed()) return polyocr::cmd_stats(manifest, opts, std::cout);
        if (post->parsed()) return polyocr::cmd_postprocess(manifest, opts, std::cout);
        if (eval->parsed()) return polyocr::cmd_evaluate(manifest, opts, std::cout);
        return kExitOk;
    } catch (const polyocr::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const polyocr::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
