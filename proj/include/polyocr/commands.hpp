// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Batch commands behind the CLI subcommands: stats, postprocess, evaluate,
// report. Kept in the library so tests can drive them directly.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "polyocr/annotations.hpp"
#include "polyocr/canonical.hpp"
#include "polyocr/evaluate.hpp"
#include "polyocr/hocr.hpp"
#include "polyocr/lexicon.hpp"
#include "polyocr/manifest.hpp"
#include "polyocr/postprocess.hpp"
#include "polyocr/report.hpp"

namespace polyocr {

struct CommonOptions {
    double iou = kDefaultIouThreshold;
    bool groups = true;
    int jobs = 1;
    std::string pin_timestamp;  // empty: wall clock
    std::string label = "ocr";  // evaluation run label, also used in file names
    fs::path ocr_root;          // override: OCR pages under <ocr_root>/<commentary-id>
    fs::path output_override;   // override the manifest's output_dir
};

inline std::string iso_timestamp(const std::string& pin) {
    if (!pin.empty()) return pin;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline fs::path output_dir(const RunManifest& manifest, const CommonOptions& opts) {
    return opts.output_override.empty() ? manifest.output_dir : opts.output_override;
}

/// Runs fn(0..n) on a small worker pool; rethrows the first failure.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Input loading

struct NamedPage {
    std::string id;
    Page page;
};

inline bool is_hocr_file(const fs::path& p) {
    const std::string ext = p.extension().string();
    return ext == ".html" || ext == ".hocr" || ext == ".xhtml" || ext == ".htm";
}

/// Loads every hOCR/canonical page in a directory, sorted by file stem; the
/// stem becomes the page id.
inline std::vector<NamedPage> load_pages(const fs::path& dir) {
    std::vector<NamedPage> pages;
    if (dir.empty()) return pages;
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (is_hocr_file(entry.path()) || entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        NamedPage np;
        np.id = f.stem().string();
        try {
            np.page = is_hocr_file(f) ? parse_hocr(slurp(f)).page : read_canonical(slurp(f));
        } catch (const InputError& e) {
            throw InputError(f.string() + ": " + e.what());
        }
        np.page.id = np.id;
        pages.push_back(std::move(np));
    }
    return pages;
}

inline std::vector<RegionAnnotation> load_annotations_for(const fs::path& dir,
                                                          const std::string& page_id,
                                                          const RegionTaxonomy& taxonomy) {
    if (dir.empty()) return {};
    const fs::path file = dir / (page_id + ".json");
    if (!fs::exists(file)) return {};
    try {
        return parse_region_annotations(slurp(file), taxonomy);
    } catch (const InputError& e) {
        throw InputError(file.string() + ": " + e.what());
    }
}

inline RegionTaxonomy load_taxonomy(const RunManifest& manifest) {
    if (manifest.taxonomy_path.empty()) return RegionTaxonomy::defaults();
    try {
        return RegionTaxonomy::from_json(nlohmann::json::parse(slurp(manifest.taxonomy_path)));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("region taxonomy '" + manifest.taxonomy_path.string() +
                         "': bad JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// stats

inline StatsResult compute_stats(const RunManifest& manifest, const CommonOptions& opts) {
    const RegionTaxonomy taxonomy = load_taxonomy(manifest);
    std::optional<Lexicon> lexicon;
    if (!manifest.lexicon_path.empty()) lexicon = Lexicon::load(manifest.lexicon_path.string());

    StatsResult stats;
    for (const auto& entry : manifest.commentaries) {
        std::vector<NamedPage> gt = load_pages(entry.gt_dir);
        if (gt.empty())
            throw InputError("commentary '" + entry.id + "': no GT pages in " +
                             entry.gt_dir.string());

        std::vector<Page> assigned(gt.size());
        parallel_for(gt.size(), opts.jobs, [&](std::size_t i) {
            assigned[i] = assign_regions(
                gt[i].page, load_annotations_for(entry.annotations_dir, gt[i].id, taxonomy));
        });

        StatsResult::PerCommentary cm;
        cm.id = entry.id;
        cm.language = entry.language;
        cm.tallies = corpus_stats(assigned, taxonomy);
        if (lexicon && !entry.ocr_dir.empty()) {
            std::vector<std::string> tokens;
            for (const auto& np : load_pages(entry.ocr_dir)) {
                for (const auto& text : all_word_texts(np.page)) {
                    std::string tok = trim_to_letters(text);
                    if (tok.empty()) continue;
                    if (manifest.dict_greek_only && greek_ratio(tok) <= 0.5) continue;
                    tokens.push_back(std::move(tok));
                }
            }
            cm.dict = dictionary_accuracy(tokens, *lexicon);
            cm.has_dict = true;
        }
        merge_tallies(stats.overall, cm.tallies);
        stats.per_commentary.push_back(std::move(cm));
    }
    return stats;
}

inline int cmd_stats(const RunManifest& manifest, const CommonOptions& opts, std::ostream& log) {
    StatsResult stats = compute_stats(manifest, opts);
    const std::string ts = iso_timestamp(opts.pin_timestamp);
    const fs::path out = output_dir(manifest, opts);
    spit(out / "stats.json", stats_to_json(stats, ts).dump(2) + "\n");
    spit(out / "stats.md", stats_markdown(stats, ts));
    log << "stats: " << stats.per_commentary.size() << " commentaries, global chars "
        << stats.overall.at(kGlobalScope).letters_digits << " -> " << (out / "stats.json").string()
        << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// postprocess

struct LoadedPipeline {
    PipelineConfig config;
    std::optional<ConfusionPairTable> confusion;
    std::optional<Lexicon> lexicon;
    std::optional<UniqueAccentIndex> unique_index;

    PipelineContext context() const {
        PipelineContext ctx;
        if (lexicon) ctx.lexicon = &*lexicon;
        if (unique_index) ctx.unique_index = &*unique_index;
        if (confusion) ctx.confusion = &*confusion;
        return ctx;
    }
};

inline LoadedPipeline load_pipeline(const RunManifest& manifest) {
    LoadedPipeline lp;
    if (!manifest.pipeline_path.empty()) {
        try {
            lp.config = PipelineConfig::from_json(
                nlohmann::json::parse(slurp(manifest.pipeline_path)));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("pipeline config '" + manifest.pipeline_path.string() +
                             "': bad JSON: " + e.what());
        }
        if (!lp.config.confusion_table_path.empty()) {
            fs::path table = lp.config.confusion_table_path;
            if (!table.is_absolute()) table = manifest.pipeline_path.parent_path() / table;
            lp.confusion = ConfusionPairTable::load(table.string());
        }
    }
    if (!manifest.lexicon_path.empty()) {
        lp.lexicon = Lexicon::load(manifest.lexicon_path.string());
        lp.unique_index = UniqueAccentIndex::build(*lp.lexicon);
    }
    return lp;
}

inline int cmd_postprocess(const RunManifest& manifest, const CommonOptions& opts,
                           std::ostream& log) {
    const RegionTaxonomy taxonomy = load_taxonomy(manifest);
    const LoadedPipeline lp = load_pipeline(manifest);
    const fs::path out = output_dir(manifest, opts);

    CorrectionLog merged;
    nlohmann::json summary;
    summary["kind"] = "postprocess";
    summary["generated_at"] = iso_timestamp(opts.pin_timestamp);
    summary["stages"] = nlohmann::json::array();
    for (Stage s : lp.config.stages)
        summary["stages"].push_back(s == Stage::Dehyphenation  ? "dehyphenation"
                                    : s == Stage::UniqueAccent ? "unique-accent"
                                                               : "confusion-pair");

    std::size_t total_corrections = 0, total_pages = 0;
    for (const auto& entry : manifest.commentaries) {
        if (entry.ocr_dir.empty())
            throw InputError("commentary '" + entry.id + "': no ocr_dir to post-process");
        std::vector<NamedPage> ocr = load_pages(entry.ocr_dir);
        if (ocr.empty())
            throw InputError("commentary '" + entry.id + "': no OCR pages in " +
                             entry.ocr_dir.string());

        std::vector<std::pair<Page, CorrectionLog>> results(ocr.size());
        parallel_for(ocr.size(), opts.jobs, [&](std::size_t i) {
            Page assigned = assign_regions(
                ocr[i].page, load_annotations_for(entry.annotations_dir, ocr[i].id, taxonomy));
            results[i] = run_pipeline(assigned, lp.config, lp.context());
        });
        for (std::size_t i = 0; i < ocr.size(); ++i) {
            validate(results[i].first);
            spit(out / "postprocessed" / entry.id / (ocr[i].id + ".json"),
                 write_canonical(results[i].first));
            total_corrections += results[i].second.records.size();
            merged.append(std::move(results[i].second));
        }
        total_pages += ocr.size();
    }
    spit(out / "corrections.tsv", merged.to_tsv());
    if (lp.unique_index) spit(out / "unique_accent_index.tsv", lp.unique_index->to_tsv());
    summary["pages"] = total_pages;
    summary["corrections"] = total_corrections;
    summary["unresolved_hyphens"] = merged.unresolved.size();
    spit(out / "postprocess.json", summary.dump(2) + "\n");
    log << "postprocess: " << total_pages << " pages, " << total_corrections << " corrections -> "
        << (out / "postprocessed").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

inline EvaluationResult compute_evaluation(const RunManifest& manifest,
                                           const CommonOptions& opts) {
    const RegionTaxonomy taxonomy = load_taxonomy(manifest);
    EvaluationResult eval;
    eval.label = opts.label;
    eval.iou_threshold = opts.iou;

    for (const auto& entry : manifest.commentaries) {
        const fs::path ocr_dir =
            opts.ocr_root.empty() ? entry.ocr_dir : opts.ocr_root / entry.id;
        if (ocr_dir.empty())
            throw InputError("commentary '" + entry.id + "': no ocr_dir to evaluate");
        std::vector<NamedPage> gt = load_pages(entry.gt_dir);
        std::vector<NamedPage> ocr = load_pages(ocr_dir);

        // Page sets must line up by id; report orphans on either side.
        std::vector<std::string> orphans;
        auto has = [](const std::vector<NamedPage>& v, const std::string& id) {
            return std::any_of(v.begin(), v.end(), [&](const NamedPage& p) { return p.id == id; });
        };
        for (const auto& p : gt)
            if (!has(ocr, p.id)) orphans.push_back(entry.id + "/" + p.id + " (GT only)");
        for (const auto& p : ocr)
            if (!has(gt, p.id)) orphans.push_back(entry.id + "/" + p.id + " (OCR only)");
        if (!orphans.empty()) {
            std::string msg = "page-id mismatch:";
            for (const auto& o : orphans) msg += "\n  " + o;
            throw InputError(msg);
        }
        if (gt.empty())
            throw InputError("commentary '" + entry.id + "': no GT pages in " +
                             entry.gt_dir.string());

        std::vector<TallyMap> page_tallies(gt.size());
        parallel_for(gt.size(), opts.jobs, [&](std::size_t i) {
            const auto annots =
                load_annotations_for(entry.annotations_dir, gt[i].id, taxonomy);
            const Page gtp = assign_regions(gt[i].page, annots);
            const auto oit = std::find_if(ocr.begin(), ocr.end(), [&](const NamedPage& p) {
                return p.id == gt[i].id;
            });
            const Page ocrp = assign_regions(oit->page, annots);
            page_tallies[i] = tally_alignment(align_words(gtp, ocrp, opts.iou), taxonomy);
        });

        CommentaryMetrics cm;
        cm.id = entry.id;
        cm.language = entry.language;
        for (const TallyMap& t : page_tallies) merge_tallies(cm.tallies, t);
        merge_tallies(eval.overall, cm.tallies);
        eval.per_commentary.push_back(std::move(cm));
    }
    return eval;
}

inline int cmd_evaluate(const RunManifest& manifest, const CommonOptions& opts,
                        std::ostream& log) {
    EvaluationResult eval = compute_evaluation(manifest, opts);
    const std::string ts = iso_timestamp(opts.pin_timestamp);
    const fs::path out = output_dir(manifest, opts);
    const nlohmann::json j = evaluation_to_json(eval, ts, opts.groups);
    spit(out / ("metrics_" + opts.label + ".json"), j.dump(2) + "\n");
    spit(out / ("report_" + opts.label + ".md"), evaluations_markdown({j}, ts));
    MetricRow g = metric_row(kGlobalScope, eval.overall[kGlobalScope]);
    log << "evaluate [" << opts.label << "]: global CER " << g.cer << ", WER " << g.wer << ", F1 "
        << g.bow.f1 << " -> " << (out / ("metrics_" + opts.label + ".json")).string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// report

inline int cmd_report(const std::vector<fs::path>& metrics_files, const fs::path& out_file,
                      const CommonOptions& opts, std::ostream& log) {
    if (metrics_files.empty()) throw InputError("report: no metrics files given");
    std::vector<nlohmann::json> evals;
    for (const auto& f : metrics_files) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(slurp(f));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("metrics '" + f.string() + "': bad JSON: " + e.what());
        }
        if (j.value("kind", "") != "evaluation")
            throw InputError("metrics '" + f.string() + "': not an evaluation report");
        evals.push_back(std::move(j));
    }
    spit(out_file, evaluations_markdown(evals, iso_timestamp(opts.pin_timestamp)));
    log << "report: " << evals.size() << " runs -> " << out_file.string() << "\n";
    return 0;
}

}  // namespace polyocr
