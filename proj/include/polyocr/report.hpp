// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Report rendering: machine-readable JSON and human-readable Markdown tables
// (global/group view and per-commentary view).
#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyocr/evaluate.hpp"

namespace polyocr {

struct CommentaryMetrics {
    std::string id;
    std::string language;
    TallyMap tallies;
};

struct EvaluationResult {
    std::string label = "ocr";
    double iou_threshold = kDefaultIouThreshold;
    TallyMap overall;
    std::vector<CommentaryMetrics> per_commentary;
};

namespace detail {

inline double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // avoid -0
}

inline std::string fmt3(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << v;
    return ss.str();
}

inline std::string fmt_pm(double mean, double stddev, bool with_std) {
    return with_std ? fmt3(mean) + "±" + fmt3(stddev) : fmt3(mean);
}

inline std::string fmt_chars(std::size_t chars, double greek_pct) {
    std::ostringstream ss;
    ss << chars << " (" << static_cast<int>(std::lround(greek_pct * 100)) << "%)";
    return ss.str();
}

}  // namespace detail

inline nlohmann::json row_to_json(const MetricRow& row) {
    nlohmann::json j;
    j["cer"] = detail::round6(row.cer);
    j["wer"] = detail::round6(row.wer);
    j["nld"] = detail::round6(row.nld);
    j["bow_f1"] = detail::round6(row.bow.f1);
    j["bow_precision"] = detail::round6(row.bow.precision);
    j["bow_recall"] = detail::round6(row.bow.recall);
    j["char_count"] = row.char_count;
    j["greek_pct"] = detail::round6(row.greek_pct);
    j["gt_chars"] = row.gt_chars;
    j["gt_words"] = row.gt_words;
    if (row.empty_scope) j["empty_scope"] = true;
    return j;
}

inline nlohmann::json scopes_to_json(const TallyMap& tallies, bool groups) {
    nlohmann::json j;
    for (const MetricRow& row : metric_rows(tallies, groups)) j[row.scope] = row_to_json(row);
    return j;
}

/// Char-count weighted mean +- std of the per-commentary global metrics.
/// CER/NLD/F1 weigh by GT chars, WER by GT words.
inline nlohmann::json across_commentaries_json(const std::vector<CommentaryMetrics>& cms) {
    nlohmann::json j;
    if (cms.size() < 2) return j;
    auto collect = [&](auto metric_of, auto weight_of) -> nlohmann::json {
        std::vector<std::pair<double, double>> vw;
        for (const auto& cm : cms) {
            auto it = cm.tallies.find(kGlobalScope);
            if (it == cm.tallies.end()) continue;
            MetricRow row = metric_row(kGlobalScope, it->second);
            const double w = weight_of(row);
            if (w > 0.0) vw.emplace_back(metric_of(row), w);
        }
        if (vw.empty()) return nullptr;
        WeightedStats s = aggregate_weighted(vw);
        return {{"mean", detail::round6(s.mean)}, {"std", detail::round6(s.stddev)}};
    };
    auto chars = [](const MetricRow& r) { return static_cast<double>(r.gt_chars); };
    auto words = [](const MetricRow& r) { return static_cast<double>(r.gt_words); };
    j["cer"] = collect([](const MetricRow& r) { return r.cer; }, chars);
    j["nld"] = collect([](const MetricRow& r) { return r.nld; }, chars);
    j["bow_f1"] = collect([](const MetricRow& r) { return r.bow.f1; }, chars);
    j["wer"] = collect([](const MetricRow& r) { return r.wer; }, words);
    return j;
}

inline nlohmann::json evaluation_to_json(const EvaluationResult& eval,
                                         const std::string& timestamp, bool groups) {
    nlohmann::json j;
    j["kind"] = "evaluation";
    j["generated_at"] = timestamp;
    j["label"] = eval.label;
    j["iou_threshold"] = eval.iou_threshold;
    j["notes"] = nlohmann::json::array(
        {"cer denominator: NFC codepoints of GT word texts (punctuation included, whitespace "
         "excluded); capped at 1",
         "char_count: NFC letters and digits in GT scope",
         "across_commentaries: weighted mean±std over commentaries (GT chars for cer/nld/bow_f1, "
         "GT words for wer)"});
    j["overall"] = scopes_to_json(eval.overall, groups);
    j["per_commentary"] = nlohmann::json::object();
    for (const auto& cm : eval.per_commentary) {
        nlohmann::json jc;
        if (!cm.language.empty()) jc["language"] = cm.language;
        jc["scopes"] = scopes_to_json(cm.tallies, groups);
        j["per_commentary"][cm.id] = std::move(jc);
    }
    if (auto across = across_commentaries_json(eval.per_commentary); !across.empty())
        j["across_commentaries"] = std::move(across);
    return j;
}

// ---------------------------------------------------------------------------
// Markdown

namespace detail {

inline const std::vector<std::pair<std::string, std::string>>& group_columns() {
    static const std::vector<std::pair<std::string, std::string>> cols = {
        {"greek_texts", "Greek"},          {"commentary_like", "Comm."},
        {"low_greek_texts", "Low Greek"},  {"critical_apparatus", "App. Crit."},
        {"structured_texts", "Struct."},   {"numbers", "Numbers"},
    };
    return cols;
}

inline MetricRow row_of(const nlohmann::json& scopes, const std::string& scope) {
    MetricRow row;
    row.scope = scope;
    if (!scopes.contains(scope)) return row;
    const auto& s = scopes[scope];
    row.cer = s.value("cer", 0.0);
    row.wer = s.value("wer", 0.0);
    row.nld = s.value("nld", 1.0);
    row.bow.f1 = s.value("bow_f1", 0.0);
    row.char_count = s.value("char_count", std::size_t{0});
    row.greek_pct = s.value("greek_pct", 0.0);
    row.gt_chars = s.value("gt_chars", std::size_t{0});
    row.gt_words = s.value("gt_words", std::size_t{0});
    return row;
}

}  // namespace detail

/// Global/group table: one row per evaluation run, columns mirroring the
/// region groups; plus a per-commentary table with F1/CER/NLD columns.
inline std::string evaluations_markdown(const std::vector<nlohmann::json>& evals,
                                        const std::string& timestamp) {
    std::ostringstream md;
    md << "# OCR evaluation report\n\n";
    md << "Generated: " << timestamp << "\n\n";

    // --- global/group view -------------------------------------------------
    md << "## Global and per-group results\n\n";
    md << "Metrics are weight-averaged over commentaries (±std) when more than one "
          "commentary was evaluated; single-commentary runs report pooled values.\n\n";
    md << "| Run | F1 (Global) | CER (Global) | WER (Global)";
    for (const auto& [scope, title] : detail::group_columns()) md << " | CER (" << title << ")";
    md << " |\n";
    md << "|---|---|---|---";
    for (std::size_t i = 0; i < detail::group_columns().size(); ++i) md << "|---";
    md << "|\n";

    // Char-count row from the first run (GT statistics are run-independent).
    if (!evals.empty()) {
        const auto& scopes = evals.front()["overall"];
        MetricRow g = detail::row_of(scopes, kGlobalScope);
        md << "| Nb. of chars (% Greek) | " << detail::fmt_chars(g.char_count, g.greek_pct)
           << " | | ";
        for (const auto& [scope, title] : detail::group_columns()) {
            MetricRow r = detail::row_of(scopes, scope);
            md << "| " << detail::fmt_chars(r.char_count, r.greek_pct) << " ";
        }
        md << "|\n";
    }

    for (const auto& eval : evals) {
        const std::string label = eval.value("label", "ocr");
        const auto& scopes = eval["overall"];
        const bool with_std = eval.contains("across_commentaries");
        auto pm = [&](const char* metric, const MetricRow& pooled, double pooled_value) {
            if (with_std && eval["across_commentaries"].contains(metric) &&
                eval["across_commentaries"][metric].is_object()) {
                const auto& sj = eval["across_commentaries"][metric];
                return detail::fmt_pm(sj["mean"].get<double>(), sj["std"].get<double>(), true);
            }
            (void)pooled;
            return detail::fmt3(pooled_value);
        };
        MetricRow g = detail::row_of(scopes, kGlobalScope);
        md << "| " << label << " | " << pm("bow_f1", g, g.bow.f1) << " | " << pm("cer", g, g.cer)
           << " | " << pm("wer", g, g.wer);
        for (const auto& [scope, title] : detail::group_columns()) {
            MetricRow r = detail::row_of(scopes, scope);
            md << " | " << detail::fmt3(r.cer);
        }
        md << " |\n";
    }

    // --- per-commentary view ------------------------------------------------
    std::vector<std::string> commentary_ids;
    for (const auto& eval : evals)
        if (eval.contains("per_commentary"))
            for (const auto& [id, _] : eval["per_commentary"].items())
                if (std::find(commentary_ids.begin(), commentary_ids.end(), id) ==
                    commentary_ids.end())
                    commentary_ids.push_back(id);

    if (!commentary_ids.empty()) {
        md << "\n## Per-commentary results\n\n";
        md << "| Run ";
        for (const auto& id : commentary_ids)
            md << "| " << id << " F1 | " << id << " CER | " << id << " NLD ";
        md << "|\n|---";
        for (std::size_t i = 0; i < commentary_ids.size() * 3; ++i) md << "|---";
        md << "|\n";
        for (const auto& eval : evals) {
            md << "| " << eval.value("label", "ocr") << " ";
            for (const auto& id : commentary_ids) {
                if (eval["per_commentary"].contains(id)) {
                    MetricRow r = detail::row_of(eval["per_commentary"][id]["scopes"],
                                                 kGlobalScope);
                    md << "| " << detail::fmt3(r.bow.f1) << " | " << detail::fmt3(r.cer) << " | "
                       << detail::fmt3(r.nld) << " ";
                } else {
                    md << "| - | - | - ";
                }
            }
            md << "|\n";
        }
    }
    return md.str();
}

// ---------------------------------------------------------------------------
// Stats report

struct StatsResult {
    TallyMap overall;
    // (commentary id, tallies, dictionary accuracy or negative when absent)
    struct PerCommentary {
        std::string id;
        std::string language;
        TallyMap tallies;
        DictionaryAccuracy dict;
        bool has_dict = false;
    };
    std::vector<PerCommentary> per_commentary;
};

inline nlohmann::json stats_scope_json(const TallyMap& tallies) {
    nlohmann::json j;
    for (const MetricRow& row : metric_rows(tallies, true)) {
        nlohmann::json s;
        s["char_count"] = row.char_count;
        s["greek_pct"] = detail::round6(row.greek_pct);
        s["gt_chars"] = row.gt_chars;
        s["gt_words"] = row.gt_words;
        j[row.scope] = std::move(s);
    }
    return j;
}

inline nlohmann::json stats_to_json(const StatsResult& stats, const std::string& timestamp) {
    nlohmann::json j;
    j["kind"] = "stats";
    j["generated_at"] = timestamp;
    j["overall"] = stats_scope_json(stats.overall);
    j["per_commentary"] = nlohmann::json::object();
    for (const auto& cm : stats.per_commentary) {
        nlohmann::json jc;
        if (!cm.language.empty()) jc["language"] = cm.language;
        jc["scopes"] = stats_scope_json(cm.tallies);
        if (cm.has_dict) {
            jc["ocr_dictionary_accuracy"] = {
                {"value", detail::round6(cm.dict.value)},
                {"hits", cm.dict.hits},
                {"tokens", cm.dict.total},
                {"below_retraining_threshold", cm.dict.value < kLowAccuracyThreshold},
            };
        }
        j["per_commentary"][cm.id] = std::move(jc);
    }
    return j;
}

inline std::string stats_markdown(const StatsResult& stats, const std::string& timestamp) {
    std::ostringstream md;
    md << "# Corpus statistics\n\nGenerated: " << timestamp << "\n\n";
    md << "Character counts are NFC letters and digits in the ground truth.\n\n";
    md << "| Corpus | Global";
    for (const auto& [scope, title] : detail::group_columns()) md << " | " << title;
    md << " |\n|---|---";
    for (std::size_t i = 0; i < detail::group_columns().size(); ++i) md << "|---";
    md << "|\n";

    auto emit = [&md](const std::string& name, const TallyMap& tallies) {
        md << "| " << name;
        auto cell = [&md, &tallies](const std::string& scope) {
            auto it = tallies.find(scope);
            if (it == tallies.end()) {
                md << " | 0 (0%)";
                return;
            }
            md << " | " << detail::fmt_chars(it->second.letters_digits,
                                             scope_greek_pct(it->second));
        };
        cell(kGlobalScope);
        for (const auto& [scope, title] : detail::group_columns()) cell(scope);
        md << " |\n";
    };
    emit("all", stats.overall);
    for (const auto& cm : stats.per_commentary) emit(cm.id, cm.tallies);

    bool any_dict = false;
    for (const auto& cm : stats.per_commentary) any_dict |= cm.has_dict;
    if (any_dict) {
        md << "\n## OCR dictionary accuracy\n\n";
        md << "| Commentary | Accuracy | Tokens | Flagged (<" << detail::fmt3(kLowAccuracyThreshold)
           << ") |\n|---|---|---|---|\n";
        for (const auto& cm : stats.per_commentary) {
            if (!cm.has_dict) continue;
            md << "| " << cm.id << " | " << detail::fmt3(cm.dict.value) << " | " << cm.dict.total
               << " | " << (cm.dict.value < kLowAccuracyThreshold ? "yes" : "no") << " |\n";
        }
    }
    return md.str();
}

}  // namespace polyocr
