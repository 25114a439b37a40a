// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Coordinate-based GT<->OCR word alignment and the metric battery: CER, WER,
// bag-of-words F1 and NLD, accumulated per region group and globally.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

inline constexpr double kDefaultIouThreshold = 0.3;

// ---------------------------------------------------------------------------
// Edit distance

/// Unit-cost edit distance over NFC codepoints, two-row dynamic programming.
inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    if (b.empty()) return a.size();
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t corner = row[0];
        row[0] = i + 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::size_t up = row[j + 1];
            row[j + 1] = a[i] == b[j] ? corner
                                      : 1 + std::min({corner, up, row[j]});
            corner = up;
        }
    }
    return row[b.size()];
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(utf8_decode(a), utf8_decode(b));
}

// ---------------------------------------------------------------------------
// Alignment

inline double iou(const BBox& a, const BBox& b) {
    const std::int64_t ix0 = std::max(a.x0, b.x0), iy0 = std::max(a.y0, b.y0);
    const std::int64_t ix1 = std::min(a.x1, b.x1), iy1 = std::min(a.y1, b.y1);
    if (ix1 <= ix0 || iy1 <= iy0) return 0.0;
    const std::int64_t inter = (ix1 - ix0) * (iy1 - iy0);
    const std::int64_t uni = a.area() + b.area() - inter;
    return uni <= 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

struct FlatWord {
    std::string text;
    BBox bbox;
    std::string region;  // fine-grained region type of the containing region
};

inline std::vector<FlatWord> flatten_words(const Page& page) {
    std::vector<FlatWord> out;
    for (const auto& r : page.regions)
        for (const auto& l : r.lines)
            for (const auto& w : l.words) out.push_back({w.text, w.bbox, r.rtype});
    return out;
}

/// Injective matching by descending IoU among pairs above the threshold.
struct AlignmentResult {
    std::vector<FlatWord> gt_words, ocr_words;
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // (gt index, ocr index)
    std::vector<std::size_t> unmatched_gt, unmatched_ocr;
};

inline AlignmentResult align_words(std::vector<FlatWord> gt, std::vector<FlatWord> ocr,
                                   double iou_threshold = kDefaultIouThreshold) {
    AlignmentResult res;
    res.gt_words = std::move(gt);
    res.ocr_words = std::move(ocr);

    struct Cand {
        double iou;
        std::size_t gi, oi;
    };
    std::vector<Cand> cands;
    for (std::size_t gi = 0; gi < res.gt_words.size(); ++gi)
        for (std::size_t oi = 0; oi < res.ocr_words.size(); ++oi) {
            const double v = iou(res.gt_words[gi].bbox, res.ocr_words[oi].bbox);
            if (v >= iou_threshold && v > 0.0) cands.push_back({v, gi, oi});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.gi != b.gi) return a.gi < b.gi;
        return a.oi < b.oi;
    });

    std::vector<bool> gt_used(res.gt_words.size()), ocr_used(res.ocr_words.size());
    for (const Cand& c : cands) {
        if (gt_used[c.gi] || ocr_used[c.oi]) continue;
        gt_used[c.gi] = ocr_used[c.oi] = true;
        res.matched.emplace_back(c.gi, c.oi);
    }
    for (std::size_t gi = 0; gi < res.gt_words.size(); ++gi)
        if (!gt_used[gi]) res.unmatched_gt.push_back(gi);
    for (std::size_t oi = 0; oi < res.ocr_words.size(); ++oi)
        if (!ocr_used[oi]) res.unmatched_ocr.push_back(oi);
    return res;
}

/// Page-level alignment; pages must live in the same pixel space.
inline AlignmentResult align_words(const Page& gt, const Page& ocr,
                                   double iou_threshold = kDefaultIouThreshold) {
    if (gt.width != ocr.width || gt.height != ocr.height)
        throw InputError("pages not comparable: image dimensions differ (" + gt.id + ": " +
                         std::to_string(gt.width) + "x" + std::to_string(gt.height) + " vs " +
                         ocr.id + ": " + std::to_string(ocr.width) + "x" +
                         std::to_string(ocr.height) + ")");
    return align_words(flatten_words(gt), flatten_words(ocr), iou_threshold);
}

// ---------------------------------------------------------------------------
// Per-scope accumulation

/// Raw counts for one scope (a region group, "unassigned", or global).
struct ScopeTally {
    // CER: numerator pieces and the ground-truth denominator.
    std::size_t lev_matched = 0;
    std::size_t unmatched_gt_chars = 0;
    std::size_t unmatched_ocr_chars = 0;
    std::size_t gt_chars = 0;  // NFC codepoints over all GT words in scope
    // WER.
    std::size_t gt_words = 0;
    std::size_t matched_mismatched = 0;
    std::size_t unmatched_gt_words = 0;
    std::size_t unmatched_ocr_words = 0;
    // Bag of words.
    std::map<std::string, std::size_t> gt_bag, ocr_bag;
    // Corpus statistics over GT text.
    std::size_t letters_digits = 0;
    std::size_t greek_letters = 0;
    std::size_t latin_letters = 0;

    void add(const ScopeTally& o) {
        lev_matched += o.lev_matched;
        unmatched_gt_chars += o.unmatched_gt_chars;
        unmatched_ocr_chars += o.unmatched_ocr_chars;
        gt_chars += o.gt_chars;
        gt_words += o.gt_words;
        matched_mismatched += o.matched_mismatched;
        unmatched_gt_words += o.unmatched_gt_words;
        unmatched_ocr_words += o.unmatched_ocr_words;
        for (const auto& [w, n] : o.gt_bag) gt_bag[w] += n;
        for (const auto& [w, n] : o.ocr_bag) ocr_bag[w] += n;
        letters_digits += o.letters_digits;
        greek_letters += o.greek_letters;
        latin_letters += o.latin_letters;
    }

    std::size_t cer_numerator() const {
        return lev_matched + unmatched_gt_chars + unmatched_ocr_chars;
    }
    std::size_t wer_numerator() const {
        return matched_mismatched + unmatched_gt_words + unmatched_ocr_words;
    }
};

inline constexpr const char* kGlobalScope = "global";

/// Map keyed by scope name; "global" pools everything.
using TallyMap = std::map<std::string, ScopeTally>;

inline void merge_tallies(TallyMap& into, const TallyMap& from) {
    for (const auto& [scope, tally] : from) into[scope].add(tally);
}

namespace detail {

inline void count_text_stats(const std::string& text, ScopeTally& t) {
    for (char32_t cp : utf8_decode(text)) {
        const Script s = script_of(cp);
        if (s == Script::Greek) {
            ++t.greek_letters;
            ++t.letters_digits;
        } else if (s == Script::Latin) {
            ++t.latin_letters;
            ++t.letters_digits;
        } else if (s == Script::Digit) {
            ++t.letters_digits;
        }
    }
}

}  // namespace detail

/// Scope name of a fine-grained region label under the taxonomy.
inline std::string scope_of(const std::string& region_label, const RegionTaxonomy& taxonomy) {
    auto g = taxonomy.group_of(region_label);
    return g ? to_string(*g) : kUnassignedRegion;
}

/// Accumulates one aligned page pair into per-scope tallies. Matched pairs
/// and unmatched GT words tally under the GT word's group; unmatched OCR
/// words under their own rectangle's group, or globally only when no
/// rectangle claims them.
inline TallyMap tally_alignment(const AlignmentResult& a, const RegionTaxonomy& taxonomy) {
    TallyMap tallies;
    ScopeTally& global = tallies[kGlobalScope];

    auto gt_scope_tally = [&](std::size_t gi) -> ScopeTally& {
        return tallies[scope_of(a.gt_words[gi].region, taxonomy)];
    };

    for (std::size_t gi = 0; gi < a.gt_words.size(); ++gi) {
        const std::string& text = a.gt_words[gi].text;
        const std::size_t chars = codepoint_count(text);
        for (ScopeTally* t : {&gt_scope_tally(gi), &global}) {
            t->gt_chars += chars;
            t->gt_words += 1;
            t->gt_bag[text] += 1;
            detail::count_text_stats(text, *t);
        }
    }
    for (std::size_t oi = 0; oi < a.ocr_words.size(); ++oi) {
        const std::string scope = scope_of(a.ocr_words[oi].region, taxonomy);
        global.ocr_bag[a.ocr_words[oi].text] += 1;
        tallies[scope].ocr_bag[a.ocr_words[oi].text] += 1;
    }

    for (const auto& [gi, oi] : a.matched) {
        const std::size_t d = levenshtein(a.gt_words[gi].text, a.ocr_words[oi].text);
        const bool mismatch = a.gt_words[gi].text != a.ocr_words[oi].text;
        for (ScopeTally* t : {&gt_scope_tally(gi), &global}) {
            t->lev_matched += d;
            t->matched_mismatched += mismatch;
        }
    }
    for (std::size_t gi : a.unmatched_gt) {
        const std::size_t chars = codepoint_count(a.gt_words[gi].text);
        for (ScopeTally* t : {&gt_scope_tally(gi), &global}) {
            t->unmatched_gt_chars += chars;
            t->unmatched_gt_words += 1;
        }
    }
    for (std::size_t oi : a.unmatched_ocr) {
        const std::size_t chars = codepoint_count(a.ocr_words[oi].text);
        // Insertions outside every GT rectangle count in the unassigned row
        // (and globally), never in a group row.
        const std::string scope = scope_of(a.ocr_words[oi].region, taxonomy);
        for (ScopeTally* t : {&tallies[scope], &global}) {
            t->unmatched_ocr_chars += chars;
            t->unmatched_ocr_words += 1;
        }
    }
    return tallies;
}

// ---------------------------------------------------------------------------
// Metrics

struct BowScore {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

/// Multiset-overlap precision/recall/F1 over whitespace-split tokens.
inline BowScore bag_of_words_f1(const std::map<std::string, std::size_t>& gt_bag,
                                const std::map<std::string, std::size_t>& ocr_bag) {
    std::size_t matched = 0, gt_total = 0, ocr_total = 0;
    for (const auto& [w, n] : gt_bag) gt_total += n;
    for (const auto& [w, n] : ocr_bag) ocr_total += n;
    for (const auto& [w, n] : gt_bag) {
        auto it = ocr_bag.find(w);
        if (it != ocr_bag.end()) matched += std::min(n, it->second);
    }
    BowScore s;
    s.precision = ocr_total == 0 ? 0.0 : static_cast<double>(matched) / ocr_total;
    s.recall = gt_total == 0 ? 0.0 : static_cast<double>(matched) / gt_total;
    s.f1 = s.precision + s.recall == 0.0 ? 0.0
                                         : 2.0 * s.precision * s.recall /
                                               (s.precision + s.recall);
    return s;
}

/// CER capped at 1 so NLD = 1 - CER stays in [0,1]; empty scope scores 0.
inline double region_cer(const ScopeTally& t, bool* empty_scope = nullptr) {
    if (t.gt_chars == 0) {
        if (empty_scope) *empty_scope = true;
        return 0.0;
    }
    return std::min(1.0, static_cast<double>(t.cer_numerator()) /
                             static_cast<double>(t.gt_chars));
}

inline double wer(const ScopeTally& t) {
    if (t.gt_words == 0) return 0.0;
    return std::min(1.0,
                    static_cast<double>(t.wer_numerator()) / static_cast<double>(t.gt_words));
}

inline double nld_from_cer(double cer) { return 1.0 - cer; }

inline double scope_greek_pct(const ScopeTally& t) {
    const std::size_t letters = t.greek_letters + t.latin_letters;
    return letters == 0 ? 0.0 : static_cast<double>(t.greek_letters) / letters;
}

/// Weighted mean and (population) standard deviation.
struct WeightedStats {
    double mean = 0.0, stddev = 0.0;
};

inline WeightedStats aggregate_weighted(const std::vector<std::pair<double, double>>& values) {
    double wsum = 0.0;
    for (const auto& [v, w] : values) {
        if (w < 0.0) throw InputError("aggregate_weighted: negative weight");
        wsum += w;
    }
    if (values.empty() || wsum == 0.0)
        throw InputError("aggregate_weighted: weights sum to zero");
    WeightedStats s;
    for (const auto& [v, w] : values) s.mean += v * w;
    s.mean /= wsum;
    double var = 0.0;
    for (const auto& [v, w] : values) var += w * (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / wsum);
    return s;
}

// ---------------------------------------------------------------------------
// Report rows

struct MetricRow {
    std::string scope;
    double cer = 0.0, wer = 0.0, nld = 1.0;
    BowScore bow;
    std::size_t char_count = 0;  // NFC letters + digits in GT scope
    double greek_pct = 0.0;
    std::size_t gt_chars = 0;  // CER denominator
    std::size_t gt_words = 0;
    bool empty_scope = false;
};

inline MetricRow metric_row(const std::string& scope, const ScopeTally& t) {
    MetricRow row;
    row.scope = scope;
    row.cer = region_cer(t, &row.empty_scope);
    row.wer = wer(t);
    row.nld = nld_from_cer(row.cer);
    row.bow = bag_of_words_f1(t.gt_bag, t.ocr_bag);
    row.char_count = t.letters_digits;
    row.greek_pct = scope_greek_pct(t);
    row.gt_chars = t.gt_chars;
    row.gt_words = t.gt_words;
    return row;
}

/// Rows in report order: global, groups (fixed order), then unassigned last.
inline std::vector<MetricRow> metric_rows(const TallyMap& tallies, bool groups = true) {
    std::vector<MetricRow> rows;
    auto it = tallies.find(kGlobalScope);
    rows.push_back(metric_row(kGlobalScope, it != tallies.end() ? it->second : ScopeTally{}));
    if (!groups) return rows;
    for (RegionGroup g : all_region_groups()) {
        auto git = tallies.find(to_string(g));
        rows.push_back(metric_row(to_string(g), git != tallies.end() ? git->second : ScopeTally{}));
    }
    if (auto uit = tallies.find(kUnassignedRegion); uit != tallies.end())
        rows.push_back(metric_row(kUnassignedRegion, uit->second));
    return rows;
}

// ---------------------------------------------------------------------------
// Corpus statistics (ground truth only)

/// Letter/digit counts and Greek share per scope for region-assigned pages.
inline TallyMap corpus_stats(const std::vector<Page>& gt_pages, const RegionTaxonomy& taxonomy) {
    TallyMap tallies;
    ScopeTally& global = tallies[kGlobalScope];
    for (const Page& page : gt_pages) {
        for (const Region& region : page.regions) {
            const std::string scope = scope_of(region.rtype, taxonomy);
            for (const Line& line : region.lines)
                for (const Word& word : line.words) {
                    detail::count_text_stats(word.text, tallies[scope]);
                    detail::count_text_stats(word.text, global);
                    const std::size_t chars = codepoint_count(word.text);
                    tallies[scope].gt_chars += chars;
                    global.gt_chars += chars;
                    tallies[scope].gt_words += 1;
                    global.gt_words += 1;
                }
        }
    }
    return tallies;
}

}  // namespace polyocr
