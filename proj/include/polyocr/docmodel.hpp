// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Hierarchical document model: Page -> Region -> Line -> Word, all carrying
// pixel bounding boxes (origin top-left), plus the region-type taxonomy and
// coordinate-based word-to-region assignment.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

struct BBox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool operator==(const BBox&) const = default;

    bool valid() const { return x0 <= x1 && y0 <= y1; }
    std::int64_t width() const { return x1 - x0; }
    std::int64_t height() const { return y1 - y0; }
    std::int64_t area() const { return width() * height(); }

    bool contains(double px, double py) const {
        return px >= x0 && px <= x1 && py >= y0 && py <= y1;
    }
    bool contains(const BBox& o) const {
        return o.x0 >= x0 && o.y0 >= y0 && o.x1 <= x1 && o.y1 <= y1;
    }
    double center_x() const { return (x0 + x1) / 2.0; }
    double center_y() const { return (y0 + y1) / 2.0; }

    BBox united(const BBox& o) const {
        return {std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1), std::max(y1, o.y1)};
    }
};

struct Word {
    std::string text;  // NFC, non-empty after whitespace trim
    BBox bbox;
    std::optional<double> confidence;

    bool operator==(const Word&) const = default;
};

struct Line {
    std::vector<Word> words;  // reading order, left to right
    BBox bbox;

    bool operator==(const Line&) const = default;

    BBox words_union() const {
        BBox u = words.empty() ? BBox{} : words.front().bbox;
        for (const Word& w : words) u = u.united(w.bbox);
        return u;
    }
};

/// Reserved region label for words no annotation rectangle claims.
inline constexpr const char* kUnassignedRegion = "unassigned";

struct Region {
    std::string id;
    std::string rtype;
    BBox bbox;
    std::vector<Line> lines;

    bool operator==(const Region&) const = default;
};

struct Page {
    std::string id;
    int width = 0, height = 0;
    std::vector<Region> regions;

    bool operator==(const Page&) const = default;

    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& r : regions)
            for (const auto& l : r.lines) n += l.words.size();
        return n;
    }
};

/// Coarse evaluation groups; every fine-grained region type maps to one.
enum class RegionGroup { GreekTexts, CommentaryLike, LowGreekTexts, CriticalApparatus,
                         StructuredTexts, Numbers };

inline const char* to_string(RegionGroup g) {
    switch (g) {
        case RegionGroup::GreekTexts: return "greek_texts";
        case RegionGroup::CommentaryLike: return "commentary_like";
        case RegionGroup::LowGreekTexts: return "low_greek_texts";
        case RegionGroup::CriticalApparatus: return "critical_apparatus";
        case RegionGroup::StructuredTexts: return "structured_texts";
        case RegionGroup::Numbers: return "numbers";
    }
    return "?";
}

inline std::optional<RegionGroup> region_group_from_string(const std::string& s) {
    static const std::map<std::string, RegionGroup> m = {
        {"greek_texts", RegionGroup::GreekTexts},
        {"commentary_like", RegionGroup::CommentaryLike},
        {"low_greek_texts", RegionGroup::LowGreekTexts},
        {"critical_apparatus", RegionGroup::CriticalApparatus},
        {"structured_texts", RegionGroup::StructuredTexts},
        {"numbers", RegionGroup::Numbers},
    };
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

inline const std::vector<RegionGroup>& all_region_groups() {
    static const std::vector<RegionGroup> g = {
        RegionGroup::GreekTexts,      RegionGroup::CommentaryLike, RegionGroup::LowGreekTexts,
        RegionGroup::CriticalApparatus, RegionGroup::StructuredTexts, RegionGroup::Numbers};
    return g;
}

/// Declared vocabulary of fine-grained region types and their group mapping.
/// Unknown labels are rejected at parse time. The default mirrors the usual
/// scholarly-commentary layout elements; a JSON config can replace it.
class RegionTaxonomy {
public:
    static RegionTaxonomy defaults() {
        RegionTaxonomy t;
        t.add("primary_text", RegionGroup::GreekTexts);
        t.add("commentary", RegionGroup::CommentaryLike);
        t.add("footnote", RegionGroup::CommentaryLike);
        t.add("introduction", RegionGroup::LowGreekTexts);
        t.add("preface", RegionGroup::LowGreekTexts);
        t.add("translation", RegionGroup::LowGreekTexts);
        t.add("app_crit", RegionGroup::CriticalApparatus);
        t.add("appendix", RegionGroup::StructuredTexts);
        t.add("bibliography", RegionGroup::StructuredTexts);
        t.add("index", RegionGroup::StructuredTexts);
        t.add("title", RegionGroup::StructuredTexts);
        t.add("table_of_contents", RegionGroup::StructuredTexts);
        t.add("page_number", RegionGroup::Numbers);
        t.add("line_number", RegionGroup::Numbers);
        return t;
    }

    /// Loads {"types": {"label": "group", ...}} JSON.
    static RegionTaxonomy from_json(const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("types") || !j["types"].is_object())
            throw InputError("region taxonomy: expected object with a \"types\" map");
        RegionTaxonomy t;
        for (const auto& [label, group] : j["types"].items()) {
            if (!group.is_string())
                throw InputError("region taxonomy: group for '" + label + "' must be a string");
            auto g = region_group_from_string(group.get<std::string>());
            if (!g)
                throw InputError("region taxonomy: unknown group '" + group.get<std::string>() +
                                 "' for '" + label + "'");
            t.add(label, *g);
        }
        if (t.types_.empty()) throw InputError("region taxonomy: empty vocabulary");
        return t;
    }

    void add(const std::string& label, RegionGroup g) { types_[label] = g; }

    bool is_valid(const std::string& label) const {
        return label == kUnassignedRegion || types_.count(label) > 0;
    }

    /// Group of a fine-grained type; nullopt for the unassigned pseudo-region.
    std::optional<RegionGroup> group_of(const std::string& label) const {
        auto it = types_.find(label);
        if (it == types_.end()) {
            if (label == kUnassignedRegion) return std::nullopt;
            throw InputError("unknown region type '" + label + "'");
        }
        return it->second;
    }

    const std::map<std::string, RegionGroup>& types() const { return types_; }

private:
    std::map<std::string, RegionGroup> types_;
};

struct RegionAnnotation {
    std::string rtype;
    BBox bbox;

    bool operator==(const RegionAnnotation&) const = default;
};

/// Validates model invariants; throws InternalError naming the first violation.
inline void validate(const Page& page) {
    if (page.width < 0 || page.height < 0) throw InternalError("page " + page.id + ": negative dims");
    std::map<std::string, int> ids;
    for (const Region& r : page.regions) {
        if (!r.id.empty() && ++ids[r.id] > 1)
            throw InternalError("page " + page.id + ": duplicate region id '" + r.id + "'");
        if (!r.bbox.valid()) throw InternalError("page " + page.id + ": invalid region bbox");
        for (const Line& l : r.lines) {
            if (!l.bbox.valid()) throw InternalError("page " + page.id + ": invalid line bbox");
            if (!l.words.empty() && !l.bbox.contains(l.words_union()))
                throw InternalError("page " + page.id + ": line bbox does not contain its words");
            for (const Word& w : l.words) {
                if (w.text.empty()) throw InternalError("page " + page.id + ": empty word text");
                if (normalize_nfc(w.text) != w.text)
                    throw InternalError("page " + page.id + ": word text not NFC");
                if (!w.bbox.valid()) throw InternalError("page " + page.id + ": invalid word bbox");
            }
        }
    }
}

/// Re-buckets every word into the annotation rectangle that contains its bbox
/// center; nested rectangles resolve to the smallest area. Words claimed by
/// no rectangle land in a trailing "unassigned" region. Lines are split where
/// their words fall into different regions; no word is lost or duplicated.
inline Page assign_regions(const Page& page, const std::vector<RegionAnnotation>& annots) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    auto target_of = [&](const Word& w) -> std::size_t {
        const double cx = w.bbox.center_x(), cy = w.bbox.center_y();
        std::size_t best = kNone;
        for (std::size_t i = 0; i < annots.size(); ++i) {
            if (!annots[i].bbox.contains(cx, cy)) continue;
            if (best == kNone || annots[i].bbox.area() < annots[best].bbox.area()) best = i;
        }
        return best;
    };

    Page out;
    out.id = page.id;
    out.width = page.width;
    out.height = page.height;
    out.regions.resize(annots.size());
    for (std::size_t i = 0; i < annots.size(); ++i) {
        out.regions[i].id = "r" + std::to_string(i);
        out.regions[i].rtype = annots[i].rtype;
        out.regions[i].bbox = annots[i].bbox;
    }
    Region unassigned;
    unassigned.rtype = kUnassignedRegion;

    for (const Region& r : page.regions) {
        for (const Line& line : r.lines) {
            // Split into maximal runs of words sharing a target region.
            std::size_t i = 0;
            while (i < line.words.size()) {
                const std::size_t target = target_of(line.words[i]);
                Line frag;
                while (i < line.words.size() && target_of(line.words[i]) == target)
                    frag.words.push_back(line.words[i++]);
                frag.bbox = frag.words_union();
                if (target == kNone)
                    unassigned.lines.push_back(std::move(frag));
                else
                    out.regions[target].lines.push_back(std::move(frag));
            }
        }
    }

    for (Region& r : out.regions)
        for (const Line& l : r.lines) r.bbox = r.bbox.united(l.bbox);
    if (!unassigned.lines.empty()) {
        unassigned.bbox = unassigned.lines.front().bbox;
        for (const Line& l : unassigned.lines) unassigned.bbox = unassigned.bbox.united(l.bbox);
        unassigned.id = "r" + std::to_string(out.regions.size());
        out.regions.push_back(std::move(unassigned));
    }
    return out;
}

/// All word texts of a page in reading order (regions, lines, words).
inline std::vector<std::string> all_word_texts(const Page& page) {
    std::vector<std::string> out;
    for (const auto& r : page.regions)
        for (const auto& l : r.lines)
            for (const auto& w : l.words) out.push_back(w.text);
    return out;
}

}  // namespace polyocr
