// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace testutil {

inline std::filesystem::path source_dir() { return std::filesystem::path(POLYOCR_SOURCE_DIR); }

inline std::filesystem::path fixture(const std::string& name) {
    return source_dir() / "tests" / "data" / name;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw polyocr::InputError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
}

/// Parses "0041 0301<TAB>00C1"-style fixture rows.
inline std::vector<std::pair<std::u32string, std::u32string>> load_hex_pairs(
    const std::filesystem::path& p) {
    std::vector<std::pair<std::u32string, std::u32string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        auto parse = [](const std::string& field) {
            std::u32string out;
            std::istringstream ss(field);
            std::string tok;
            while (ss >> tok) out.push_back(static_cast<char32_t>(std::stoul(tok, nullptr, 16)));
            return out;
        };
        rows.emplace_back(parse(line.substr(0, tab)), parse(line.substr(tab + 1)));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Random polytonic Greek word generation. NFC output by construction.

inline const std::u32string& greek_vowels() {
    static const std::u32string v = U"αεηιουω";
    return v;
}

inline const std::u32string& greek_consonants() {
    static const std::u32string c = U"βγδζθκλμνξπρστφχψ";
    return c;
}

inline std::u32string random_greek_word(std::mt19937& rng, int min_len = 1, int max_len = 12) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::uniform_int_distribution<int> pct(0, 99);
    const int len = len_dist(rng);
    std::u32string word;
    for (int i = 0; i < len; ++i) {
        const bool vowel = pct(rng) < 45;
        const auto& pool = vowel ? greek_vowels() : greek_consonants();
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        char32_t base = pool[pick(rng)];
        if (!vowel && base == U'σ' && i + 1 == len) base = U'ς';
        word.push_back(base);
        if (vowel) {
            std::u32string marks;
            if (i == 0 && pct(rng) < 50) marks.push_back(pct(rng) < 50 ? 0x0313 : 0x0314);
            if (pct(rng) < 40) {
                const int a = pct(rng) % 3;
                marks.push_back(a == 0 ? 0x0301 : a == 1 ? 0x0300 : 0x0342);
            }
            if ((base == U'α' || base == U'η' || base == U'ω') && pct(rng) < 15)
                marks.push_back(0x0345);
            word.append(marks);
        }
    }
    return polyocr::normalize_nfc(word);
}

/// Reference edit distance: naive recursion, for strings of length <= 8.
inline std::size_t levenshtein_bruteforce(std::u32string_view a, std::u32string_view b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    const std::size_t sub =
        levenshtein_bruteforce(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
    const std::size_t del = levenshtein_bruteforce(a.substr(1), b) + 1;
    const std::size_t ins = levenshtein_bruteforce(a, b.substr(1)) + 1;
    return std::min({sub, del, ins});
}

inline std::u32string random_latin_word(std::mt19937& rng, int min_len = 2, int max_len = 10) {
    static const std::u32string pool = U"abcdefghijklmnopqrstuvwxyz";
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::u32string w;
    for (int i = len_dist(rng); i > 0; --i) w.push_back(pool[pick(rng)]);
    return w;
}

/// Synthetic page: one region per label, one grid line per region, words laid
/// out on non-overlapping slots (span 60x30, box 40x18).
inline polyocr::Page grid_page(std::mt19937& rng, const std::string& id,
                               const std::vector<std::string>& region_labels, int cols = 8) {
    polyocr::Page page;
    page.id = id;
    page.width = 40 + cols * 60;
    page.height = 40 + static_cast<int>(region_labels.size()) * 30;
    int row = 0;
    for (const std::string& label : region_labels) {
        polyocr::Region region;
        region.id = "r" + std::to_string(row);
        region.rtype = label;
        polyocr::Line line;
        for (int c = 0; c < cols; ++c) {
            polyocr::Word w;
            if (label == "page_number" || label == "line_number")
                w.text = std::to_string(1 + static_cast<int>(rng() % 999));
            else if (label == "translation" || label == "introduction" || label == "preface")
                w.text = polyocr::utf8_encode(random_latin_word(rng));
            else
                w.text = polyocr::utf8_encode(random_greek_word(rng, 2, 9));
            const int x = 20 + c * 60, y = 20 + row * 30;
            w.bbox = {x, y, x + 40, y + 18};
            line.words.push_back(std::move(w));
        }
        line.bbox = line.words_union();
        region.bbox = line.bbox;
        region.lines.push_back(std::move(line));
        page.regions.push_back(std::move(region));
        ++row;
    }
    return page;
}

/// Letters that plausibly never occur in generated or demo text; used as
/// substitution targets so that k substitutions cost exactly k edits.
inline const std::u32string& rare_greek_letters() {
    static const std::u32string pool = U"ϠϞϚϜϘϡϟϛϝϢϣϤϥϦϧϨϩ";
    return pool;
}

struct CorruptResult {
    polyocr::Page page;
    std::size_t substitutions = 0;
};

/// Applies exactly k single-codepoint in-word substitutions at distinct
/// positions, each replacement absent from the word it lands in, so the
/// page-level edit distance grows by exactly k.
inline CorruptResult corrupt_copy(const polyocr::Page& src, std::size_t k, std::mt19937& rng) {
    CorruptResult res{src, 0};
    struct Slot {
        std::size_t region, line, word, pos;
    };
    std::vector<Slot> slots;
    for (std::size_t ri = 0; ri < src.regions.size(); ++ri)
        for (std::size_t li = 0; li < src.regions[ri].lines.size(); ++li)
            for (std::size_t wi = 0; wi < src.regions[ri].lines[li].words.size(); ++wi) {
                const auto cps = polyocr::utf8_decode(src.regions[ri].lines[li].words[wi].text);
                for (std::size_t pos = 0; pos < cps.size(); ++pos)
                    slots.push_back({ri, li, wi, pos});
            }
    std::shuffle(slots.begin(), slots.end(), rng);

    for (const Slot& s : slots) {
        if (res.substitutions == k) break;
        polyocr::Word& w = res.page.regions[s.region].lines[s.line].words[s.word];
        std::u32string cps = polyocr::utf8_decode(w.text);
        char32_t replacement = 0;
        for (char32_t cand : rare_greek_letters()) {
            if (cps.find(cand) == std::u32string::npos) {
                replacement = cand;
                break;
            }
        }
        if (replacement == 0) continue;  // word saturated with rare letters
        cps[s.pos] = replacement;
        w.text = polyocr::utf8_encode(cps);
        ++res.substitutions;
    }
    return res;
}

/// Shifts every word box by at most 10% of its width/height (at least not at
/// all); line and region boxes are re-expanded to keep containment.
inline polyocr::Page jitter_copy(const polyocr::Page& src, std::mt19937& rng) {
    polyocr::Page out = src;
    for (auto& region : out.regions) {
        for (auto& line : region.lines) {
            for (auto& w : line.words) {
                const int dx_max = static_cast<int>(w.bbox.width()) / 10;
                const int dy_max = static_cast<int>(w.bbox.height()) / 10;
                std::uniform_int_distribution<int> dx(-dx_max, dx_max), dy(-dy_max, dy_max);
                const int sx = dx(rng), sy = dy(rng);
                w.bbox = {w.bbox.x0 + sx, w.bbox.y0 + sy, w.bbox.x1 + sx, w.bbox.y1 + sy};
            }
            if (!line.words.empty()) line.bbox = line.bbox.united(line.words_union());
        }
        for (const auto& line : region.lines) region.bbox = region.bbox.united(line.bbox);
    }
    return out;
}

}  // namespace testutil
