// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Unicode core for polytonic Greek: NFC normalization, diacritic
// decomposition and stripping, script classification and Greek-character
// statistics. Normalization data covers the Latin, Greek, combining-mark
// and punctuation blocks; codepoints outside those blocks pass through
// unchanged.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyocr/unicode.hpp"
#include "polyocr/unicode_data.hpp"

namespace polyocr {

enum class Script { Greek, Latin, Digit, Punctuation, Other };

/// Diacritics that occur on polytonic Greek letters. Macron and breve mark
/// vowel quantity in some lexica and are stripped like the accents.
enum class Diacritic : std::uint8_t {
    SmoothBreathing,
    RoughBreathing,
    Acute,
    Grave,
    Circumflex,
    IotaSubscript,
    Diaeresis,
    Macron,
    Breve,
};

/// Decomposition of one Greek letter into its bare base plus marks, in
/// canonical (NFD) order.
struct DiacriticProfile {
    char32_t base = 0;
    std::vector<Diacritic> marks;

    bool operator==(const DiacriticProfile&) const = default;
};

namespace detail {

inline bool in_ranges(char32_t cp, const unidata::Range* table, std::size_t n) {
    auto* end = table + n;
    auto* it = std::upper_bound(table, end, cp,
                                [](char32_t v, const unidata::Range& r) { return v < r.lo; });
    return it != table && cp <= (it - 1)->hi;
}

inline int combining_class(char32_t cp) {
    auto* begin = std::begin(unidata::kCombiningClasses);
    auto* end = std::end(unidata::kCombiningClasses);
    auto* it = std::lower_bound(begin, end, cp,
                                [](const unidata::CombiningClass& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

inline const unidata::Decomp* find_decomp(char32_t cp) {
    auto* begin = std::begin(unidata::kCanonicalDecomp);
    auto* end = std::end(unidata::kCanonicalDecomp);
    auto* it = std::lower_bound(begin, end, cp,
                                [](const unidata::Decomp& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

inline char32_t compose_pair(char32_t a, char32_t b) {
    auto* begin = std::begin(unidata::kComposePairs);
    auto* end = std::end(unidata::kComposePairs);
    auto* it = std::lower_bound(begin, end, std::pair{a, b},
                                [](const unidata::ComposePair& e, const std::pair<char32_t, char32_t>& v) {
                                    return e.a != v.first ? e.a < v.first : e.b < v.second;
                                });
    return (it != end && it->a == a && it->b == b) ? it->composed : 0;
}

inline void decompose_into(char32_t cp, std::u32string& out) {
    if (const auto* d = find_decomp(cp)) {
        decompose_into(d->a, out);
        if (d->b != 0) decompose_into(d->b, out);
    } else {
        out.push_back(cp);
    }
}

// Canonical ordering: stable sort of nonzero-ccc runs.
inline void canonical_order(std::u32string& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        int cc = combining_class(s[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        while (j > 0 && combining_class(s[j - 1]) > cc) {
            std::swap(s[j - 1], s[j]);
            --j;
        }
    }
}

}  // namespace detail

/// Full canonical decomposition (NFD) over the covered blocks.
inline std::u32string normalize_nfd(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t cp : text) detail::decompose_into(cp, out);
    detail::canonical_order(out);
    return out;
}

/// Canonical composition (NFC). Idempotent on all strings.
inline std::u32string normalize_nfc(std::u32string_view text) {
    std::u32string s = normalize_nfd(text);
    if (s.empty()) return s;
    std::u32string out;
    out.reserve(s.size());
    out.push_back(s[0]);
    std::ptrdiff_t starter = detail::combining_class(s[0]) == 0 ? 0 : -1;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const char32_t c = s[i];
        const int cc = detail::combining_class(c);
        if (starter >= 0) {
            const bool blocked = static_cast<std::size_t>(starter) + 1 < out.size() &&
                                 detail::combining_class(out.back()) >= cc;
            if (!blocked) {
                if (char32_t comp = detail::compose_pair(out[starter], c)) {
                    out[starter] = comp;
                    continue;
                }
            }
        }
        out.push_back(c);
        if (cc == 0) starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
    }
    return out;
}

inline std::string normalize_nfc(std::string_view utf8) {
    return utf8_encode(normalize_nfc(utf8_decode(utf8)));
}

inline bool is_greek_letter(char32_t cp) {
    return detail::in_ranges(cp, unidata::kGreekLetterRanges, std::size(unidata::kGreekLetterRanges));
}

inline bool is_latin_letter(char32_t cp) {
    return detail::in_ranges(cp, unidata::kLatinLetterRanges, std::size(unidata::kLatinLetterRanges));
}

inline bool is_letter(char32_t cp) { return is_greek_letter(cp) || is_latin_letter(cp); }

/// Total classification; Greek and Latin cover letters of their blocks only.
inline Script script_of(char32_t cp) {
    if (is_greek_letter(cp)) return Script::Greek;
    if (is_latin_letter(cp)) return Script::Latin;
    if (cp >= U'0' && cp <= U'9') return Script::Digit;
    if (detail::in_ranges(cp, unidata::kPunctuationRanges, std::size(unidata::kPunctuationRanges)))
        return Script::Punctuation;
    return Script::Other;
}

inline char32_t to_lower(char32_t cp) {
    auto* begin = std::begin(unidata::kToLower);
    auto* end = std::end(unidata::kToLower);
    auto* it = std::lower_bound(begin, end, cp,
                                [](const unidata::CaseMap& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->lower : cp;
}

inline std::u32string to_lower(std::u32string_view s) {
    std::u32string out(s);
    for (char32_t& cp : out) cp = to_lower(cp);
    return out;
}

inline std::string to_lower(std::string_view utf8) {
    return utf8_encode(to_lower(utf8_decode(utf8)));
}

namespace detail {

inline std::optional<Diacritic> mark_kind(char32_t cp) {
    switch (cp) {
        case 0x0313: return Diacritic::SmoothBreathing;
        case 0x0314: return Diacritic::RoughBreathing;
        case 0x0301: return Diacritic::Acute;
        case 0x0300: return Diacritic::Grave;
        case 0x0342: return Diacritic::Circumflex;
        case 0x0345: return Diacritic::IotaSubscript;
        case 0x0308: return Diacritic::Diaeresis;
        case 0x0304: return Diacritic::Macron;
        case 0x0306: return Diacritic::Breve;
        default: return std::nullopt;
    }
}

inline char32_t mark_codepoint(Diacritic d) {
    switch (d) {
        case Diacritic::SmoothBreathing: return 0x0313;
        case Diacritic::RoughBreathing: return 0x0314;
        case Diacritic::Acute: return 0x0301;
        case Diacritic::Grave: return 0x0300;
        case Diacritic::Circumflex: return 0x0342;
        case Diacritic::IotaSubscript: return 0x0345;
        case Diacritic::Diaeresis: return 0x0308;
        case Diacritic::Macron: return 0x0304;
        case Diacritic::Breve: return 0x0306;
    }
    return 0;
}

}  // namespace detail

/// Profile of a Greek letter (optionally followed by combining marks in the
/// input). Returns nullopt when the cluster does not start with a Greek
/// letter or carries a mark outside the polytonic inventory.
inline std::optional<DiacriticProfile> diacritic_profile(std::u32string_view cluster) {
    std::u32string nfd = normalize_nfd(cluster);
    if (nfd.empty() || !is_greek_letter(nfd[0])) return std::nullopt;
    DiacriticProfile p;
    p.base = nfd[0];
    for (std::size_t i = 1; i < nfd.size(); ++i) {
        auto kind = detail::mark_kind(nfd[i]);
        if (!kind) return std::nullopt;
        if (std::find(p.marks.begin(), p.marks.end(), *kind) != p.marks.end()) return std::nullopt;
        p.marks.push_back(*kind);
    }
    return p;
}

inline std::optional<DiacriticProfile> diacritic_profile(char32_t cp) {
    return diacritic_profile(std::u32string_view(&cp, 1));
}

/// NFC recomposition of a profile; single codepoint whenever a precomposed
/// form exists.
inline std::u32string compose_profile(const DiacriticProfile& p) {
    std::u32string s(1, p.base);
    for (Diacritic d : p.marks) s.push_back(detail::mark_codepoint(d));
    return normalize_nfc(s);
}

/// Replaces every Greek letter by its bare base letter (final sigma stays
/// final sigma); non-Greek characters and their marks are untouched.
inline std::u32string strip_diacritics(std::u32string_view text) {
    std::u32string nfd = normalize_nfd(text);
    std::u32string out;
    out.reserve(nfd.size());
    std::size_t i = 0;
    while (i < nfd.size()) {
        const char32_t cp = nfd[i++];
        out.push_back(cp);
        const bool greek = is_greek_letter(cp);
        while (i < nfd.size() && detail::combining_class(nfd[i]) != 0) {
            if (!greek) out.push_back(nfd[i]);
            ++i;
        }
    }
    return normalize_nfc(out);
}

inline std::string strip_diacritics(std::string_view utf8) {
    return utf8_encode(strip_diacritics(utf8_decode(utf8)));
}

/// Greek letters / (Greek + Latin letters); 0 when there are no letters.
inline double greek_ratio(std::u32string_view text) {
    std::size_t greek = 0, latin = 0;
    for (char32_t cp : text) {
        if (is_greek_letter(cp))
            ++greek;
        else if (is_latin_letter(cp))
            ++latin;
    }
    const std::size_t total = greek + latin;
    return total == 0 ? 0.0 : static_cast<double>(greek) / static_cast<double>(total);
}

inline double greek_ratio(std::string_view utf8) { return greek_ratio(utf8_decode(utf8)); }

}  // namespace polyocr
