// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// OCR post-processing chain: dehyphenation across line boundaries (tolerant
// of marginal line numbers) and two lexicon-driven polytonic spellchecks,
// wired into a configurable pipeline.
#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"
#include "polyocr/lexicon.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

// ---------------------------------------------------------------------------
// Confusion pairs

/// Either side of a replacement in one-occurrence mode, or every occurrence
/// of a side in pair-type mode.
enum class ConfusionMode { OneOccurrence, OnePairAllOccurrences };

/// Ordered table of unordered {a, b} pairs of 1-2 NFC codepoints each;
/// list order is priority.
class ConfusionPairTable {
public:
    struct Pair {
        std::u32string a, b;
    };

    static ConfusionPairTable from_pairs(const std::vector<std::pair<std::string, std::string>>& raw) {
        ConfusionPairTable t;
        for (const auto& [a, b] : raw) t.add(a, b);
        return t;
    }

    /// Two tab-separated columns per line; '#' comments and blanks skipped.
    static ConfusionPairTable load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open confusion table '" + path + "'");
        ConfusionPairTable t;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw InputError("confusion table '" + path + "': expected two tab-separated " +
                                 "columns (line " + std::to_string(lineno) + ")");
            try {
                t.add(line.substr(0, tab), line.substr(tab + 1));
            } catch (const InputError& e) {
                throw InputError("confusion table '" + path + "': " + e.what() + " (line " +
                                 std::to_string(lineno) + ")");
            }
        }
        return t;
    }

    void add(std::string_view a_utf8, std::string_view b_utf8) {
        Pair p{normalize_nfc(utf8_decode(a_utf8)), normalize_nfc(utf8_decode(b_utf8))};
        if (p.a.empty() || p.a.size() > 2 || p.b.empty() || p.b.size() > 2)
            throw InputError("confusion pair sides must be 1-2 NFC codepoints");
        if (p.a == p.b) throw InputError("confusion pair with identical sides");
        for (const Pair& q : pairs_)
            if ((q.a == p.a && q.b == p.b) || (q.a == p.b && q.b == p.a))
                throw InputError("duplicate confusion pair");
        pairs_.push_back(std::move(p));
    }

    const std::vector<Pair>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }

private:
    std::vector<Pair> pairs_;
};

// ---------------------------------------------------------------------------
// Correction log

enum class CorrectionRule { Dehyphenation, UniqueAccent, ConfusionPair };

inline const char* to_string(CorrectionRule r) {
    switch (r) {
        case CorrectionRule::Dehyphenation: return "dehyphenation";
        case CorrectionRule::UniqueAccent: return "unique-accent";
        case CorrectionRule::ConfusionPair: return "confusion-pair";
    }
    return "?";
}

struct Correction {
    std::string page_id;
    std::size_t line_index = 0;
    std::size_t word_index = 0;
    std::string original;   // always != corrected
    std::string corrected;
    CorrectionRule rule = CorrectionRule::Dehyphenation;
};

struct CorrectionLog {
    std::vector<Correction> records;
    // Hyphenated line ends with no usable continuation, kept unchanged.
    std::vector<Correction> unresolved;

    void append(CorrectionLog other) {
        records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                       std::make_move_iterator(other.records.end()));
        unresolved.insert(unresolved.end(), std::make_move_iterator(other.unresolved.begin()),
                          std::make_move_iterator(other.unresolved.end()));
    }

    std::string to_tsv() const {
        std::string out = "page\tline\tword\toriginal\tcorrected\trule\n";
        auto row = [&out](const Correction& c, const char* rule) {
            out += c.page_id + "\t" + std::to_string(c.line_index) + "\t" +
                   std::to_string(c.word_index) + "\t" + c.original + "\t" + c.corrected + "\t" +
                   rule + "\n";
        };
        for (const auto& c : records) row(c, to_string(c.rule));
        for (const auto& c : unresolved) row(c, "dehyphenation-unresolved");
        return out;
    }
};

// ---------------------------------------------------------------------------
// Pipeline configuration

enum class Stage { Dehyphenation, UniqueAccent, ConfusionPair };

struct PipelineConfig {
    std::vector<Stage> stages = {Stage::Dehyphenation, Stage::UniqueAccent, Stage::ConfusionPair};
    // U+002D hyphen-minus, U+2010 hyphen, U+00AD soft hyphen, U+2E17 double
    // oblique hyphen (Fraktur).
    std::u32string hyphens = U"-‐­⸗";
    std::size_t min_letters_unique_accent = 6;  // "more than five"
    ConfusionMode confusion_mode = ConfusionMode::OneOccurrence;
    double greek_word_threshold = 0.5;  // greek_ratio above this => Greek word
    std::string confusion_table_path;   // resolved by the loader

    static Stage stage_from_string(const std::string& s) {
        if (s == "dehyphenation") return Stage::Dehyphenation;
        if (s == "unique-accent") return Stage::UniqueAccent;
        if (s == "confusion-pair") return Stage::ConfusionPair;
        throw InputError("pipeline config: unknown stage '" + s + "'");
    }

    static PipelineConfig from_json(const nlohmann::json& j) {
        PipelineConfig cfg;
        if (j.contains("stages")) {
            cfg.stages.clear();
            for (const auto& s : j["stages"]) cfg.stages.push_back(stage_from_string(s));
        }
        if (j.contains("hyphens")) {
            cfg.hyphens.clear();
            for (const auto& h : j["hyphens"]) {
                std::u32string cps = utf8_decode(h.get<std::string>());
                if (cps.size() != 1)
                    throw InputError("pipeline config: each hyphen must be one codepoint");
                cfg.hyphens += cps;
            }
        }
        if (j.contains("min_letters_unique_accent"))
            cfg.min_letters_unique_accent = j["min_letters_unique_accent"].get<std::size_t>();
        if (j.contains("confusion_mode")) {
            const std::string m = j["confusion_mode"].get<std::string>();
            if (m == "occurrence") cfg.confusion_mode = ConfusionMode::OneOccurrence;
            else if (m == "pair-type") cfg.confusion_mode = ConfusionMode::OnePairAllOccurrences;
            else throw InputError("pipeline config: unknown confusion_mode '" + m + "'");
        }
        if (j.contains("greek_word_threshold"))
            cfg.greek_word_threshold = j["greek_word_threshold"].get<double>();
        if (j.contains("confusion_table"))
            cfg.confusion_table_path = j["confusion_table"].get<std::string>();
        return cfg;
    }

    bool has_stage(Stage s) const {
        return std::find(stages.begin(), stages.end(), s) != stages.end();
    }
};

// ---------------------------------------------------------------------------
// Dehyphenation

/// True iff the word is digits (optionally followed by '.') and sits at the
/// first or last position of its line.
inline bool is_marginal_number(const Line& line, std::size_t word_index) {
    if (line.words.empty() || word_index >= line.words.size()) return false;
    if (word_index != 0 && word_index + 1 != line.words.size()) return false;
    std::u32string cps = utf8_decode(line.words[word_index].text);
    if (!cps.empty() && cps.back() == U'.') cps.pop_back();
    if (cps.empty()) return false;
    return std::all_of(cps.begin(), cps.end(),
                       [](char32_t c) { return script_of(c) == Script::Digit; });
}

namespace detail {

inline bool ends_with_hyphen(const std::u32string& cps, const std::u32string& hyphens) {
    return !cps.empty() && hyphens.find(cps.back()) != std::u32string::npos;
}

struct LineRef {
    std::size_t region, line;
};

}  // namespace detail

/// Joins line-final hyphenated fragments with the first non-marginal word of
/// the next line in the same region. The merged word keeps the first
/// fragment's bbox; the consumed fragment is removed from its line. A
/// marginal line number at either boundary is skipped, not consumed.
inline std::pair<Page, CorrectionLog> dehyphenate(const Page& page,
                                                  const std::u32string& hyphens = U"-‐­⸗") {
    Page out = page;
    CorrectionLog log;

    for (Region& region : out.regions) {
        for (std::size_t li = 0; li < region.lines.size(); ++li) {
            Line& line = region.lines[li];
            for (;;) {
                if (line.words.empty()) break;
                // Effective last word: a trailing marginal number may intercede.
                std::size_t last = line.words.size() - 1;
                if (is_marginal_number(line, last)) {
                    if (last == 0) break;
                    --last;
                }
                std::u32string last_cps = utf8_decode(line.words[last].text);
                if (!detail::ends_with_hyphen(last_cps, hyphens)) break;

                // Locate the continuation: first non-marginal word of the next
                // non-empty line in this region.
                std::size_t next_line = li + 1;
                while (next_line < region.lines.size() && region.lines[next_line].words.empty())
                    ++next_line;
                std::size_t cont = 0;
                bool found = false;
                if (next_line < region.lines.size()) {
                    const Line& nl = region.lines[next_line];
                    for (std::size_t wi = 0; wi < nl.words.size(); ++wi) {
                        if (is_marginal_number(nl, wi)) continue;
                        cont = wi;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    Correction c;
                    c.page_id = out.id;
                    c.line_index = li;
                    c.word_index = last;
                    c.original = line.words[last].text;
                    c.corrected = line.words[last].text;
                    c.rule = CorrectionRule::Dehyphenation;
                    log.unresolved.push_back(std::move(c));
                    break;
                }

                Line& nl = region.lines[next_line];
                Word fragment = nl.words[cont];
                while (!last_cps.empty() && hyphens.find(last_cps.back()) != std::u32string::npos)
                    last_cps.pop_back();
                const std::string joined =
                    normalize_nfc(utf8_encode(last_cps) + fragment.text);

                Correction c;
                c.page_id = out.id;
                c.line_index = li;
                c.word_index = last;
                c.original = line.words[last].text + " " + fragment.text;
                c.corrected = joined;
                c.rule = CorrectionRule::Dehyphenation;
                log.records.push_back(std::move(c));

                line.words[last].text = joined;  // bbox stays: first fragment's box
                nl.words.erase(nl.words.begin() + static_cast<std::ptrdiff_t>(cont));
                if (!nl.words.empty()) nl.bbox = nl.words_union();
                // Re-check: the joined word may itself end with a hyphen.
            }
        }
        // Drop lines fully consumed by merges.
        std::erase_if(region.lines, [](const Line& l) { return l.words.empty(); });
    }
    return {std::move(out), std::move(log)};
}

// ---------------------------------------------------------------------------
// Spellchecks

namespace detail {

struct WordParts {
    std::u32string prefix, core, suffix;
};

/// Splits surrounding non-letters from the letter-bearing core. Combining
/// marks after the final letter belong to it, not to the suffix.
inline WordParts split_affixes(const std::u32string& cps) {
    std::size_t begin = 0;
    while (begin < cps.size() && !is_letter(cps[begin])) ++begin;
    if (begin == cps.size()) return {cps, {}, {}};
    std::size_t end = cps.size();
    while (end > begin && !is_letter(cps[end - 1])) --end;
    while (end < cps.size() && combining_class(cps[end]) != 0) ++end;
    return {cps.substr(0, begin), cps.substr(begin, end - begin), cps.substr(end)};
}

inline std::size_t letter_count(const std::u32string& cps) {
    return static_cast<std::size_t>(
        std::count_if(cps.begin(), cps.end(), [](char32_t c) { return is_letter(c); }));
}

}  // namespace detail

/// Spellcheck 1: words with more than `min_letters - 1` letters are
/// de-accented and matched against the unique-accent index; matches are
/// re-accented to the sole known configuration. Surrounding punctuation is
/// preserved.
inline std::string spellcheck_unique_accent(std::string_view word, const UniqueAccentIndex& idx,
                                            std::size_t min_letters = 6) {
    std::u32string cps = utf8_decode(word);
    auto parts = detail::split_affixes(cps);
    if (parts.core.empty() || detail::letter_count(parts.core) < min_letters)
        return std::string(word);
    const std::string core = utf8_encode(parts.core);
    const std::string* hit = idx.lookup(strip_diacritics(core));
    if (!hit || *hit == core) return std::string(word);
    return utf8_encode(parts.prefix) + *hit + utf8_encode(parts.suffix);
}

/// Spellcheck 2: out-of-lexicon words get one confusion-pair substitution;
/// the first candidate found in the lexicon wins, scanning pairs in priority
/// order and positions left to right.
inline std::string spellcheck_confusion(std::string_view word, const Lexicon& lex,
                                        const ConfusionPairTable& table,
                                        ConfusionMode mode = ConfusionMode::OneOccurrence) {
    std::u32string cps = utf8_decode(word);
    auto parts = detail::split_affixes(cps);
    if (parts.core.empty()) return std::string(word);
    const std::string core = utf8_encode(parts.core);
    if (lex.contains(core)) return std::string(word);

    auto wrap = [&](const std::u32string& candidate) {
        return utf8_encode(parts.prefix) + utf8_encode(normalize_nfc(candidate)) +
               utf8_encode(parts.suffix);
    };
    auto in_lex = [&](const std::u32string& candidate) {
        return lex.contains(utf8_encode(normalize_nfc(candidate)));
    };

    auto substitute_all = [](const std::u32string& s, const std::u32string& from,
                             const std::u32string& to) {
        std::u32string out;
        std::size_t i = 0;
        while (i < s.size()) {
            if (s.compare(i, from.size(), from) == 0) {
                out += to;
                i += from.size();
            } else {
                out += s[i++];
            }
        }
        return out;
    };

    for (const auto& pair : table.pairs()) {
        if (mode == ConfusionMode::OnePairAllOccurrences) {
            for (const auto& [from, to] : {std::pair{pair.a, pair.b}, std::pair{pair.b, pair.a}}) {
                std::u32string candidate = substitute_all(parts.core, from, to);
                if (candidate != parts.core && in_lex(candidate)) return wrap(candidate);
            }
            continue;
        }
        for (std::size_t pos = 0; pos < parts.core.size(); ++pos) {
            for (const auto& [from, to] : {std::pair{pair.a, pair.b}, std::pair{pair.b, pair.a}}) {
                if (parts.core.compare(pos, from.size(), from) != 0) continue;
                std::u32string candidate = parts.core.substr(0, pos) + to +
                                           parts.core.substr(pos + from.size());
                if (in_lex(candidate)) return wrap(candidate);
            }
        }
    }
    return std::string(word);
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineContext {
    const Lexicon* lexicon = nullptr;
    const UniqueAccentIndex* unique_index = nullptr;
    const ConfusionPairTable* confusion = nullptr;
};

/// Runs the configured stages; spellchecks touch Greek-script words only,
/// dehyphenation is script-agnostic. Word count is conserved except for
/// dehyphenation merges.
inline std::pair<Page, CorrectionLog> run_pipeline(const Page& page, const PipelineConfig& cfg,
                                                   const PipelineContext& ctx) {
    Page out = page;
    CorrectionLog log;

    for (Stage stage : cfg.stages) {
        if (stage == Stage::Dehyphenation) {
            auto [merged, dlog] = dehyphenate(out, cfg.hyphens);
            out = std::move(merged);
            log.append(std::move(dlog));
            continue;
        }
        if (stage == Stage::UniqueAccent && !ctx.unique_index)
            throw InputError("pipeline: unique-accent stage enabled but no lexicon loaded");
        if (stage == Stage::ConfusionPair && (!ctx.lexicon || !ctx.confusion))
            throw InputError("pipeline: confusion-pair stage enabled but no lexicon or table");

        std::size_t line_index = 0;
        for (Region& region : out.regions) {
            for (Line& line : region.lines) {
                for (std::size_t wi = 0; wi < line.words.size(); ++wi) {
                    Word& w = line.words[wi];
                    if (greek_ratio(w.text) <= cfg.greek_word_threshold) continue;
                    std::string fixed =
                        stage == Stage::UniqueAccent
                            ? spellcheck_unique_accent(w.text, *ctx.unique_index,
                                                       cfg.min_letters_unique_accent)
                            : spellcheck_confusion(w.text, *ctx.lexicon, *ctx.confusion,
                                                   cfg.confusion_mode);
                    if (fixed == w.text) continue;
                    Correction c;
                    c.page_id = out.id;
                    c.line_index = line_index;
                    c.word_index = wi;
                    c.original = w.text;
                    c.corrected = fixed;
                    c.rule = stage == Stage::UniqueAccent ? CorrectionRule::UniqueAccent
                                                          : CorrectionRule::ConfusionPair;
                    log.records.push_back(std::move(c));
                    w.text = std::move(fixed);
                }
                ++line_index;
            }
        }
    }
    return {std::move(out), std::move(log)};
}

}  // namespace polyocr
