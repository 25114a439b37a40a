// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Wordlist loading and indexing: the Greek lexicon, the unique-diacritic-
// configuration index, and dictionary-based token accuracy.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

enum class CaseFold { Lowercase, Preserve };

/// Immutable wordlist. Entries are NFC and whitespace-free; set semantics.
class Lexicon {
public:
    Lexicon() = default;
    Lexicon(std::string name, CaseFold fold) : name_(std::move(name)), fold_(fold) {}

    /// One word per line, UTF-8; blank lines and '#' comments are skipped.
    /// Historical lexica are typically lowercase, so folding defaults on;
    /// otherwise OCR capitals at sentence starts would never match.
    static Lexicon load(const std::string& path, CaseFold fold = CaseFold::Lowercase) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open wordlist '" + path + "'");
        Lexicon lex(path.substr(path.find_last_of("/\\") + 1), fold);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            try {
                lex.insert(line);
            } catch (const InputError& e) {
                throw InputError("wordlist '" + path + "': " + e.what() + " (line " +
                                 std::to_string(lineno) + ")");
            }
        }
        return lex;
    }

    static Lexicon from_words(const std::vector<std::string>& words, CaseFold fold,
                              std::string name = "inline") {
        Lexicon lex(std::move(name), fold);
        for (const auto& w : words) lex.insert(w);
        return lex;
    }

    void insert(std::string_view word) {
        std::u32string cps = utf8_decode(word);
        auto is_space_cp = [](char32_t cp) {
            return (cp < 0x80 && std::isspace(static_cast<int>(cp))) || cp == 0x00A0 ||
                   (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
                   cp == 0x202F || cp == 0x205F || cp == 0x3000;
        };
        for (char32_t cp : cps)
            if (is_space_cp(cp)) throw InputError("whitespace in entry");
        std::u32string norm = normalize_nfc(cps);
        if (fold_ == CaseFold::Lowercase) norm = to_lower(norm);
        if (!norm.empty()) words_.insert(utf8_encode(norm));
    }

    bool contains(std::string_view word) const {
        if (fold_ == CaseFold::Preserve) return words_.count(std::string(word)) > 0;
        return words_.count(to_lower(std::string(word))) > 0;
    }

    std::size_t size() const { return words_.size(); }
    const std::string& name() const { return name_; }
    CaseFold fold() const { return fold_; }
    const std::unordered_set<std::string>& words() const { return words_; }

private:
    std::string name_;
    CaseFold fold_ = CaseFold::Lowercase;
    std::unordered_set<std::string> words_;
};

/// De-accented form -> the sole accented realization in the source lexicon,
/// for words that admit exactly one configuration of diacritics.
class UniqueAccentIndex {
public:
    static UniqueAccentIndex build(const Lexicon& lex) {
        std::map<std::string, std::vector<std::string>> groups;
        for (const auto& w : lex.words()) groups[strip_diacritics(w)].push_back(w);
        UniqueAccentIndex idx;
        for (auto& [skeleton, members] : groups)
            if (members.size() == 1) idx.map_.emplace(skeleton, members.front());
        return idx;
    }

    const std::string* lookup(std::string_view deaccented) const {
        auto it = map_.find(std::string(deaccented));
        return it == map_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return map_.size(); }
    const std::map<std::string, std::string>& entries() const { return map_; }

    /// Two-column TSV (deaccented, accented), sorted, for inspection.
    std::string to_tsv() const {
        std::string out;
        for (const auto& [k, v] : map_) {
            out += k;
            out += '\t';
            out += v;
            out += '\n';
        }
        return out;
    }

private:
    std::map<std::string, std::string> map_;
};

/// Trims leading/trailing non-letters; empty result means "no token".
/// Combining marks after the final letter are kept with it.
inline std::string trim_to_letters(std::string_view token) {
    std::u32string cps = utf8_decode(token);
    std::size_t begin = 0;
    while (begin < cps.size() && !is_letter(cps[begin])) ++begin;
    if (begin == cps.size()) return {};
    std::size_t end = cps.size();
    while (end > begin && !is_letter(cps[end - 1])) --end;
    while (end < cps.size() && detail::combining_class(cps[end]) != 0) ++end;
    return utf8_encode(std::u32string_view(cps).substr(begin, end - begin));
}

/// Whitespace-split tokens, trimmed of surrounding non-letters; tokens with
/// no letters are discarded.
inline std::vector<std::string> tokenize_for_dictionary(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) {
            std::string t = trim_to_letters(text.substr(i, j - i));
            if (!t.empty()) out.push_back(std::move(t));
        }
        i = j;
    }
    return out;
}

struct DictionaryAccuracy {
    double value = 0.0;
    std::size_t hits = 0;
    std::size_t total = 0;
    bool empty_warning = false;
};

/// Documents whose dictionary accuracy falls below this ratio are flagged as
/// candidates for model retraining.
inline constexpr double kLowAccuracyThreshold = 0.60;

/// Ratio of tokens found in the lexicon; 0 (flagged) for an empty token list.
inline DictionaryAccuracy dictionary_accuracy(const std::vector<std::string>& tokens,
                                              const Lexicon& lex) {
    DictionaryAccuracy acc;
    acc.total = tokens.size();
    if (tokens.empty()) {
        acc.empty_warning = true;
        return acc;
    }
    for (const auto& t : tokens) acc.hits += lex.contains(t);
    acc.value = static_cast<double>(acc.hits) / static_cast<double>(acc.total);
    return acc;
}

}  // namespace polyocr
