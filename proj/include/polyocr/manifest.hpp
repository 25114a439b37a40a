// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Run manifest: one JSON file describing a batch run (commentaries with
// their GT/OCR/annotation directories, lexicon, pipeline config, output
// directory). Paths are resolved relative to the manifest file; the lexicon
// additionally falls back to $POLYOCR_LEXICON_DIR.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyocr/errors.hpp"

namespace polyocr {

namespace fs = std::filesystem;

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write '" + p.string() + "'");
    out << content;
}

struct CommentaryEntry {
    std::string id;
    std::string language;
    fs::path gt_dir;
    fs::path ocr_dir;           // may be empty (stats on GT only)
    fs::path annotations_dir;   // may be empty (everything unassigned)
};

struct RunManifest {
    fs::path root;  // directory containing the manifest file
    std::vector<CommentaryEntry> commentaries;
    fs::path lexicon_path;    // may be empty
    fs::path taxonomy_path;   // empty: built-in default taxonomy
    fs::path pipeline_path;   // empty: default pipeline config
    fs::path output_dir = "out";
    bool dict_greek_only = true;

    static RunManifest load(const fs::path& file) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(slurp(file));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("manifest '" + file.string() + "': bad JSON: " + e.what());
        }
        RunManifest m;
        m.root = fs::absolute(file).parent_path();

        auto resolve = [&m](const std::string& rel) -> fs::path {
            fs::path p(rel);
            return p.is_absolute() ? p : m.root / p;
        };

        if (!j.contains("commentaries") || !j["commentaries"].is_array() ||
            j["commentaries"].empty())
            throw InputError("manifest: no commentaries");
        std::set<std::string> ids;
        for (const auto& jc : j["commentaries"]) {
            CommentaryEntry e;
            e.id = jc.value("id", "");
            if (e.id.empty()) throw InputError("manifest: commentary without id");
            if (!ids.insert(e.id).second)
                throw InputError("manifest: duplicate commentary id '" + e.id + "'");
            e.language = jc.value("language", "");
            if (!jc.contains("gt_dir"))
                throw InputError("manifest: commentary '" + e.id + "' has no gt_dir");
            e.gt_dir = resolve(jc["gt_dir"].get<std::string>());
            if (jc.contains("ocr_dir")) e.ocr_dir = resolve(jc["ocr_dir"].get<std::string>());
            if (jc.contains("annotations_dir"))
                e.annotations_dir = resolve(jc["annotations_dir"].get<std::string>());
            m.commentaries.push_back(std::move(e));
        }

        if (j.contains("lexicon")) {
            fs::path lex = j["lexicon"].get<std::string>();
            fs::path resolved = lex.is_absolute() ? lex : m.root / lex;
            if (!fs::exists(resolved) && !lex.is_absolute()) {
                if (const char* env = std::getenv("POLYOCR_LEXICON_DIR"))
                    resolved = fs::path(env) / lex;
            }
            m.lexicon_path = resolved;
        }
        if (j.contains("region_taxonomy"))
            m.taxonomy_path = resolve(j["region_taxonomy"].get<std::string>());
        if (j.contains("pipeline_config"))
            m.pipeline_path = resolve(j["pipeline_config"].get<std::string>());
        if (j.contains("output_dir")) m.output_dir = fs::path(j["output_dir"].get<std::string>());
        if (j.contains("dictionary") && j["dictionary"].is_object())
            m.dict_greek_only = j["dictionary"].value("greek_only", true);

        m.validate();
        return m;
    }

    /// All referenced input paths must exist at run start.
    void validate() const {
        std::vector<std::string> missing;
        auto need = [&missing](const fs::path& p, const std::string& what) {
            if (!p.empty() && !fs::exists(p)) missing.push_back(what + ": " + p.string());
        };
        for (const auto& e : commentaries) {
            need(e.gt_dir, "commentary '" + e.id + "' gt_dir");
            need(e.ocr_dir, "commentary '" + e.id + "' ocr_dir");
            need(e.annotations_dir, "commentary '" + e.id + "' annotations_dir");
        }
        need(lexicon_path, "lexicon");
        need(taxonomy_path, "region_taxonomy");
        need(pipeline_path, "pipeline_config");
        if (!missing.empty()) {
            std::string msg = "manifest references missing paths:";
            for (const auto& m : missing) msg += "\n  " + m;
            throw InputError(msg);
        }
    }
};

}  // namespace polyocr
