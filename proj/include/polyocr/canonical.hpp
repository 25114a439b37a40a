// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Canonical on-disk JSON form of the document model. Lossless:
// read(write(page)) == page. Schema documented in docs/file_formats.md.
#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

namespace detail {

inline nlohmann::json bbox_to_json(const BBox& b) {
    return nlohmann::json::array({b.x0, b.y0, b.x1, b.y1});
}

inline BBox bbox_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 4)
        throw InputError("canonical page: " + path + " must be [x0, y0, x1, y1]");
    for (const auto& v : j)
        if (!v.is_number_integer())
            throw InputError("canonical page: " + path + " coordinates must be integers");
    BBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    if (!b.valid())
        throw InputError("canonical page: " + path + " violates x0 <= x1, y0 <= y1");
    return b;
}

}  // namespace detail

inline nlohmann::json to_canonical_json(const Page& page) {
    nlohmann::json j;
    j["id"] = page.id;
    j["image"] = {{"width", page.width}, {"height", page.height}};
    j["regions"] = nlohmann::json::array();
    for (const Region& r : page.regions) {
        nlohmann::json jr;
        jr["id"] = r.id;
        jr["type"] = r.rtype;
        jr["bbox"] = detail::bbox_to_json(r.bbox);
        jr["lines"] = nlohmann::json::array();
        for (const Line& l : r.lines) {
            nlohmann::json jl;
            jl["bbox"] = detail::bbox_to_json(l.bbox);
            jl["words"] = nlohmann::json::array();
            for (const Word& w : l.words) {
                nlohmann::json jw;
                jw["text"] = w.text;
                jw["bbox"] = detail::bbox_to_json(w.bbox);
                if (w.confidence) jw["confidence"] = *w.confidence;
                jl["words"].push_back(std::move(jw));
            }
            jr["lines"].push_back(std::move(jl));
        }
        j["regions"].push_back(std::move(jr));
    }
    return j;
}

inline std::string write_canonical(const Page& page) {
    return to_canonical_json(page).dump(2) + "\n";
}

inline Page page_from_canonical_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("canonical page: root must be an object");
    Page page;
    page.id = j.value("id", "");
    if (!j.contains("image") || !j["image"].is_object())
        throw InputError("canonical page: missing /image");
    page.width = j["image"].value("width", -1);
    page.height = j["image"].value("height", -1);
    if (page.width < 0 || page.height < 0)
        throw InputError("canonical page: /image needs non-negative width and height");

    const BBox frame{0, 0, page.width, page.height};
    if (!j.contains("regions") || !j["regions"].is_array())
        throw InputError("canonical page: missing /regions array");

    std::size_t ri = 0;
    for (const auto& jr : j["regions"]) {
        const std::string rpath = "/regions/" + std::to_string(ri++);
        Region r;
        r.id = jr.value("id", "");
        if (!jr.contains("type") || !jr["type"].is_string())
            throw InputError("canonical page: " + rpath + " missing type");
        r.rtype = jr["type"].get<std::string>();
        r.bbox = detail::bbox_from_json(jr.at("bbox"), rpath + "/bbox");
        if (!frame.contains(r.bbox))
            throw InputError("canonical page: " + rpath + "/bbox exceeds image dimensions");
        std::size_t li = 0;
        for (const auto& jl : jr.value("lines", nlohmann::json::array())) {
            const std::string lpath = rpath + "/lines/" + std::to_string(li++);
            Line l;
            l.bbox = detail::bbox_from_json(jl.at("bbox"), lpath + "/bbox");
            if (!frame.contains(l.bbox))
                throw InputError("canonical page: " + lpath + "/bbox exceeds image dimensions");
            std::size_t wi = 0;
            for (const auto& jw : jl.value("words", nlohmann::json::array())) {
                const std::string wpath = lpath + "/words/" + std::to_string(wi++);
                Word w;
                if (!jw.contains("text") || !jw["text"].is_string())
                    throw InputError("canonical page: " + wpath + " missing text");
                w.text = normalize_nfc(jw["text"].get<std::string>());
                if (w.text.empty())
                    throw InputError("canonical page: " + wpath + " has empty text");
                w.bbox = detail::bbox_from_json(jw.at("bbox"), wpath + "/bbox");
                if (!frame.contains(w.bbox))
                    throw InputError("canonical page: " + wpath + "/bbox exceeds image dimensions");
                if (jw.contains("confidence")) {
                    if (!jw["confidence"].is_number())
                        throw InputError("canonical page: " + wpath + "/confidence not numeric");
                    const double c = jw["confidence"].get<double>();
                    if (c < 0.0 || c > 1.0)
                        throw InputError("canonical page: " + wpath + "/confidence outside [0,1]");
                    w.confidence = c;
                }
                l.words.push_back(std::move(w));
            }
            if (!l.words.empty() && !l.bbox.contains(l.words_union()))
                throw InputError("canonical page: " + lpath + "/bbox does not contain its words");
            r.lines.push_back(std::move(l));
        }
        page.regions.push_back(std::move(r));
    }
    std::map<std::string, int> ids;
    for (const Region& r : page.regions)
        if (!r.id.empty() && ++ids[r.id] > 1)
            throw InputError("canonical page: duplicate region id '" + r.id + "'");
    return page;
}

inline Page read_canonical(std::string_view bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("canonical page: bad JSON: ") + e.what());
    }
    return page_from_canonical_json(j);
}

}  // namespace polyocr
