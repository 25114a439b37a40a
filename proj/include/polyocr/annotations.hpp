// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Region-annotation ingestion. Accepts rectangle annotations in three JSON
// layouts: a bare array of {label, x, y, width, height} objects, a single
// VIA-style entry ({"regions": [{shape_attributes, region_attributes}]}),
// or a VIA project map whose values are such entries.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"

namespace polyocr {

namespace detail {

inline int require_int(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw InputError("region annotations: missing numeric '" + std::string(key) + "' in " +
                         where);
    return static_cast<int>(j[key].get<double>());
}

inline RegionAnnotation annotation_from_rect(const std::string& label, const nlohmann::json& rect,
                                             const RegionTaxonomy& taxonomy,
                                             const std::string& where) {
    if (!taxonomy.is_valid(label) || label == kUnassignedRegion)
        throw InputError("unknown region type '" + label + "' in " + where);
    const int x = require_int(rect, "x", where);
    const int y = require_int(rect, "y", where);
    const int w = require_int(rect, "width", where);
    const int h = require_int(rect, "height", where);
    if (w < 0 || h < 0) throw InputError("region annotations: negative extent in " + where);
    return {label, BBox{x, y, x + w, y + h}};
}

inline std::string region_label(const nlohmann::json& attrs, const std::string& where) {
    for (const char* key : {"label", "region_type", "type"})
        if (attrs.contains(key) && attrs[key].is_string()) return attrs[key].get<std::string>();
    throw InputError("region annotations: no label attribute in " + where);
}

inline void parse_via_entry(const nlohmann::json& entry, const RegionTaxonomy& taxonomy,
                            const std::string& where, std::vector<RegionAnnotation>& out) {
    if (!entry.contains("regions") || !entry["regions"].is_array())
        throw InputError("region annotations: '" + where + "' has no regions array");
    std::size_t i = 0;
    for (const auto& r : entry["regions"]) {
        const std::string at = where + "/regions/" + std::to_string(i++);
        const auto& shape = r.contains("shape_attributes") ? r["shape_attributes"] : r;
        const std::string kind = shape.value("name", "rect");
        if (kind != "rect")
            throw InputError("region annotations: non-rectangle shape '" + kind + "' in " + at);
        const auto& attrs = r.contains("region_attributes") ? r["region_attributes"] : r;
        out.push_back(annotation_from_rect(region_label(attrs, at), shape, taxonomy, at));
    }
}

}  // namespace detail

/// Parses one annotation file into typed rectangles. Labels are validated
/// against the taxonomy; overlapping rectangles are returned as-is (geometry
/// is resolved downstream by assign_regions).
inline std::vector<RegionAnnotation> parse_region_annotations(std::string_view bytes,
                                                              const RegionTaxonomy& taxonomy) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("region annotations: bad JSON: ") + e.what());
    }

    std::vector<RegionAnnotation> out;
    if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& r : j) {
            const std::string at = "/" + std::to_string(i++);
            if (r.contains("shape_attributes")) {
                const std::string kind = r["shape_attributes"].value("name", "rect");
                if (kind != "rect")
                    throw InputError("region annotations: non-rectangle shape '" + kind + "' in " +
                                     at);
                out.push_back(detail::annotation_from_rect(
                    detail::region_label(r["region_attributes"], at), r["shape_attributes"],
                    taxonomy, at));
            } else {
                out.push_back(detail::annotation_from_rect(detail::region_label(r, at), r,
                                                           taxonomy, at));
            }
        }
    } else if (j.is_object() && j.contains("regions")) {
        detail::parse_via_entry(j, taxonomy, "", out);
    } else if (j.is_object()) {
        for (const auto& [key, entry] : j.items()) {
            if (!entry.is_object()) continue;
            detail::parse_via_entry(entry, taxonomy, key, out);
        }
    } else {
        throw InputError("region annotations: expected an array or object");
    }
    return out;
}

}  // namespace polyocr
