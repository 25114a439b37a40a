// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "polyocr/annotations.hpp"
#include "polyocr/canonical.hpp"
#include "polyocr/docmodel.hpp"
#include "test_util.hpp"

using namespace polyocr;

namespace {

Word mk_word(const std::string& text, BBox b) { return Word{text, b, std::nullopt}; }

Line mk_line(std::vector<Word> words) {
    Line l;
    l.words = std::move(words);
    l.bbox = l.words_union();
    return l;
}

Page one_region_page(std::vector<Line> lines, int w = 800, int h = 1000) {
    Page p;
    p.id = "p";
    p.width = w;
    p.height = h;
    Region r;
    r.id = "r0";
    r.rtype = kUnassignedRegion;
    if (!lines.empty()) {
        r.bbox = lines.front().bbox;
        for (const Line& l : lines) r.bbox = r.bbox.united(l.bbox);
    }
    r.lines = std::move(lines);
    p.regions.push_back(std::move(r));
    return p;
}

}  // namespace

TEST_CASE("bbox basics") {
    BBox b{10, 20, 50, 40};
    CHECK(b.valid());
    CHECK(b.area() == 40 * 20);
    CHECK(b.contains(30.0, 30.0));
    CHECK_FALSE(b.contains(9.0, 30.0));
    CHECK(b.united({0, 0, 5, 5}) == BBox{0, 0, 50, 40});
    CHECK_FALSE(BBox{5, 0, 4, 0}.valid());
}

TEST_CASE("default taxonomy grouping matches the layout-element table") {
    auto t = RegionTaxonomy::defaults();
    CHECK(t.group_of("primary_text") == RegionGroup::GreekTexts);
    CHECK(t.group_of("commentary") == RegionGroup::CommentaryLike);
    CHECK(t.group_of("footnote") == RegionGroup::CommentaryLike);
    CHECK(t.group_of("translation") == RegionGroup::LowGreekTexts);
    CHECK(t.group_of("introduction") == RegionGroup::LowGreekTexts);
    CHECK(t.group_of("preface") == RegionGroup::LowGreekTexts);
    CHECK(t.group_of("app_crit") == RegionGroup::CriticalApparatus);
    CHECK(t.group_of("appendix") == RegionGroup::StructuredTexts);
    CHECK(t.group_of("bibliography") == RegionGroup::StructuredTexts);
    CHECK(t.group_of("index") == RegionGroup::StructuredTexts);
    CHECK(t.group_of("title") == RegionGroup::StructuredTexts);
    CHECK(t.group_of("table_of_contents") == RegionGroup::StructuredTexts);
    CHECK(t.group_of("page_number") == RegionGroup::Numbers);
    CHECK(t.group_of("line_number") == RegionGroup::Numbers);
    CHECK(t.group_of(kUnassignedRegion) == std::nullopt);
    CHECK_THROWS_WITH(t.group_of("commentry"), Catch::Matchers::ContainsSubstring("commentry"));

    // Surjective onto the six groups.
    std::set<RegionGroup> seen;
    for (const auto& [label, group] : t.types()) seen.insert(group);
    CHECK(seen.size() == all_region_groups().size());
}

TEST_CASE("taxonomy loads from JSON and rejects bad configs") {
    auto j = nlohmann::json::parse(R"({"types": {"margin": "numbers", "body": "greek_texts"}})");
    auto t = RegionTaxonomy::from_json(j);
    CHECK(t.group_of("margin") == RegionGroup::Numbers);
    CHECK(t.is_valid("body"));
    CHECK_FALSE(t.is_valid("commentary"));
    CHECK_THROWS_AS(RegionTaxonomy::from_json(nlohmann::json::parse(
                        R"({"types": {"x": "nonsense_group"}})")),
                    InputError);
    CHECK_THROWS_AS(RegionTaxonomy::from_json(nlohmann::json::parse(R"({})")), InputError);
}

TEST_CASE("assign_regions: center containment and unassigned fallback") {
    Page p = one_region_page({mk_line({mk_word("α", {30, 15, 40, 25}),    // center (35,20)
                                       mk_word("β", {300, 15, 320, 25})   // outside all rects
                                      })});
    std::vector<RegionAnnotation> annots = {{"commentary", {0, 0, 100, 100}}};
    Page out = assign_regions(p, annots);

    REQUIRE(out.regions.size() == 2);
    CHECK(out.regions[0].rtype == "commentary");
    REQUIRE(out.regions[0].lines.size() == 1);
    CHECK(out.regions[0].lines[0].words[0].text == "α");
    CHECK(out.regions[1].rtype == kUnassignedRegion);
    CHECK(out.regions[1].lines[0].words[0].text == "β");
    // Line was split into two fragments, one per region.
    CHECK(out.word_count() == p.word_count());
}

TEST_CASE("assign_regions: nested rectangles resolve to the smallest area") {
    // Exhaustive sweep of 2-rectangle configurations on a coarse grid against
    // a brute-force smallest-area-containing-rect oracle.
    const int G = 4;  // grid coordinates in {0, 10, 20, 30}
    std::size_t cases = 0;
    for (int ax0 = 0; ax0 < G; ++ax0)
        for (int ay0 = 0; ay0 < G; ++ay0)
            for (int ax1 = ax0; ax1 < G; ++ax1)
                for (int ay1 = ay0; ay1 < G; ++ay1)
                    for (int bx0 = 0; bx0 < G; ++bx0)
                        for (int by0 = 0; by0 < G; ++by0)
                            for (int bx1 = bx0; bx1 < G; ++bx1)
                                for (int by1 = by0; by1 < G; ++by1) {
                                    BBox A{ax0 * 10, ay0 * 10, ax1 * 10, ay1 * 10};
                                    BBox B{bx0 * 10, by0 * 10, bx1 * 10, by1 * 10};
                                    Word w = mk_word("x", {14, 14, 16, 16});  // center (15,15)
                                    Page p = one_region_page({mk_line({w})}, 40, 40);
                                    std::vector<RegionAnnotation> annots = {
                                        {"commentary", A}, {"footnote", B}};
                                    Page out = assign_regions(p, annots);

                                    // Oracle: smallest containing area, first wins ties.
                                    const bool inA = A.contains(15.0, 15.0);
                                    const bool inB = B.contains(15.0, 15.0);
                                    std::string expect = kUnassignedRegion;
                                    if (inA && (!inB || A.area() <= B.area()))
                                        expect = "commentary";
                                    else if (inB)
                                        expect = "footnote";

                                    std::string got = kUnassignedRegion;
                                    for (const auto& r : out.regions)
                                        if (!r.lines.empty()) got = r.rtype;
                                    REQUIRE(got == expect);
                                    ++cases;
                                }
    CHECK(cases == 100 * 100);
}

TEST_CASE("assign_regions conserves the word multiset") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coord(0, 780);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<Line> lines;
        for (int li = 0; li < 5; ++li) {
            std::vector<Word> words;
            for (int wi = 0; wi < 8; ++wi) {
                int x = coord(rng), y = coord(rng);
                words.push_back(mk_word(polyocr::utf8_encode(testutil::random_greek_word(rng)),
                                        {x, y, x + 15, y + 10}));
            }
            lines.push_back(mk_line(std::move(words)));
        }
        Page p = one_region_page(std::move(lines));
        std::vector<RegionAnnotation> annots = {
            {"commentary", {0, 0, 400, 500}},
            {"primary_text", {0, 0, 200, 200}},  // nested inside commentary
            {"app_crit", {400, 500, 800, 1000}},
        };
        Page out = assign_regions(p, annots);

        auto multiset_of = [](const Page& page) {
            std::multiset<std::string> m;
            for (const auto& t : all_word_texts(page)) m.insert(t);
            return m;
        };
        REQUIRE(multiset_of(out) == multiset_of(p));

        for (const auto& r : out.regions) {
            for (const auto& l : r.lines) {
                REQUIRE(!l.words.empty());
                CHECK(l.bbox.contains(l.words_union()));
            }
            CHECK(r.bbox.valid());
        }
    }
}

TEST_CASE("canonical JSON round trip is the identity") {
    Page p = one_region_page({mk_line({mk_word("λόγος", {10, 10, 60, 30}),
                                       mk_word("καί", {70, 10, 100, 30})})});
    p.regions[0].rtype = "commentary";
    Word conf = mk_word("τι", {110, 10, 130, 30});
    conf.confidence = 0.93;
    p.regions[0].lines.push_back(mk_line({conf}));
    p.regions[0].bbox = p.regions[0].bbox.united({110, 10, 130, 30});

    std::string bytes = write_canonical(p);
    Page q = read_canonical(bytes);
    CHECK(q == p);
    CHECK(write_canonical(q) == bytes);
}

TEST_CASE("canonical JSON enforces the schema") {
    // x1 < x0 violates the bbox invariant and is rejected with a JSON path.
    std::string bad = R"({"id":"p","image":{"width":100,"height":100},
        "regions":[{"id":"r0","type":"commentary","bbox":[50,0,10,10],"lines":[]}]})";
    CHECK_THROWS_WITH(read_canonical(bad), Catch::Matchers::ContainsSubstring("/regions/0/bbox"));

    std::string oob = R"({"id":"p","image":{"width":100,"height":100},
        "regions":[{"id":"r0","type":"commentary","bbox":[0,0,10,10],
        "lines":[{"bbox":[0,0,200,10],"words":[]}]}]})";
    CHECK_THROWS_WITH(read_canonical(oob),
                      Catch::Matchers::ContainsSubstring("exceeds image dimensions"));

    // Minimal empty page is valid.
    Page empty = read_canonical(R"({"id":"e","image":{"width":0,"height":0},"regions":[]})");
    CHECK(empty.regions.empty());

    // Decomposed text is normalized on read.
    std::string decomposed =
        "{\"id\":\"p\",\"image\":{\"width\":100,\"height\":100},\"regions\":[{\"id\":\"r0\","
        "\"type\":\"commentary\",\"bbox\":[0,0,99,99],\"lines\":[{\"bbox\":[0,0,50,10],"
        "\"words\":[{\"text\":\"\\u03b1\\u0301\",\"bbox\":[0,0,10,10]}]}]}]}";
    Page norm = read_canonical(decomposed);
    CHECK(norm.regions[0].lines[0].words[0].text == "ά");
}

TEST_CASE("region annotation parsing") {
    auto t = RegionTaxonomy::defaults();

    SECTION("bare array form") {
        auto annots = parse_region_annotations(
            R"([{"label": "commentary", "x": 5, "y": 6, "width": 100, "height": 50}])", t);
        REQUIRE(annots.size() == 1);
        CHECK(annots[0].rtype == "commentary");
        CHECK(annots[0].bbox == BBox{5, 6, 105, 56});
    }

    SECTION("VIA entry form") {
        auto annots = parse_region_annotations(R"({"regions": [
            {"shape_attributes": {"name": "rect", "x": 0, "y": 0, "width": 10, "height": 10},
             "region_attributes": {"label": "footnote"}},
            {"shape_attributes": {"name": "rect", "x": 5, "y": 5, "width": 10, "height": 10},
             "region_attributes": {"region_type": "commentary"}}
        ]})",
                                               t);
        REQUIRE(annots.size() == 2);  // overlap is fine; resolved downstream
        CHECK(annots[0].rtype == "footnote");
        CHECK(annots[1].rtype == "commentary");
    }

    SECTION("VIA project map form") {
        auto annots = parse_region_annotations(R"({"page1.png1234": {"filename": "page1.png",
            "regions": [{"shape_attributes": {"name": "rect", "x": 1, "y": 2, "width": 3,
            "height": 4}, "region_attributes": {"label": "title"}}]}})",
                                               t);
        REQUIRE(annots.size() == 1);
        CHECK(annots[0].rtype == "title");
        CHECK(annots[0].bbox == BBox{1, 2, 4, 6});
    }

    SECTION("unknown label is rejected by name") {
        CHECK_THROWS_WITH(
            parse_region_annotations(
                R"([{"label": "commentry", "x": 0, "y": 0, "width": 1, "height": 1}])", t),
            Catch::Matchers::ContainsSubstring("commentry"));
    }

    SECTION("non-rectangle shapes are rejected") {
        CHECK_THROWS_WITH(parse_region_annotations(R"({"regions": [
                {"shape_attributes": {"name": "polygon", "all_points_x": [1]},
                 "region_attributes": {"label": "commentary"}}]})",
                                                   t),
                          Catch::Matchers::ContainsSubstring("polygon"));
    }
}
