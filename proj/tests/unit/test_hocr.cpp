// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#include <catch2/catch_amalgamated.hpp>

#include "polyocr/canonical.hpp"
#include "polyocr/hocr.hpp"
#include "test_util.hpp"

using namespace polyocr;

namespace {

std::string wrap_page(const std::string& body,
                      const std::string& page_title = "bbox 0 0 800 1000") {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<html><head><meta charset=\"utf-8\"><title></title></head><body>\n"
           "<div class='ocr_page' id='page_1' title='" + page_title + "'>\n" +
           body + "\n</div></body></html>\n";
}

}  // namespace

TEST_CASE("minimal hOCR document parses to one region, line and word") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 10 10 60 30'>"
        "<span class='ocrx_word' title='bbox 10 10 60 30'>λόγος</span>"
        "</span>");
    HocrResult res = parse_hocr(doc);
    CHECK(res.words_dropped == 0);
    REQUIRE(res.page.regions.size() == 1);
    CHECK(res.page.id == "page_1");
    CHECK(res.page.width == 800);
    CHECK(res.page.height == 1000);
    REQUIRE(res.page.regions[0].lines.size() == 1);
    REQUIRE(res.page.regions[0].lines[0].words.size() == 1);
    const Word& w = res.page.regions[0].lines[0].words[0];
    CHECK(w.text == "λόγος");
    CHECK(w.bbox == BBox{10, 10, 60, 30});
}

TEST_CASE("empty body parses to a page with zero regions") {
    std::string doc = "<html><body></body></html>";
    HocrResult res = parse_hocr(doc);
    CHECK(res.page.regions.empty());
}

TEST_CASE("word text is NFC-normalized on parse") {
    // alpha + combining acute arrives as two codepoints, stored as one.
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 50 20'>"
        "<span class='ocrx_word' title='bbox 0 0 50 20'>ά</span></span>");
    HocrResult res = parse_hocr(doc);
    const Word& w = res.page.regions[0].lines[0].words[0];
    CHECK(w.text == "ά");
    CHECK(utf8_decode(w.text).size() == 1);
}

TEST_CASE("words lacking bboxes are dropped with a count") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 200 20'>"
        "<span class='ocrx_word' title='bbox 0 0 50 20'>καί</span>"
        "<span class='ocrx_word'>dropped</span>"
        "<span class='ocrx_word' title='bbox 60 0 90 20'>  </span>"
        "</span>");
    HocrResult res = parse_hocr(doc);
    CHECK(res.words_dropped == 2);
    CHECK(res.page.regions[0].lines[0].words.size() == 1);
}

TEST_CASE("confidence comes from x_wconf as a fraction") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 50 20'>"
        "<span class='ocrx_word' title='bbox 0 0 50 20; x_wconf 93'>τι</span></span>");
    HocrResult res = parse_hocr(doc);
    REQUIRE(res.page.regions[0].lines[0].words[0].confidence.has_value());
    CHECK(*res.page.regions[0].lines[0].words[0].confidence == Catch::Approx(0.93));
}

TEST_CASE("nested markup and entities inside words") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 100 20'>"
        "<span class='ocrx_word' title='bbox 0 0 50 20'><em>A</em>&amp;<em>B</em></span>"
        "</span>");
    HocrResult res = parse_hocr(doc);
    CHECK(res.page.regions[0].lines[0].words[0].text == "A&B");
}

TEST_CASE("missing page dimensions is an error") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 50 20'>"
        "<span class='ocrx_word' title='bbox 0 0 50 20'>x</span></span>",
        "image \"p.png\"");
    CHECK_THROWS_WITH(parse_hocr(doc), Catch::Matchers::ContainsSubstring("page dimensions"));
}

TEST_CASE("malformed markup reports the element path") {
    std::string doc =
        "<html><body><div class='ocr_page' title='bbox 0 0 10 10'>"
        "<span class='ocr_line' title='bbox 0 0 5 5'><b>x</i></span></div></body></html>";
    CHECK_THROWS_WITH(parse_hocr(doc), Catch::Matchers::ContainsSubstring("html/body"));
    CHECK_THROWS_AS(parse_hocr(doc), InputError);
    CHECK_THROWS_AS(parse_hocr("<html><body>"), InputError);  // unterminated
}

TEST_CASE("word boxes are clamped into the page frame") {
    std::string doc = wrap_page(
        "<span class='ocr_line' title='bbox 0 0 900 20'>"
        "<span class='ocrx_word' title='bbox 780 0 900 20'>edge</span></span>");
    HocrResult res = parse_hocr(doc);
    CHECK(res.boxes_clamped > 0);
    CHECK(res.page.regions[0].lines[0].words[0].bbox.x1 == 800);
}

TEST_CASE("multi-line page preserves reading order") {
    std::string doc = wrap_page(
        "<p class='ocr_par'>"
        "<span class='ocr_line' title='bbox 0 0 200 20'>"
        "<span class='ocrx_word' title='bbox 0 0 40 20'>μῆνιν</span>"
        "<span class='ocrx_word' title='bbox 50 0 90 20'>ἄειδε</span></span>"
        "<span class='ocr_line' title='bbox 0 30 200 50'>"
        "<span class='ocrx_word' title='bbox 0 30 40 50'>θεά</span></span>"
        "</p>");
    HocrResult res = parse_hocr(doc);
    auto texts = all_word_texts(res.page);
    REQUIRE(texts.size() == 3);
    CHECK(texts[0] == "μῆνιν");
    CHECK(texts[1] == "ἄειδε");
    CHECK(texts[2] == "θεά");
    // hOCR ingestion + canonical write/read round-trips.
    Page q = read_canonical(write_canonical(res.page));
    CHECK(q == res.page);
}
