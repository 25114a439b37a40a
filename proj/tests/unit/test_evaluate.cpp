// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#include <catch2/catch_amalgamated.hpp>

#include "polyocr/evaluate.hpp"
#include "test_util.hpp"

using namespace polyocr;

namespace {

const std::vector<std::string> kDemoLabels = {"primary_text", "commentary", "translation",
                                              "app_crit",     "title",      "page_number"};

/// Pixel-counting IoU oracle for small integer boxes.
double iou_by_pixel_count(const BBox& a, const BBox& b) {
    std::size_t inter = 0, uni = 0;
    const int x0 = std::min(a.x0, b.x0), x1 = std::max(a.x1, b.x1);
    const int y0 = std::min(a.y0, b.y0), y1 = std::max(a.y1, b.y1);
    for (int x = x0; x < x1; ++x)
        for (int y = y0; y < y1; ++y) {
            const bool in_a = x >= a.x0 && x < a.x1 && y >= a.y0 && y < a.y1;
            const bool in_b = x >= b.x0 && x < b.x1 && y >= b.y0 && y < b.y1;
            inter += in_a && in_b;
            uni += in_a || in_b;
        }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

TEST_CASE("levenshtein examples") {
    CHECK(levenshtein("θεά", "θεα") == 1);  // one NFC substitution
    CHECK(levenshtein("λόγος", "λόγος") == 0);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
}

TEST_CASE("levenshtein equals the brute-force oracle on short polytonic pairs") {
    std::mt19937 rng(1234);
    std::size_t mismatches = 0;
    for (int i = 0; i < 1500; ++i) {
        std::u32string a = testutil::random_greek_word(rng, 0, 8);
        std::u32string b = testutil::random_greek_word(rng, 0, 8);
        if (a.size() > 8) a.resize(8);
        if (b.size() > 8) b.resize(8);
        mismatches += levenshtein(a, b) != testutil::levenshtein_bruteforce(a, b);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("levenshtein is a metric") {
    std::mt19937 rng(77);
    for (int i = 0; i < 300; ++i) {
        std::u32string a = testutil::random_greek_word(rng, 0, 7);
        std::u32string b = testutil::random_greek_word(rng, 0, 7);
        std::u32string c = testutil::random_greek_word(rng, 0, 7);
        const std::size_t ab = levenshtein(a, b), ba = levenshtein(b, a);
        CHECK(ab == ba);
        CHECK((ab == 0) == (a == b));
        CHECK(ab <= levenshtein(a, c) + levenshtein(c, b));
    }
}

TEST_CASE("IoU agrees with the pixel-count geometry oracle") {
    // Spec alignment example pair.
    const BBox gt{10, 10, 50, 30}, ocr{12, 11, 49, 29};
    CHECK(iou(gt, ocr) == iou_by_pixel_count(gt, ocr));
    CHECK(iou(gt, ocr) >= kDefaultIouThreshold);

    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> c(0, 30), e(1, 25);
    for (int i = 0; i < 500; ++i) {
        BBox a{c(rng), c(rng), 0, 0};
        a.x1 = a.x0 + e(rng);
        a.y1 = a.y0 + e(rng);
        BBox b{c(rng), c(rng), 0, 0};
        b.x1 = b.x0 + e(rng);
        b.y1 = b.y0 + e(rng);
        CHECK(iou(a, b) == iou_by_pixel_count(a, b));
        CHECK(iou(a, b) == iou(b, a));
    }
}

TEST_CASE("align_words matches by descending IoU") {
    SECTION("near-identical boxes match") {
        AlignmentResult a = align_words({{"χ", {10, 10, 50, 30}, "commentary"}},
                                        {{"χ", {12, 11, 49, 29}, "commentary"}});
        REQUIRE(a.matched.size() == 1);
        CHECK(a.unmatched_gt.empty());
        CHECK(a.unmatched_ocr.empty());
    }
    SECTION("disjoint boxes stay unmatched") {
        AlignmentResult a = align_words({{"χ", {0, 0, 10, 10}, "commentary"}},
                                        {{"χ", {50, 50, 60, 60}, "commentary"}});
        CHECK(a.matched.empty());
        CHECK(a.unmatched_gt.size() == 1);
        CHECK(a.unmatched_ocr.size() == 1);
    }
    SECTION("dimension mismatch is an error") {
        Page g, o;
        g.width = 800;
        g.height = 1000;
        o.width = 800;
        o.height = 999;
        CHECK_THROWS_AS(align_words(g, o), InputError);
    }
}

TEST_CASE("two OCR words over one GT word: higher IoU wins, exhaustively") {
    // Sweep over 3-box configurations: a fixed GT box and two OCR boxes on a
    // coarse grid; the greedy matcher must pick the max-IoU OCR box and leave
    // the other unmatched (ties by candidate order).
    const BBox gt{10, 10, 30, 30};
    std::size_t checked = 0;
    for (int x0 = 0; x0 <= 40; x0 += 5)
        for (int w = 5; w <= 25; w += 10)
            for (int x1 = 0; x1 <= 40; x1 += 5)
                for (int w1 = 5; w1 <= 25; w1 += 10) {
                    const BBox o0{x0, 12, x0 + w, 28}, o1{x1, 12, x1 + w1, 28};
                    AlignmentResult a = align_words({{"γ", gt, "commentary"}},
                                                    {{"a", o0, "commentary"},
                                                     {"b", o1, "commentary"}});
                    const double i0 = iou(gt, o0), i1 = iou(gt, o1);
                    const double best = std::max(i0, i1);
                    if (best < kDefaultIouThreshold) {
                        REQUIRE(a.matched.empty());
                        REQUIRE(a.unmatched_ocr.size() == 2);
                    } else {
                        REQUIRE(a.matched.size() == 1);
                        REQUIRE(a.unmatched_ocr.size() == 1);
                        const std::size_t want = i0 >= i1 ? 0 : 1;  // ties: lower index first
                        REQUIRE(a.matched[0].second == want);
                    }
                    ++checked;
                }
    CHECK(checked == 9 * 3 * 9 * 3);
}

TEST_CASE("alignment is symmetric in cardinality under gt/ocr swap") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> c(0, 200), e(4, 30);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<FlatWord> gt, ocr;
        for (int i = 0; i < 12; ++i) {
            BBox b{c(rng), c(rng), 0, 0};
            b.x1 = b.x0 + e(rng);
            b.y1 = b.y0 + e(rng);
            gt.push_back({"γ", b, "commentary"});
        }
        for (int i = 0; i < 12; ++i) {
            BBox b{c(rng), c(rng), 0, 0};
            b.x1 = b.x0 + e(rng);
            b.y1 = b.y0 + e(rng);
            ocr.push_back({"ο", b, "commentary"});
        }
        AlignmentResult fwd = align_words(gt, ocr);
        AlignmentResult rev = align_words(ocr, gt);

        std::set<std::pair<std::size_t, std::size_t>> fwd_pairs(fwd.matched.begin(),
                                                                fwd.matched.end());
        std::set<std::pair<std::size_t, std::size_t>> rev_pairs;
        for (auto [a, b] : rev.matched) rev_pairs.emplace(b, a);
        REQUIRE(fwd_pairs == rev_pairs);
        REQUIRE(fwd.unmatched_gt == rev.unmatched_ocr);
        REQUIRE(fwd.unmatched_ocr == rev.unmatched_gt);

        // Injectivity: no index appears twice.
        std::set<std::size_t> gset, oset;
        for (auto [g, o] : fwd.matched) {
            CHECK(gset.insert(g).second);
            CHECK(oset.insert(o).second);
        }
        CHECK(fwd.matched.size() + fwd.unmatched_gt.size() == gt.size());
        CHECK(fwd.matched.size() + fwd.unmatched_ocr.size() == ocr.size());
    }
}

TEST_CASE("perfect copy scores CER 0, WER 0, F1 1, NLD 1") {
    std::mt19937 rng(555);
    Page page = testutil::grid_page(rng, "p1", kDemoLabels);
    auto taxonomy = RegionTaxonomy::defaults();
    auto rows = metric_rows(tally_alignment(align_words(page, page), taxonomy));
    REQUIRE(!rows.empty());
    for (const auto& row : rows) {
        CHECK(row.cer == 0.0);
        CHECK(row.wer == 0.0);
        CHECK(row.bow.f1 == 1.0);
        CHECK(row.nld == 1.0);
    }
}

TEST_CASE("single-pair CER arithmetic") {
    auto taxonomy = RegionTaxonomy::defaults();
    AlignmentResult a = align_words({{"abcde", {0, 0, 10, 10}, "commentary"}},
                                    {{"abxde", {0, 0, 10, 10}, "commentary"}});
    REQUIRE(a.matched.size() == 1);
    auto rows = metric_rows(tally_alignment(a, taxonomy));
    CHECK(rows[0].cer == Catch::Approx(0.2));  // 1 substitution over 5 chars
    CHECK(rows[0].wer == 1.0);                 // the only word mismatches
}

TEST_CASE("empty OCR page deletes everything: CER capped at 1") {
    auto taxonomy = RegionTaxonomy::defaults();
    AlignmentResult a = align_words({{"abcde", {0, 0, 10, 10}, "commentary"}}, {});
    auto rows = metric_rows(tally_alignment(a, taxonomy));
    CHECK(rows[0].cer == 1.0);
    CHECK(rows[0].nld == 0.0);
    CHECK(rows[0].bow.f1 == 0.0);
}

TEST_CASE("insertion-heavy OCR is capped at CER 1") {
    auto taxonomy = RegionTaxonomy::defaults();
    AlignmentResult a = align_words({{"αβ", {0, 0, 10, 10}, "commentary"}},
                                    {{"αβ", {0, 0, 10, 10}, "commentary"},
                                     {"φλυαρία", {50, 50, 90, 60}, "commentary"},
                                     {"πολλή", {100, 50, 140, 60}, "commentary"}});
    auto rows = metric_rows(tally_alignment(a, taxonomy));
    CHECK(rows[0].cer == 1.0);  // 12 inserted chars over 2 GT chars, capped
}

TEST_CASE("empty scope reports zero with a warning flag") {
    auto taxonomy = RegionTaxonomy::defaults();
    AlignmentResult a = align_words(std::vector<FlatWord>{}, std::vector<FlatWord>{});
    auto rows = metric_rows(tally_alignment(a, taxonomy));
    CHECK(rows[0].cer == 0.0);
    CHECK(rows[0].empty_scope);
}

TEST_CASE("bag of words examples") {
    std::map<std::string, std::size_t> gt{{"ὁ", 2}, {"λόγος", 1}};
    std::map<std::string, std::size_t> ocr{{"ὁ", 1}, {"λόγος", 2}};
    BowScore s = bag_of_words_f1(gt, ocr);
    CHECK(s.precision == Catch::Approx(2.0 / 3.0));
    CHECK(s.recall == Catch::Approx(2.0 / 3.0));
    CHECK(s.f1 == Catch::Approx(2.0 / 3.0));

    CHECK(bag_of_words_f1(gt, gt).f1 == 1.0);
    CHECK(bag_of_words_f1(gt, {{"ἄλλο", 3}}).f1 == 0.0);
    CHECK(bag_of_words_f1({}, {}).f1 == 0.0);
}

TEST_CASE("nld is exactly one minus cer") {
    CHECK(nld_from_cer(0.37) == Catch::Approx(0.63));
    CHECK(nld_from_cer(0.05) == Catch::Approx(0.95));
    CHECK(nld_from_cer(0.0) == 1.0);

    // Property over random synthetic page pairs.
    std::mt19937 rng(999);
    auto taxonomy = RegionTaxonomy::defaults();
    for (int i = 0; i < 100; ++i) {
        Page gt = testutil::grid_page(rng, "p", kDemoLabels);
        auto corrupted = testutil::corrupt_copy(gt, rng() % 30, rng);
        auto rows = metric_rows(tally_alignment(align_words(gt, corrupted.page), taxonomy));
        for (const auto& row : rows) REQUIRE(row.nld == 1.0 - row.cer);
    }
}

TEST_CASE("weighted aggregation") {
    auto s = aggregate_weighted({{0.10, 100}, {0.20, 300}});
    CHECK(s.mean == Catch::Approx(0.175));

    auto eq = aggregate_weighted({{0.1, 1}, {0.2, 1}, {0.3, 1}});
    CHECK(eq.mean == Catch::Approx(0.2));

    auto single = aggregate_weighted({{0.42, 7}});
    CHECK(single.mean == Catch::Approx(0.42));
    CHECK(single.stddev == 0.0);

    CHECK_THROWS_AS(aggregate_weighted({{0.1, 0}, {0.2, 0}}), InputError);
    CHECK_THROWS_AS(aggregate_weighted({}), InputError);
}

TEST_CASE("group numerators and denominators sum to the global ones") {
    std::mt19937 rng(2024);
    auto taxonomy = RegionTaxonomy::defaults();
    for (int i = 0; i < 30; ++i) {
        Page gt = testutil::grid_page(rng, "p", kDemoLabels);
        auto corrupted = testutil::corrupt_copy(gt, rng() % 40, rng);
        TallyMap tallies = tally_alignment(align_words(gt, corrupted.page), taxonomy);
        const ScopeTally& global = tallies[kGlobalScope];
        std::size_t num = 0, den = 0, chars = 0;
        for (const auto& [scope, t] : tallies) {
            if (scope == kGlobalScope) continue;
            num += t.cer_numerator();
            den += t.gt_chars;
            chars += t.letters_digits;
        }
        REQUIRE(num == global.cer_numerator());
        REQUIRE(den == global.gt_chars);
        REQUIRE(chars == global.letters_digits);
    }
}

TEST_CASE("corruption calibration: k substitutions cost exactly k/total") {
    std::mt19937 rng(31415);
    auto taxonomy = RegionTaxonomy::defaults();
    Page gt = testutil::grid_page(rng, "p", kDemoLabels);
    const ScopeTally global_stats = corpus_stats({gt}, taxonomy)[kGlobalScope];
    for (std::size_t k : {1u, 5u, 25u}) {
        auto corrupted = testutil::corrupt_copy(gt, k, rng);
        REQUIRE(corrupted.substitutions == k);
        auto rows = metric_rows(tally_alignment(align_words(gt, corrupted.page), taxonomy));
        REQUIRE(rows[0].cer ==
                static_cast<double>(k) / static_cast<double>(global_stats.gt_chars));
    }
}

TEST_CASE("corpus stats count NFC letters and digits per scope") {
    auto taxonomy = RegionTaxonomy::defaults();
    Page p;
    p.id = "s";
    p.width = 500;
    p.height = 500;
    auto add_region = [&](const std::string& rtype, const std::string& text, int y) {
        Region r;
        r.id = "r" + std::to_string(p.regions.size());
        r.rtype = rtype;
        Line l;
        int x = 10;
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) {
            l.words.push_back({normalize_nfc(tok), {x, y, x + 40, y + 18}, std::nullopt});
            x += 50;
        }
        l.bbox = l.words_union();
        r.bbox = l.bbox;
        r.lines.push_back(std::move(l));
        p.regions.push_back(std::move(r));
    };
    add_region("primary_text", "μῆνιν ἄειδε", 10);     // 10 Greek letters
    add_region("translation", "sing muse 99", 60);     // 8 Latin letters + 2 digits
    add_region("page_number", "42", 110);              // 2 digits

    TallyMap stats = corpus_stats({p}, taxonomy);
    CHECK(stats[to_string(RegionGroup::GreekTexts)].letters_digits == 10);
    CHECK(stats[to_string(RegionGroup::GreekTexts)].greek_letters == 10);
    CHECK(scope_greek_pct(stats[to_string(RegionGroup::GreekTexts)]) == 1.0);
    CHECK(stats[to_string(RegionGroup::LowGreekTexts)].letters_digits == 10);
    CHECK(scope_greek_pct(stats[to_string(RegionGroup::LowGreekTexts)]) == 0.0);
    CHECK(stats[to_string(RegionGroup::Numbers)].letters_digits == 2);
    CHECK(stats[kGlobalScope].letters_digits == 22);
    CHECK(scope_greek_pct(stats[kGlobalScope]) == Catch::Approx(10.0 / 18.0));

    CHECK(corpus_stats({}, taxonomy)[kGlobalScope].letters_digits == 0);
}
