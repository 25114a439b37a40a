// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <set>
#include <sstream>

#include "polyocr/commands.hpp"
#include "test_util.hpp"

using namespace polyocr;

namespace {

fs::path demo_manifest_path() { return testutil::source_dir() / "data" / "demo" / "manifest.json"; }

nlohmann::json demo_expected() {
    static nlohmann::json j =
        nlohmann::json::parse(testutil::read_file(testutil::fixture("demo_expected.json")));
    return j;
}

fs::path fresh_temp_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    fs::path p = fs::temp_directory_path() /
                 ("polyocr_" + tag + "_" + std::to_string(rng()));
    fs::create_directories(p);
    return p;
}

struct CliRun {
    int exit_code;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    const char* bin = std::getenv("POLYOCR_BIN");
    REQUIRE(bin != nullptr);
    fs::path capture = fresh_temp_dir("cli") / "out.txt";
    const std::string cmd = std::string(bin) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = testutil::read_file(capture);
    return r;
}

void check_tally_against(const nlohmann::json& expected_scopes, const TallyMap& tallies) {
    for (const auto& [scope, exp] : expected_scopes.items()) {
        CAPTURE(scope);
        auto it = tallies.find(scope);
        REQUIRE(it != tallies.end());
        const ScopeTally& t = it->second;
        CHECK(t.letters_digits == exp["char_count"].get<std::size_t>());
        CHECK(t.greek_letters == exp["greek_letters"].get<std::size_t>());
        CHECK(t.latin_letters == exp["latin_letters"].get<std::size_t>());
        CHECK(t.gt_chars == exp["gt_chars"].get<std::size_t>());
        CHECK(t.gt_words == exp["gt_words"].get<std::size_t>());
    }
}

}  // namespace

TEST_CASE("demo stats match the independently computed expectations") {
    RunManifest manifest = RunManifest::load(demo_manifest_path());
    CommonOptions opts;
    StatsResult stats = compute_stats(manifest, opts);
    const nlohmann::json expected = demo_expected();

    check_tally_against(expected["overall"], stats.overall);
    REQUIRE(stats.per_commentary.size() == 2);
    for (const auto& cm : stats.per_commentary) {
        CAPTURE(cm.id);
        check_tally_against(expected["per_commentary"][cm.id], cm.tallies);
        const auto& exp_dict = expected["dictionary_accuracy"][cm.id];
        REQUIRE(cm.has_dict);
        CHECK(cm.dict.hits == exp_dict["hits"].get<std::size_t>());
        CHECK(cm.dict.total == exp_dict["tokens"].get<std::size_t>());
        CHECK(cm.dict.value == Catch::Approx(exp_dict["value"].get<double>()));
    }
    // The alpha OCR scores below the retraining threshold, beta above it.
    CHECK(stats.per_commentary[0].dict.value < kLowAccuracyThreshold);
    CHECK(stats.per_commentary[1].dict.value >= kLowAccuracyThreshold);
}

TEST_CASE("demo raw evaluation matches the expected numerators exactly") {
    RunManifest manifest = RunManifest::load(demo_manifest_path());
    CommonOptions opts;
    EvaluationResult eval = compute_evaluation(manifest, opts);
    const nlohmann::json expected = demo_expected();

    auto check_eval = [](const nlohmann::json& exp_scopes, const TallyMap& tallies) {
        for (const auto& [scope, exp] : exp_scopes.items()) {
            CAPTURE(scope);
            auto it = tallies.find(scope);
            REQUIRE(it != tallies.end());
            const ScopeTally& t = it->second;
            REQUIRE(t.cer_numerator() == exp["cer_numerator"].get<std::size_t>());
            REQUIRE(t.wer_numerator() == exp["wer_numerator"].get<std::size_t>());
            MetricRow row = metric_row(scope, t);
            if (t.gt_chars > 0)
                REQUIRE(row.cer == static_cast<double>(t.cer_numerator()) /
                                       static_cast<double>(t.gt_chars));
            REQUIRE(row.nld == 1.0 - row.cer);
        }
    };
    check_eval(expected["raw"]["overall"], eval.overall);
    for (const auto& cm : eval.per_commentary) {
        CAPTURE(cm.id);
        check_eval(expected["raw"][cm.id], cm.tallies);
    }
}

TEST_CASE("demo postprocess produces the expected corrections and lowers CER") {
    RunManifest manifest = RunManifest::load(demo_manifest_path());
    CommonOptions opts;
    opts.output_override = fresh_temp_dir("post");
    opts.pin_timestamp = "2000-01-01T00:00:00Z";
    std::ostringstream log;
    REQUIRE(cmd_postprocess(manifest, opts, log) == 0);

    // Corrections TSV vs the expected ledger (page, original, corrected, rule).
    const std::string tsv = testutil::read_file(opts.output_override / "corrections.tsv");
    std::multiset<std::string> got;
    std::istringstream rows(tsv);
    std::string line;
    std::getline(rows, line);  // header
    while (std::getline(rows, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, '\t')) cols.push_back(col);
        REQUIRE(cols.size() == 6);
        got.insert(cols[0] + "|" + cols[3] + "|" + cols[4] + "|" + cols[5]);
    }
    std::multiset<std::string> expected_rows;
    const nlohmann::json expected_fixture = demo_expected();
    for (const auto& c : expected_fixture["corrections"])
        expected_rows.insert(c["page"].get<std::string>() + "|" + c["original"].get<std::string>() +
                             "|" + c["corrected"].get<std::string>() + "|" +
                             c["rule"].get<std::string>());
    REQUIRE(got == expected_rows);

    // Evaluating the post-processed pages matches the expected numerators and
    // never exceeds the raw CER (the demo set is constructed non-harmful).
    CommonOptions raw_opts;
    EvaluationResult raw = compute_evaluation(manifest, raw_opts);
    CommonOptions post_opts;
    post_opts.ocr_root = opts.output_override / "postprocessed";
    EvaluationResult post = compute_evaluation(manifest, post_opts);

    const nlohmann::json expected = demo_expected();
    for (const auto& [scope, exp] : expected["post"]["overall"].items()) {
        CAPTURE(scope);
        REQUIRE(post.overall.at(scope).cer_numerator() ==
                exp["cer_numerator"].get<std::size_t>());
    }
    MetricRow raw_row = metric_row(kGlobalScope, raw.overall[kGlobalScope]);
    MetricRow post_row = metric_row(kGlobalScope, post.overall[kGlobalScope]);
    CHECK(post_row.cer <= raw_row.cer);

    // Running the pipeline over its own output is a fixed point.
    CommonOptions again = opts;
    again.output_override = fresh_temp_dir("post2");
    RunManifest manifest2 = manifest;
    for (auto& e : manifest2.commentaries)
        e.ocr_dir = opts.output_override / "postprocessed" / e.id;
    std::ostringstream log2;
    REQUIRE(cmd_postprocess(manifest2, again, log2) == 0);
    const std::string tsv2 = testutil::read_file(again.output_override / "corrections.tsv");
    std::istringstream rows2(tsv2);
    std::size_t body_rows = 0;
    std::getline(rows2, line);
    while (std::getline(rows2, line)) body_rows += !line.empty();
    CHECK(body_rows == 0);
}

TEST_CASE("perfect copy evaluation scores perfectly through the commands") {
    RunManifest manifest = RunManifest::load(demo_manifest_path());
    // Build an OCR tree that is a byte copy of the GT.
    fs::path copy_root = fresh_temp_dir("gtcopy");
    for (const auto& e : manifest.commentaries)
        fs::copy(e.gt_dir, copy_root / e.id, fs::copy_options::recursive);
    CommonOptions opts;
    opts.ocr_root = copy_root;
    EvaluationResult eval = compute_evaluation(manifest, opts);
    for (const auto& row : metric_rows(eval.overall)) {
        CAPTURE(row.scope);
        CHECK(row.cer == 0.0);
        CHECK(row.wer == 0.0);
        CHECK(row.nld == 1.0);
        if (row.gt_words > 0) CHECK(row.bow.f1 == 1.0);
    }
}

TEST_CASE("golden files: stats, metrics, report and corrections") {
    RunManifest manifest = RunManifest::load(demo_manifest_path());
    CommonOptions opts;
    opts.output_override = fresh_temp_dir("golden");
    opts.pin_timestamp = "2000-01-01T00:00:00Z";
    opts.label = "demo";
    std::ostringstream log;
    REQUIRE(cmd_stats(manifest, opts, log) == 0);
    REQUIRE(cmd_evaluate(manifest, opts, log) == 0);
    REQUIRE(cmd_postprocess(manifest, opts, log) == 0);

    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"stats.json", "stats_demo.json"},
        {"metrics_demo.json", "metrics_demo.json"},
        {"report_demo.md", "report_demo.md"},
        {"corrections.tsv", "corrections_demo.tsv"},
        {"postprocessed/alpha/alpha_p1.json", "postprocessed_alpha_p1.json"},
    };
    const bool update = std::getenv("UPDATE_GOLDENS") != nullptr;
    for (const auto& [produced, golden] : pairs) {
        CAPTURE(produced);
        const std::string actual = testutil::read_file(opts.output_override / produced);
        const fs::path golden_path = testutil::source_dir() / "tests" / "golden" / golden;
        if (update) {
            testutil::write_file(golden_path, actual);
            continue;
        }
        REQUIRE(fs::exists(golden_path));
        REQUIRE(actual == testutil::read_file(golden_path));
    }
}

TEST_CASE("page dimension mismatch fails the evaluation as an input error") {
    fs::path dir = fresh_temp_dir("dims");
    testutil::write_file(dir / "gt" / "p.json",
                         R"({"id":"p","image":{"width":100,"height":100},"regions":[]})");
    testutil::write_file(dir / "ocr" / "p.json",
                         R"({"id":"p","image":{"width":100,"height":99},"regions":[]})");
    testutil::write_file(dir / "manifest.json",
                         R"({"commentaries": [{"id": "c", "gt_dir": "gt", "ocr_dir": "ocr"}]})");
    RunManifest m = RunManifest::load(dir / "manifest.json");
    CommonOptions opts;
    CHECK_THROWS_AS(compute_evaluation(m, opts), InputError);

    if (std::getenv("POLYOCR_BIN") != nullptr) {
        CliRun r = run_cli("evaluate --manifest " + (dir / "manifest.json").string());
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("not comparable") != std::string::npos);
    }
}

TEST_CASE("lexicon path falls back to POLYOCR_LEXICON_DIR") {
    fs::path dir = fresh_temp_dir("lexenv");
    fs::path lexdir = dir / "lexica";
    testutil::write_file(lexdir / "words.txt", "λόγος\n");
    fs::create_directories(dir / "gt");
    testutil::write_file(dir / "gt" / "p.json",
                         R"({"id":"p","image":{"width":10,"height":10},"regions":[]})");
    testutil::write_file(dir / "manifest.json", R"({
        "commentaries": [{"id": "c", "gt_dir": "gt"}],
        "lexicon": "words.txt"
    })");
    setenv("POLYOCR_LEXICON_DIR", lexdir.string().c_str(), 1);
    RunManifest m = RunManifest::load(dir / "manifest.json");
    unsetenv("POLYOCR_LEXICON_DIR");
    CHECK(m.lexicon_path == lexdir / "words.txt");
    CHECK(Lexicon::load(m.lexicon_path.string()).size() == 1);
}

TEST_CASE("cli: stats, evaluate determinism, report, exit codes") {
    if (std::getenv("POLYOCR_BIN") == nullptr) SKIP("POLYOCR_BIN not set");
    const std::string manifest = demo_manifest_path().string();

    SECTION("stats runs and writes reports") {
        fs::path out = fresh_temp_dir("cli_stats");
        CliRun r = run_cli("stats --manifest " + manifest + " --out " + out.string());
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(out / "stats.json"));
        CHECK(fs::exists(out / "stats.md"));
    }

    SECTION("evaluate with a pinned timestamp is byte-deterministic") {
        fs::path out1 = fresh_temp_dir("cli_eval1"), out2 = fresh_temp_dir("cli_eval2");
        const std::string common = "evaluate --manifest " + manifest +
                                   " --pin-timestamp 2000-01-01T00:00:00Z --label det --out ";
        CliRun r1 = run_cli(common + out1.string());
        CliRun r2 = run_cli(common + out2.string());
        REQUIRE(r1.exit_code == 0);
        REQUIRE(r2.exit_code == 0);
        CHECK(testutil::read_file(out1 / "metrics_det.json") ==
              testutil::read_file(out2 / "metrics_det.json"));
    }

    SECTION("evaluate honors --groups off") {
        fs::path out = fresh_temp_dir("cli_nogroups");
        CliRun r = run_cli("evaluate --manifest " + manifest +
                           " --groups off --label flat --out " + out.string());
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(testutil::read_file(out / "metrics_flat.json"));
        CHECK(j["overall"].size() == 1);
        CHECK(j["overall"].contains("global"));
    }

    SECTION("report merges evaluation metrics") {
        fs::path out = fresh_temp_dir("cli_report");
        REQUIRE(run_cli("evaluate --manifest " + manifest + " --label a --out " + out.string())
                    .exit_code == 0);
        CliRun r = run_cli("report --metrics " + (out / "metrics_a.json").string() + " --out " +
                           (out / "combined.md").string());
        CHECK(r.exit_code == 0);
        CHECK(testutil::read_file(out / "combined.md").find("| a |") != std::string::npos);
    }

    SECTION("missing manifest exits 1") {
        CliRun r = run_cli("stats --manifest /nonexistent/manifest.json");
        CHECK(r.exit_code == 1);
    }

    SECTION("empty manifest exits 1 naming the problem") {
        fs::path dir = fresh_temp_dir("cli_empty");
        testutil::write_file(dir / "manifest.json", R"({"commentaries": []})");
        CliRun r = run_cli("stats --manifest " + (dir / "manifest.json").string());
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("no commentaries") != std::string::npos);
    }

    SECTION("jobs > 1 yields identical results") {
        fs::path out1 = fresh_temp_dir("cli_j1"), out2 = fresh_temp_dir("cli_j2");
        const std::string common = "evaluate --manifest " + manifest +
                                   " --pin-timestamp 2000-01-01T00:00:00Z --label jobs --out ";
        REQUIRE(run_cli(common + out1.string() + " --jobs 1").exit_code == 0);
        REQUIRE(run_cli(common + out2.string() + " --jobs 4").exit_code == 0);
        CHECK(testutil::read_file(out1 / "metrics_jobs.json") ==
              testutil::read_file(out2 / "metrics_jobs.json"));
    }
}
