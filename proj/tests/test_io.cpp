#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "fhs/errors.hpp"
#include "fhs/jammer.hpp"
#include "fhs/scheme_io.hpp"
#include "support/fixtures.hpp"

using namespace fhs;
using nlohmann::json;

namespace {
std::string temp_path(const char* name) {
    return std::string("/tmp/fhs_io_test_") + name;
}
} // namespace

TEST_CASE("scheme files round-trip exactly") {
    Scheme scheme = construct::construct_mds_scheme(5, 2, 5);
    const auto path = temp_path("scheme.json");
    io::save_scheme(scheme, path);
    Scheme loaded = io::load_scheme(path);
    CHECK(loaded.sequences == scheme.sequences);
    CHECK(loaded.m() == scheme.m());
    CHECK(loaded.label == scheme.label);
    CHECK(loaded.metadata.kind == "mds");
    CHECK(*loaded.metadata.distance_certificate == 4);
    CHECK(*loaded.metadata.mds_p == 5);
    std::remove(path.c_str());
}

TEST_CASE("one-based alphabets are renumbered on load") {
    json doc;
    doc["version"] = "1";
    doc["alphabet_base"] = 1;
    doc["m"] = 3;
    doc["label"] = "imported";
    doc["sequences"] = {{1, 1, 2}, {2, 3, 1}};
    Scheme scheme = io::scheme_from_json(doc);
    CHECK(scheme.sequences[0].values == std::vector<Channel>{0, 0, 1});
    CHECK(scheme.sequences[1].values == std::vector<Channel>{1, 2, 0});
    CHECK(scheme.label.find("renumbered") != std::string::npos);

    doc["sequences"] = {{0, 1, 2}};
    CHECK_THROWS_AS(io::scheme_from_json(doc), validation_error); // 0 below base 1
}

TEST_CASE("scheme file validation") {
    json doc;
    doc["version"] = "2";
    CHECK_THROWS_AS(io::scheme_from_json(doc), validation_error);

    doc["version"] = "1";
    doc["m"] = 3;
    doc["sequences"] = {{0, 1}, {1, 2}};
    doc["v"] = 3; // contradicts the rows
    CHECK_THROWS_AS(io::scheme_from_json(doc), validation_error);
    doc["v"] = 2;
    doc["k"] = 2;
    CHECK(io::scheme_from_json(doc).k() == 2);

    CHECK_THROWS_AS(io::load_scheme("/nonexistent/nowhere.json"), io_error);
}

TEST_CASE("latin square files") {
    auto square = construct::cyclic_latin_square(4);
    const auto path = temp_path("latin.json");
    io::save_latin(square, path);
    auto loaded = io::load_latin(path);
    CHECK(loaded.grid == square.grid);
    std::remove(path.c_str());

    json doc = io::latin_to_json(square);
    doc["grid"][0][0] = 1; // break the permutation property
    CHECK_THROWS_AS(io::latin_from_json(doc), validation_error);
}

TEST_CASE("rationals serialize as exact fractions plus a decimal") {
    json doc = io::rational_to_json(Rational(11638, 12144));
    CHECK(doc["num"] == "23"); // stored reduced
    CHECK(doc["den"] == "24");
    CHECK(doc["decimal"] == "0.958333");
    doc = io::rational_to_json(Rational(-1, 3));
    CHECK(doc["num"] == "-1");
    CHECK(doc["decimal"] == "-0.333333");
}

TEST_CASE("throughput reports carry mode and sampling fields") {
    auto scheme = test::nine_sequence_scheme();
    auto exact = metrics::worst_case_throughput_of_scheme(scheme, 2, metrics::ComputeMode::Exact);
    json doc = io::throughput_report_to_json(exact.report);
    CHECK(doc["mode"] == "exact");
    CHECK(doc["value"]["num"] == "1");
    CHECK(doc["value"]["den"] == "3");
    CHECK(doc.contains("witness"));
    CHECK_FALSE(doc.contains("sample_count"));

    metrics::EnumerationPolicy policy;
    policy.samples = 64;
    auto mc = metrics::average_throughput_of_scheme(scheme, 2, metrics::ComputeMode::MonteCarlo, policy);
    doc = io::throughput_report_to_json(mc);
    CHECK(doc["mode"] == "monte-carlo");
    CHECK(doc["sample_count"] == 64);
    CHECK(doc.contains("standard_error"));
    CHECK(doc["standard_error"].is_string()); // never a bare float
}

TEST_CASE("trace exports one slot record per line") {
    auto scheme = test::nine_sequence_scheme();
    jammer::JammerConfig config;
    config.strategy = jammer::Strategy::Scripted;
    config.scripted_channels = {2};
    jammer::SessionConfig session;
    session.active_indices = {0, 1, 2, 3, 4, 5};
    session.victim_index = 0;
    auto trace = jammer::run_session(scheme, session, config);

    const std::string lines = io::trace_to_jsonl(trace);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);
    const auto first = json::parse(lines.substr(0, lines.find('\n')));
    CHECK(first["t"] == 0);
    CHECK(first["search_before"] == 9);
    CHECK(first["search_after"] == 6);

    json summary = io::trace_summary_to_json(trace);
    CHECK(summary["outcome"] == "search_space_at_most_active");
    CHECK(summary["identification_slot"] == 1);

    // Same inputs, byte-identical export.
    auto again = jammer::run_session(scheme, session, config);
    CHECK(io::trace_to_jsonl(again) == lines);
    CHECK(io::to_report_string(io::trace_summary_to_json(again)) ==
          io::to_report_string(summary));
}

TEST_CASE("manifests carry the resolved run configuration") {
    io::RunManifest manifest;
    manifest.subcommand = "analyze";
    manifest.config = {{"scheme", "x.json"}, {"w", 2}};
    manifest.seed = 18446744073709551615ull;
    manifest.timestamp = "2026-08-08T00:00:00Z";
    json doc = io::manifest_to_json(manifest);
    CHECK(doc["seed"] == "18446744073709551615"); // full 64-bit survives as a string
    CHECK(doc["subcommand"] == "analyze");
    CHECK(doc["tool_version"] == io::kToolVersion);
}
