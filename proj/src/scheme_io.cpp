#include "fhs/scheme_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "fhs/errors.hpp"

namespace fhs::io {

using nlohmann::json;

json scheme_to_json(const Scheme& scheme) {
    scheme.validate();
    json doc;
    doc["version"] = kSchemeFileVersion;
    doc["v"] = scheme.v();
    doc["k"] = scheme.k();
    doc["m"] = scheme.m();
    doc["label"] = scheme.label;
    json rows = json::array();
    for (const auto& seq : scheme.sequences) rows.push_back(seq.values);
    doc["sequences"] = std::move(rows);

    json meta = json::object();
    if (!scheme.metadata.kind.empty()) meta["construction"] = scheme.metadata.kind;
    if (scheme.metadata.mds_v) meta["mds_v"] = *scheme.metadata.mds_v;
    if (scheme.metadata.mds_t_prime) meta["mds_t_prime"] = *scheme.metadata.mds_t_prime;
    if (scheme.metadata.mds_p) meta["mds_p"] = *scheme.metadata.mds_p;
    if (scheme.metadata.distance_certificate)
        meta["distance_certificate"] = *scheme.metadata.distance_certificate;
    if (scheme.metadata.per_slot_keyed) meta["per_slot_keyed"] = true;
    if (scheme.metadata.session) meta["session"] = *scheme.metadata.session;
    if (!meta.empty()) doc["metadata"] = std::move(meta);
    return doc;
}

Scheme scheme_from_json(const json& doc) {
    if (!doc.is_object()) throw validation_error("scheme file: not a JSON object");
    if (doc.value("version", "") != kSchemeFileVersion)
        throw validation_error("scheme file: unsupported version '" + doc.value("version", "") + "'");
    Scheme scheme;
    scheme.library.m = doc.at("m").get<unsigned>();
    scheme.label = doc.value("label", "");
    const unsigned base = doc.value("alphabet_base", 0u);
    if (base > 1) throw validation_error("scheme file: alphabet_base must be 0 or 1");
    for (const auto& row : doc.at("sequences")) {
        FHSequence seq;
        for (const auto& cell : row) {
            const std::int64_t raw = cell.get<std::int64_t>();
            if (raw < base) throw validation_error("scheme file: channel below alphabet base");
            seq.values.push_back(static_cast<Channel>(raw - base));
        }
        scheme.sequences.push_back(std::move(seq));
    }
    if (base == 1) scheme.label += " (channels renumbered 1..m -> 0..m-1)";
    if (doc.contains("metadata")) {
        const auto& meta = doc["metadata"];
        scheme.metadata.kind = meta.value("construction", "");
        if (meta.contains("mds_v")) scheme.metadata.mds_v = meta["mds_v"].get<unsigned>();
        if (meta.contains("mds_t_prime"))
            scheme.metadata.mds_t_prime = meta["mds_t_prime"].get<unsigned>();
        if (meta.contains("mds_p")) scheme.metadata.mds_p = meta["mds_p"].get<std::uint64_t>();
        if (meta.contains("distance_certificate"))
            scheme.metadata.distance_certificate = meta["distance_certificate"].get<unsigned>();
        scheme.metadata.per_slot_keyed = meta.value("per_slot_keyed", false);
        if (meta.contains("session")) scheme.metadata.session = meta["session"].get<std::uint64_t>();
    }
    scheme.validate();
    if (doc.contains("v") && doc["v"].get<std::size_t>() != scheme.v())
        throw validation_error("scheme file: declared v does not match the sequences");
    if (doc.contains("k") && doc["k"].get<std::size_t>() != scheme.k())
        throw validation_error("scheme file: declared k does not match the sequences");
    return scheme;
}

void save_scheme(const Scheme& scheme, const std::string& path) {
    write_text_file(path, to_report_string(scheme_to_json(scheme)));
}

Scheme load_scheme(const std::string& path) {
    try {
        return scheme_from_json(json::parse(read_text_file(path)));
    } catch (const json::exception& err) {
        throw validation_error("scheme file '" + path + "': " + err.what());
    }
}

json latin_to_json(const construct::LatinSquare& square) {
    square.validate();
    json doc;
    doc["version"] = kSchemeFileVersion;
    doc["kind"] = "latin-square";
    doc["order"] = square.order;
    doc["grid"] = square.grid;
    return doc;
}

construct::LatinSquare latin_from_json(const json& doc) {
    if (doc.value("kind", "") != "latin-square")
        throw validation_error("latin square file: kind must be 'latin-square'");
    construct::LatinSquare square;
    square.order = doc.at("order").get<unsigned>();
    for (const auto& row : doc.at("grid")) {
        std::vector<Channel> cells;
        for (const auto& cell : row) cells.push_back(cell.get<Channel>());
        square.grid.push_back(std::move(cells));
    }
    square.validate();
    return square;
}

void save_latin(const construct::LatinSquare& square, const std::string& path) {
    write_text_file(path, to_report_string(latin_to_json(square)));
}

construct::LatinSquare load_latin(const std::string& path) {
    try {
        return latin_from_json(json::parse(read_text_file(path)));
    } catch (const json::exception& err) {
        throw validation_error("latin square file '" + path + "': " + err.what());
    }
}

json rational_to_json(const Rational& value) {
    json doc;
    doc["num"] = value.num().to_string();
    doc["den"] = value.den().to_string();
    doc["decimal"] = value.to_decimal_string(6);
    return doc;
}

namespace {

const char* measure_name(metrics::MeasureKind kind) {
    switch (kind) {
        case metrics::MeasureKind::Throughput: return "throughput";
        case metrics::MeasureKind::AverageOfSequence: return "average_of_sequence";
        case metrics::MeasureKind::AverageOfSubset: return "average_of_subset";
        case metrics::MeasureKind::AverageOfScheme: return "average_of_scheme";
        case metrics::MeasureKind::WorstOfSequence: return "worst_of_sequence";
        case metrics::MeasureKind::WorstOfSubset: return "worst_of_subset";
        case metrics::MeasureKind::WorstOfScheme: return "worst_of_scheme";
    }
    return "unknown";
}

std::string fixed_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9e", value);
    return buffer;
}

} // namespace

json throughput_report_to_json(const metrics::ThroughputReport& report) {
    json doc;
    doc["measure"] = measure_name(report.measure);
    doc["jammer"] = report.jammer_present;
    doc["w"] = report.w;
    doc["mode"] = report.mode == metrics::ComputeMode::Exact ? "exact" : "monte-carlo";
    doc["value"] = rational_to_json(report.value);
    if (report.sample_count) doc["sample_count"] = *report.sample_count;
    if (report.standard_error) doc["standard_error"] = fixed_double(*report.standard_error);
    if (report.min_estimated_from_above) doc["min_estimated_from_above"] = true;
    if (report.witness) {
        json w;
        if (report.witness->sequence) w["sequence"] = *report.witness->sequence;
        w["subset"] = report.witness->subset;
        doc["witness"] = std::move(w);
    }
    return doc;
}

json trace_summary_to_json(const jammer::JammerTrace& trace) {
    json doc;
    switch (trace.outcome) {
        case jammer::Outcome::IdentifiedSequence: doc["outcome"] = "identified_sequence"; break;
        case jammer::Outcome::SearchSpaceAtMostActive:
            doc["outcome"] = "search_space_at_most_active";
            break;
        case jammer::Outcome::SessionEnded: doc["outcome"] = "session_ended"; break;
    }
    if (trace.identification_slot) doc["identification_slot"] = *trace.identification_slot;
    if (trace.lock_target) doc["lock_target"] = *trace.lock_target;
    doc["unlucky_count"] = trace.unlucky_count;
    doc["victim_blocked_slots"] = trace.victim_blocked_slots;
    doc["victim_throughput"] = rational_to_json(trace.victim_throughput);
    doc["final_search_space_size"] = trace.final_search_space.size();
    return doc;
}

std::string trace_to_jsonl(const jammer::JammerTrace& trace) {
    std::string out;
    for (const auto& slot : trace.slots) {
        json line;
        line["t"] = slot.slot;
        line["eavesdrop"] = slot.eavesdropped;
        line["heard_active"] = slot.heard_active;
        line["search_before"] = slot.search_before;
        line["search_after"] = slot.search_after;
        line["jam"] = slot.jammed;
        line["victim_blocked"] = slot.victim_blocked;
        out += line.dump();
        out += '\n';
    }
    return out;
}

json manifest_to_json(const RunManifest& manifest) {
    json doc;
    doc["subcommand"] = manifest.subcommand;
    doc["config"] = manifest.config;
    doc["seed"] = std::to_string(manifest.seed); // string: seeds are full 64-bit
    doc["tool_version"] = kToolVersion;
    doc["timestamp"] = manifest.timestamp;
    return doc;
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw io_error("write failed on '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string to_report_string(const json& doc) {
    return doc.dump(2) + "\n";
}

} // namespace fhs::io
