#ifndef FHS_SCHEME_IO_HPP
#define FHS_SCHEME_IO_HPP

#include <string>

#include <json.hpp>

#include "fhs/constructions.hpp"
#include "fhs/core.hpp"
#include "fhs/jammer.hpp"
#include "fhs/metrics.hpp"
#include "fhs/rational.hpp"

namespace fhs::io {

inline constexpr const char* kSchemeFileVersion = "1";
inline constexpr const char* kToolVersion = "fhs 1.0.0";

// Scheme document (schema in docs/report-formats.md). Files whose
// "alphabet_base" is 1 are renumbered to 0-based channels on load, with the
// mapping noted in the label.
nlohmann::json scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const nlohmann::json& doc);
void save_scheme(const Scheme& scheme, const std::string& path);
Scheme load_scheme(const std::string& path);

nlohmann::json latin_to_json(const construct::LatinSquare& square);
construct::LatinSquare latin_from_json(const nlohmann::json& doc);
void save_latin(const construct::LatinSquare& square, const std::string& path);
construct::LatinSquare load_latin(const std::string& path);

// Machine rendering of exact values: {"num": "...", "den": "...",
// "decimal": "..."} with a 6-place decimal. Never a bare float.
nlohmann::json rational_to_json(const Rational& value);

nlohmann::json throughput_report_to_json(const metrics::ThroughputReport& report);
nlohmann::json trace_summary_to_json(const jammer::JammerTrace& trace);
std::string trace_to_jsonl(const jammer::JammerTrace& trace); // one slot record per line

// Reproducibility sidecar emitted next to every report.
struct RunManifest {
    std::string subcommand;
    nlohmann::json config; // fully resolved options
    std::uint64_t seed = 0;
    std::string timestamp; // RFC 3339, UTC
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
std::string current_timestamp_utc();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Canonical serialization used for every machine report: sorted keys,
// 2-space indent, trailing newline. Byte-stable across reruns.
std::string to_report_string(const nlohmann::json& doc);

} // namespace fhs::io

#endif
