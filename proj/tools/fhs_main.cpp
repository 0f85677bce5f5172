// Command-line front end: scheme construction, analysis, jammer simulation,
// and the performance-table reproduction. Machine output is JSON with exact
// rationals; every report gets a manifest sidecar sufficient to reproduce
// the run bit-exactly.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhs/combinatorics.hpp"
#include "fhs/constructions.hpp"
#include "fhs/coverfree.hpp"
#include "fhs/errors.hpp"
#include "fhs/jammer.hpp"
#include "fhs/metrics.hpp"
#include "fhs/parallel.hpp"
#include "fhs/scheme_io.hpp"
#include "fhs/table2.hpp"

using nlohmann::json;
using namespace fhs;

namespace {

// Exit code contract: 0 success, 2 validation failure, 3 budget refusal,
// 4 expected-value mismatch, 5 I/O failure, 1 anything else.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRefused = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitIo = 5;

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0: use all cores
    std::uint64_t budget = 1000000;
    std::string out;
};

unsigned resolved_threads(const GlobalOptions& global) {
    return global.threads == 0 ? default_thread_count() : global.threads;
}

metrics::EnumerationPolicy make_policy(const GlobalOptions& global, std::uint64_t samples) {
    metrics::EnumerationPolicy policy;
    policy.budget = global.budget;
    policy.samples = samples;
    policy.seed = global.seed;
    policy.threads = resolved_threads(global);
    return policy;
}

void write_manifest(const std::string& out_path, const std::string& subcommand, json config,
                    std::uint64_t seed) {
    io::RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config = std::move(config);
    manifest.seed = seed;
    manifest.timestamp = io::current_timestamp_utc();
    io::write_text_file(out_path + ".manifest.json", io::to_report_string(io::manifest_to_json(manifest)));
}

std::string read_srls_key(const std::string& key_file) {
    std::string hex;
    if (!key_file.empty()) {
        hex = io::read_text_file(key_file);
    } else if (const char* env = std::getenv("FHS_SRLS_KEY")) {
        hex = env;
    } else {
        throw validation_error("srls: provide the key via FHS_SRLS_KEY or --key-file");
    }
    while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r' || hex.back() == ' '))
        hex.pop_back();
    return hex;
}

json bound_report_to_json(const BoundReport& report) {
    json doc;
    switch (report.name) {
        case BoundName::LempelGreenberger1: doc["bound"] = "lempel-greenberger-1"; break;
        case BoundName::LempelGreenberger2: doc["bound"] = "lempel-greenberger-2"; break;
        case BoundName::PengFan: doc["bound"] = "peng-fan"; break;
    }
    doc["raw_value"] = io::rational_to_json(report.raw_value);
    doc["integer_bound"] = report.integer_bound.to_string();
    json inputs;
    if (report.inputs.v) inputs["v"] = *report.inputs.v;
    if (report.inputs.k) inputs["k"] = *report.inputs.k;
    if (report.inputs.m) inputs["m"] = *report.inputs.m;
    if (report.inputs.r) inputs["r"] = *report.inputs.r;
    if (report.inputs.p) inputs["p"] = *report.inputs.p;
    if (report.inputs.n) inputs["n"] = *report.inputs.n;
    if (report.inputs.i) inputs["i"] = *report.inputs.i;
    if (report.inputs.capital_i) inputs["I"] = *report.inputs.capital_i;
    doc["inputs"] = std::move(inputs);
    if (report.is_met_with_equality) doc["met_with_equality"] = *report.is_met_with_equality;
    return doc;
}

json cfc_certificate_to_json(const coverfree::CfcCertificate& cert) {
    json doc;
    switch (cert.verdict) {
        case coverfree::CfcVerdict::ProvenCfc: doc["verdict"] = "proven-cfc"; break;
        case coverfree::CfcVerdict::ProvenNotCfc: doc["verdict"] = "proven-not-cfc"; break;
        case coverfree::CfcVerdict::SampledNoCounterexample:
            doc["verdict"] = "sampled-no-counterexample";
            break;
    }
    switch (cert.method) {
        case coverfree::CfcMethod::Exhaustive: doc["method"] = "exhaustive"; break;
        case coverfree::CfcMethod::DistanceCertificate: doc["method"] = "distance-certificate"; break;
        case coverfree::CfcMethod::Sampled: doc["method"] = "sampled"; break;
    }
    doc["w"] = cert.parameters.w;
    doc["alpha"] = io::rational_to_json(cert.parameters.alpha);
    if (cert.counterexample) {
        json ce;
        ce["z"] = cert.counterexample->z_index;
        ce["subset"] = cert.counterexample->subset_indices;
        ce["cover_positions"] = cert.counterexample->cover_positions;
        doc["counterexample"] = std::move(ce);
    }
    if (cert.trials) doc["trials"] = *cert.trials;
    if (cert.distance_used) doc["distance_used"] = *cert.distance_used;
    return doc;
}

// --- construct --------------------------------------------------------------

struct ConstructArgs {
    std::string kind;
    unsigned v = 0;
    unsigned t_prime = 1;
    unsigned w = 2;
    std::uint64_t p = 0;
    std::uint64_t session = 0;
    std::string square_file;
    std::string key_file;
};

int cmd_construct(const ConstructArgs& args, const GlobalOptions& global) {
    if (global.out.empty()) throw validation_error("construct: --out is required");
    json config{{"kind", args.kind}, {"v", args.v}};

    if (args.kind == "latin") {
        auto square = construct::cyclic_latin_square(args.v);
        io::save_latin(square, global.out);
        write_manifest(global.out, "construct", config, global.seed);
        return kExitOk;
    }

    Scheme scheme;
    if (args.kind == "mds") {
        scheme = construct::construct_mds_scheme(args.v, args.t_prime, args.p, global.budget);
        config["t_prime"] = args.t_prime;
        config["p"] = args.p;
    } else if (args.kind == "rs-cfc") {
        scheme = construct::construct_rs_cfc(args.v, args.w, args.p, global.budget);
        config["w"] = args.w;
        config["p"] = args.p;
    } else if (args.kind == "srls") {
        construct::LatinSquare square = args.square_file.empty()
                                            ? construct::cyclic_latin_square(args.v)
                                            : io::load_latin(args.square_file);
        auto source =
            construct::SlotKeySource::from_hex_key(read_srls_key(args.key_file), args.session, square.order);
        scheme = construct::generate_srls_scheme(square, source);
        config["session"] = args.session;
        config["square_file"] = args.square_file;
        // The key itself never reaches the manifest.
    } else {
        throw validation_error("construct: unknown kind '" + args.kind + "'");
    }
    io::save_scheme(scheme, global.out);
    write_manifest(global.out, "construct", config, global.seed);
    return kExitOk;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
    std::string scheme_path;
    bool correlation = false;
    bool bounds = false;
    bool throughput = false;
    bool cfc = false;
    bool oa = false;
    bool mitigation = false;
    unsigned w = 1;
    std::string alpha = "1/2";
    std::string cfc_method = "exhaustive";
    unsigned t_prime = 2;
    std::uint64_t lambda = 1;
    std::string mode = "exact";
    std::uint64_t samples = 10000;
    std::optional<std::size_t> x_index;
    std::string jam_file;
    std::string usage_fraction = "1/2";
    std::string csv;
};

std::vector<FHSequence> load_jammers(const std::string& path) {
    try {
        const json doc = json::parse(io::read_text_file(path));
        std::vector<FHSequence> jammers;
        for (const auto& row : doc.at("sequences")) {
            FHSequence seq;
            for (const auto& cell : row) seq.values.push_back(cell.get<Channel>());
            jammers.push_back(std::move(seq));
        }
        return jammers;
    } catch (const json::exception& err) {
        throw validation_error("jammer file '" + path + "': " + err.what());
    }
}

int cmd_analyze(const AnalyzeArgs& args, const GlobalOptions& global) {
    if (global.out.empty()) throw validation_error("analyze: --out is required");
    Scheme scheme = io::load_scheme(args.scheme_path);
    if (args.mode != "exact" && args.mode != "mc")
        throw validation_error("analyze: --mode must be 'exact' or 'mc'");
    const auto mode =
        args.mode == "exact" ? metrics::ComputeMode::Exact : metrics::ComputeMode::MonteCarlo;
    auto policy = make_policy(global, args.samples);

    json report;
    report["schema"] = "fhs-analyze-report/1";
    report["scheme"] = {{"v", scheme.v()}, {"k", scheme.k()}, {"m", scheme.m()}, {"label", scheme.label}};
    report["seed"] = std::to_string(global.seed);
    json analyses = json::object();
    json refusals = json::array();
    bool any_refusal = false;

    auto refuse = [&](const char* analysis, const budget_error& err) {
        refusals.push_back({{"analysis", analysis},
                            {"status", "refused"},
                            {"reason", err.what()},
                            {"required_evaluations", err.required_evaluations},
                            {"budget", err.configured_budget}});
        any_refusal = true;
    };

    if (args.correlation) {
        // k^2 v shift evaluations; refuse rather than stall on huge schemes.
        const std::uint64_t pairs =
            binomial_capped(scheme.k(), 2, global.budget / std::max<std::size_t>(scheme.v(), 1));
        if (pairs * scheme.v() > global.budget) {
            refuse("correlation", budget_error("correlation: k^2 v evaluations exceed the budget",
                                               pairs * scheme.v(), global.budget));
        } else {
            auto summary = correlation_summary(scheme);
            json doc;
            if (summary.autocorrelation_max) {
                doc["h_a"] = *summary.autocorrelation_max;
                doc["h_a_witness"] = {{"sequence", summary.autocorrelation_witness->sequence},
                                      {"tau", summary.autocorrelation_witness->tau}};
            }
            if (summary.crosscorrelation_max) {
                doc["h_c"] = *summary.crosscorrelation_max;
                doc["h_c_witness"] = {{"first", summary.crosscorrelation_witness->first},
                                      {"second", summary.crosscorrelation_witness->second},
                                      {"tau", summary.crosscorrelation_witness->tau}};
            }
            doc["h_m"] = summary.overall_max;
            doc["has_duplicates"] = summary.has_duplicates;
            analyses["correlation"] = std::move(doc);
        }
    }

    if (args.bounds) {
        json doc;
        auto lg1 = lempel_greenberger_bound_1(scheme.v(), scheme.m());
        auto peng_fan = peng_fan_bound(scheme.v(), scheme.k(), scheme.m());
        if (analyses.contains("correlation")) {
            if (analyses["correlation"].contains("h_a"))
                compare_bound(lg1, analyses["correlation"]["h_a"].get<unsigned>());
            compare_bound(peng_fan, analyses["correlation"]["h_m"].get<unsigned>());
        }
        doc["lempel_greenberger_1"] = bound_report_to_json(lg1);
        doc["peng_fan"] = bound_report_to_json(peng_fan);
        // The pairwise bound applies when v = p^n - 1 and m = p^i.
        bool lg2_found = false;
        for (std::uint64_t p = 2; p <= scheme.m() && !lg2_found; ++p) {
            if (!is_prime(p)) continue;
            std::uint64_t power = p, n = 1;
            while (power - 1 < scheme.v()) {
                power *= p;
                ++n;
            }
            if (power - 1 != scheme.v()) continue;
            std::uint64_t mi = p, i = 1;
            while (mi < scheme.m()) {
                mi *= p;
                ++i;
            }
            if (mi == scheme.m() && i <= n) {
                doc["lempel_greenberger_2"] = bound_report_to_json(lempel_greenberger_bound_2(p, n, i));
                lg2_found = true;
            }
        }
        if (!lg2_found) doc["lempel_greenberger_2"] = {{"applicable", false}};
        analyses["bounds"] = std::move(doc);
    }

    if (args.throughput) {
        json doc = json::array();
        try {
            doc.push_back(io::throughput_report_to_json(
                metrics::average_throughput_of_scheme(scheme, args.w, mode, policy)));
            auto worst = metrics::worst_case_throughput_of_scheme(scheme, args.w, mode, policy);
            json worst_doc = io::throughput_report_to_json(worst.report);
            if (worst.distance_lower_bound)
                worst_doc["distance_lower_bound"] = io::rational_to_json(*worst.distance_lower_bound);
            doc.push_back(std::move(worst_doc));
            if (args.x_index) {
                doc.push_back(io::throughput_report_to_json(metrics::average_throughput_of_sequence(
                    scheme, *args.x_index, args.w, mode, policy)));
                doc.push_back(io::throughput_report_to_json(metrics::worst_case_throughput_of_sequence(
                    scheme, *args.x_index, args.w, mode, policy)));
            }
            if (!args.jam_file.empty()) {
                auto jammers = load_jammers(args.jam_file);
                metrics::FamilySelection selection;
                if (args.x_index) selection.x_index = *args.x_index;
                for (const auto& entry :
                     metrics::jammed_measure_family(scheme, args.w, jammers, mode, policy, selection))
                    doc.push_back(io::throughput_report_to_json(entry));
            }
            analyses["throughput"] = std::move(doc);
        } catch (const budget_error& err) {
            refuse("throughput", err);
        }
    }

    if (args.cfc) {
        try {
            const Rational alpha = Rational::from_string(args.alpha);
            coverfree::CfcMethod method;
            if (args.cfc_method == "exhaustive") {
                method = coverfree::CfcMethod::Exhaustive;
            } else if (args.cfc_method == "distance") {
                method = coverfree::CfcMethod::DistanceCertificate;
            } else if (args.cfc_method == "sampled") {
                method = coverfree::CfcMethod::Sampled;
            } else {
                throw validation_error("analyze: --cfc-method must be exhaustive, distance or sampled");
            }
            auto cert = coverfree::is_cover_free(scheme, args.w, alpha, method, policy);
            json doc = cfc_certificate_to_json(cert);
            if (cert.verdict == coverfree::CfcVerdict::ProvenCfc) {
                auto statement = coverfree::cfc_to_fhs_throughput(cert, scheme, policy);
                json st;
                st["guarantee"] = "worst-case w-throughput > alpha";
                if (statement.exact_worst_case)
                    st["exact_worst_case"] = io::rational_to_json(*statement.exact_worst_case);
                if (statement.implication_holds) st["implication_holds"] = *statement.implication_holds;
                doc["statement"] = std::move(st);
            }
            analyses["cfc"] = std::move(doc);
        } catch (const budget_error& err) {
            refuse("cfc", err);
        }
    }

    if (args.oa) {
        auto witness = construct::verify_orthogonal_array(scheme, args.t_prime, args.lambda,
                                                          resolved_threads(global));
        json doc;
        doc["pass"] = witness.pass;
        doc["t_prime"] = witness.strength;
        doc["lambda"] = witness.index_lambda;
        if (witness.failing_columns) doc["failing_columns"] = *witness.failing_columns;
        if (witness.failing_tuple) doc["failing_tuple"] = *witness.failing_tuple;
        if (witness.failing_count) doc["failing_count"] = *witness.failing_count;
        if (witness.note) doc["note"] = *witness.note;
        analyses["oa"] = std::move(doc);
    }

    if (args.mitigation) {
        auto mit = construct::mitigation_report(scheme, Rational::from_string(args.usage_fraction));
        json doc;
        doc["m1_pass"] = mit.m1_pass;
        doc["m2_pass"] = mit.m2_pass;
        if (mit.m2_witness_slot) doc["m2_witness_slot"] = *mit.m2_witness_slot;
        doc["m3_pass"] = mit.m3_pass;
        if (mit.m3_witness)
            doc["m3_witness"] = {{"slot", mit.m3_witness->first}, {"channel", mit.m3_witness->second}};
        doc["m3_vacuous_entries"] = mit.m3_vacuous_entries;
        analyses["mitigation"] = std::move(doc);
    }

    report["analyses"] = std::move(analyses);
    report["refusals"] = std::move(refusals);
    io::write_text_file(global.out, io::to_report_string(report));

    if (!args.csv.empty()) {
        std::string csv = "measure,jammer,w,mode,num,den,decimal\n";
        if (report["analyses"].contains("throughput")) {
            for (const auto& entry : report["analyses"]["throughput"]) {
                csv += entry["measure"].get<std::string>() + "," +
                       (entry["jammer"].get<bool>() ? "yes" : "no") + "," +
                       std::to_string(entry["w"].get<unsigned>()) + "," +
                       entry["mode"].get<std::string>() + "," + entry["value"]["num"].get<std::string>() +
                       "," + entry["value"]["den"].get<std::string>() + "," +
                       entry["value"]["decimal"].get<std::string>() + "\n";
            }
        }
        io::write_text_file(args.csv, csv);
    }

    json config;
    config["scheme"] = args.scheme_path;
    config["mode"] = args.mode;
    config["w"] = args.w;
    config["alpha"] = args.alpha;
    config["samples"] = args.samples;
    config["budget"] = global.budget;
    config["threads"] = resolved_threads(global);
    write_manifest(global.out, "analyze", config, global.seed);
    return any_refusal ? kExitRefused : kExitOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string scheme_path;
    std::uint64_t trials = 1;
    unsigned active_count = 0;
    std::vector<std::size_t> active;
    std::optional<std::size_t> victim;
    std::string strategy = "maxprob";
    std::string tie_break = "lowest";
    Channel fixed_channel = 0;
    std::vector<Channel> scripted;
    unsigned eavesdrop = 1;
    unsigned jam = 1;
};

jammer::JammerConfig make_jammer_config(const SimulateArgs& args, const GlobalOptions& global) {
    jammer::JammerConfig config;
    if (args.strategy == "maxprob") {
        config.strategy = jammer::Strategy::MaxProbability;
    } else if (args.strategy == "uniform") {
        config.strategy = jammer::Strategy::UniformRandom;
    } else if (args.strategy == "fixed") {
        config.strategy = jammer::Strategy::FixedChannel;
        config.fixed_channel = args.fixed_channel;
    } else if (args.strategy == "scripted") {
        config.strategy = jammer::Strategy::Scripted;
        config.scripted_channels = args.scripted;
    } else {
        throw validation_error("simulate: --strategy must be maxprob, uniform, fixed or scripted");
    }
    if (args.tie_break == "lowest") {
        config.tie_break = jammer::TieBreak::LowestChannel;
    } else if (args.tie_break == "random") {
        config.tie_break = jammer::TieBreak::SeededRandom;
    } else {
        throw validation_error("simulate: --tie-break must be lowest or random");
    }
    config.eavesdrop_count = args.eavesdrop;
    config.jam_count = args.jam;
    config.rng_seed = global.seed;
    return config;
}

int cmd_simulate(const SimulateArgs& args, const GlobalOptions& global) {
    if (global.out.empty()) throw validation_error("simulate: --out is required");
    Scheme scheme = io::load_scheme(args.scheme_path);
    auto config = make_jammer_config(args, global);

    json manifest_config;
    manifest_config["scheme"] = args.scheme_path;
    manifest_config["strategy"] = args.strategy;
    manifest_config["tie_break"] = args.tie_break;
    manifest_config["eavesdrop"] = args.eavesdrop;
    manifest_config["jam"] = args.jam;
    manifest_config["trials"] = args.trials;
    manifest_config["threads"] = resolved_threads(global);

    if (!args.active.empty()) {
        // Explicit session: one full trace.
        if (args.trials != 1)
            throw validation_error("simulate: an explicit --active set runs a single session");
        jammer::SessionConfig session;
        session.active_indices = args.active;
        session.victim_index = args.victim.value_or(args.active.front());
        session.rng_seed = global.seed;
        auto trace = jammer::run_session(scheme, session, config);
        json summary = io::trace_summary_to_json(trace);
        summary["schema"] = "fhs-simulate-session/1";
        summary["active"] = session.active_indices;
        summary["victim"] = session.victim_index;
        summary["seed"] = std::to_string(global.seed);
        io::write_text_file(global.out, io::to_report_string(summary));
        io::write_text_file(global.out + ".trace.jsonl", io::trace_to_jsonl(trace));
        manifest_config["active"] = args.active;
        manifest_config["victim"] = session.victim_index;
        write_manifest(global.out, "simulate", manifest_config, global.seed);
        return kExitOk;
    }

    if (args.active_count == 0)
        throw validation_error("simulate: provide --active indices or --active-count");
    auto gamma = jammer::estimate_gamma(scheme, args.active_count - 1, config, args.trials,
                                        global.seed, resolved_threads(global));
    json summary;
    summary["schema"] = "fhs-simulate-summary/1";
    summary["trials"] = gamma.trials;
    summary["identified"] = gamma.identified;
    summary["session_ended"] = gamma.session_ended;
    if (gamma.min_identification_slot) summary["min_identification_slot"] = *gamma.min_identification_slot;
    if (gamma.max_identification_slot) summary["max_identification_slot"] = *gamma.max_identification_slot;
    {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.6f", gamma.mean_identification_slot);
        summary["mean_identification_slot"] = buffer;
    }
    json histogram = json::object();
    for (std::size_t slot = 0; slot < gamma.slot_histogram.size(); ++slot) {
        if (gamma.slot_histogram[slot] > 0) histogram[std::to_string(slot)] = gamma.slot_histogram[slot];
    }
    summary["identification_histogram"] = std::move(histogram);
    summary["seed"] = std::to_string(global.seed);
    io::write_text_file(global.out, io::to_report_string(summary));
    manifest_config["active_count"] = args.active_count;
    write_manifest(global.out, "simulate", manifest_config, global.seed);
    return kExitOk;
}

// --- table2 -----------------------------------------------------------------

int cmd_table2(const GlobalOptions& global, std::uint64_t trials) {
    auto report = coverfree::table2_report(10000, trials, global.seed, resolved_threads(global));
    json doc;
    doc["schema"] = "fhs-table2-report/1";
    json rows = json::array();
    for (const auto& row : report.rows) {
        json entry;
        entry["v"] = row.v;
        entry["m"] = row.m;
        entry["t_prime"] = row.t_prime;
        entry["k"] = row.k.to_string();
        entry["d"] = row.d;
        entry["w"] = row.w;
        if (row.alpha) entry["alpha"] = io::rational_to_json(*row.alpha);
        if (row.gamma_slots) entry["gamma_slots"] = *row.gamma_slots;
        if (!row.diagnostics.empty()) entry["diagnostics"] = row.diagnostics;
        rows.push_back(std::move(entry));
    }
    doc["rows"] = std::move(rows);
    json checks = json::array();
    for (const auto& check : report.spot_checks) {
        json entry;
        entry["row"] = check.row;
        entry["trials"] = check.trials;
        if (check.min_identification_slot) entry["min_identification_slot"] = *check.min_identification_slot;
        entry["meets_gamma_claim"] = check.meets_gamma_claim;
        checks.push_back(std::move(entry));
    }
    doc["simulation_spot_checks"] = std::move(checks);
    json diffs = json::array();
    for (const auto& diff : report.diffs) {
        diffs.push_back({{"row", diff.row},
                         {"field", diff.field},
                         {"expected", diff.expected},
                         {"actual", diff.actual}});
    }
    doc["diffs"] = std::move(diffs);
    doc["all_match"] = report.all_match;

    if (!global.out.empty()) {
        io::write_text_file(global.out, io::to_report_string(doc));
        write_manifest(global.out, "table2", json{{"trials", trials}}, global.seed);
    } else {
        std::cout << io::to_report_string(doc);
    }
    if (!report.all_match) {
        for (const auto& diff : report.diffs)
            std::cerr << "table2 mismatch: row " << diff.row << " " << diff.field << ": expected "
                      << diff.expected << ", got " << diff.actual << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency hopping scheme construction, analysis and jamming simulation"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    GlobalOptions global;
    app.add_option("--seed", global.seed, "master RNG seed (64-bit)");
    app.add_option("--threads", global.threads, "worker threads (0 = all cores)");
    app.add_option("--budget", global.budget, "exact-enumeration budget")->capture_default_str();
    app.add_option("--out", global.out, "output path for the primary report");

    ConstructArgs construct_args;
    auto* construct = app.add_subcommand("construct", "build a scheme or latin square file");
    construct->add_option("kind", construct_args.kind, "mds | rs-cfc | latin | srls")->required();
    construct->add_option("--v", construct_args.v, "sequence length / square order")->required();
    construct->add_option("--tprime", construct_args.t_prime, "polynomial degree bound (mds)");
    construct->add_option("--w", construct_args.w, "interferer count (rs-cfc)");
    construct->add_option("--p", construct_args.p, "prime field order");
    construct->add_option("--session", construct_args.session, "session number (srls)");
    construct->add_option("--square-file", construct_args.square_file, "latin square file (srls)");
    construct->add_option("--key-file", construct_args.key_file, "file holding the 32-hex-char key (srls)");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "compute measures and certificates for a scheme");
    analyze->add_option("--scheme", analyze_args.scheme_path, "scheme file")->required();
    analyze->add_flag("--correlation", analyze_args.correlation, "pairwise Hamming correlation summary");
    analyze->add_flag("--bounds", analyze_args.bounds, "correlation lower bounds");
    analyze->add_flag("--throughput", analyze_args.throughput, "throughput measure family");
    analyze->add_flag("--cfc", analyze_args.cfc, "cover-free certificate");
    analyze->add_flag("--oa", analyze_args.oa, "orthogonal array verification");
    analyze->add_flag("--mitigation", analyze_args.mitigation, "jamming mitigation properties");
    analyze->add_option("--w", analyze_args.w, "group size w");
    analyze->add_option("--alpha", analyze_args.alpha, "cover-free alpha (rational or decimal)");
    analyze->add_option("--cfc-method", analyze_args.cfc_method, "exhaustive | distance | sampled");
    analyze->add_option("--tprime", analyze_args.t_prime, "OA strength");
    analyze->add_option("--lambda", analyze_args.lambda, "OA index");
    analyze->add_option("--mode", analyze_args.mode, "exact | mc");
    analyze->add_option("--samples", analyze_args.samples, "Monte Carlo sample count");
    std::int64_t x_index = -1;
    analyze->add_option("--x", x_index, "sequence index for per-sequence measures");
    analyze->add_option("--jam-file", analyze_args.jam_file, "jammer sequence file for the jammed family");
    analyze->add_option("--usage-fraction", analyze_args.usage_fraction, "active fraction for mitigation");
    analyze->add_option("--csv", analyze_args.csv, "optional CSV flattening of the measures");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "run the adaptive jammer against a scheme");
    simulate->add_option("--scheme", simulate_args.scheme_path, "scheme file")->required();
    simulate->add_option("--trials", simulate_args.trials, "number of seeded sessions");
    simulate->add_option("--active-count", simulate_args.active_count, "w + 1 (active sets drawn per trial)");
    simulate->add_option("--active", simulate_args.active, "explicit active sequence indices");
    std::int64_t victim = -1;
    simulate->add_option("--victim", victim, "victim sequence index");
    simulate->add_option("--strategy", simulate_args.strategy, "maxprob | uniform | fixed | scripted");
    simulate->add_option("--tie-break", simulate_args.tie_break, "lowest | random");
    simulate->add_option("--fixed-channel", simulate_args.fixed_channel, "channel for the fixed strategy");
    simulate->add_option("--scripted", simulate_args.scripted, "eavesdrop channel per slot");
    simulate->add_option("--eavesdrop", simulate_args.eavesdrop, "channels eavesdropped per slot");
    simulate->add_option("--jam", simulate_args.jam, "channels jammed per slot");

    std::uint64_t table2_trials = 200;
    auto* table2 = app.add_subcommand("table2", "reproduce the scheme-family performance table");
    table2->add_option("--trials", table2_trials, "simulation spot-check trials per eligible row");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(construct_args, global);
        if (analyze->parsed()) {
            if (x_index >= 0) analyze_args.x_index = static_cast<std::size_t>(x_index);
            return cmd_analyze(analyze_args, global);
        }
        if (simulate->parsed()) {
            if (victim >= 0) simulate_args.victim = static_cast<std::size_t>(victim);
            return cmd_simulate(simulate_args, global);
        }
        if (table2->parsed()) return cmd_table2(global, table2_trials);
    } catch (const budget_error& err) {
        std::cerr << "refused: " << err.what() << "\n";
        return kExitRefused;
    } catch (const not_applicable_error& err) {
        std::cerr << "not applicable: " << err.what() << "\n";
        return kExitValidation;
    } catch (const validation_error& err) {
        std::cerr << "invalid: " << err.what() << "\n";
        return kExitValidation;
    } catch (const io_error& err) {
        std::cerr << "io error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
