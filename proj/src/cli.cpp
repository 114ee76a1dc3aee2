#include "bittp/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bittp/error.hpp"
#include "bittp/oracle.hpp"
#include "bittp/solver.hpp"
#include "format.hpp"

namespace bittp {

namespace {

namespace fs = std::filesystem;

/// Problems with flags or the config document.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct SolveOptions {
    std::string instance;
    std::string config;
    std::string out;
    std::string report;
    std::string format = "json";
    std::optional<std::size_t> segments;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> t_max;
    std::optional<std::string> backend;
    std::optional<std::string> endpoint;
    std::optional<long long> timeout_ms;
    std::optional<std::size_t> sweeps;
    std::optional<std::size_t> reads;
    std::optional<std::size_t> concurrency;
    std::optional<std::size_t> threads;
    bool exact_bounds = false;
    bool no_lea = false;
    bool literal = false;
    bool verbose = false;
};

Instance load_or_parse_error(const std::string& path) {
    try {
        return load_instance(path);
    } catch (const InvalidArgument& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

nlohmann::json read_json(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(std::string("cannot open ") + what + " '" + path + "'", 0);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

ScheduleMode parse_mode(const std::string& s) {
    if (s == "equal") {
        return ScheduleMode::Equal;
    }
    if (s == "random") {
        return ScheduleMode::Random;
    }
    throw ConfigError("mode must be 'equal' or 'random', got '" + s + "'");
}

template <typename T>
void take(const nlohmann::json& doc, const char* key, T& target) {
    if (doc.contains(key)) {
        try {
            target = doc.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(std::string("config key '") + key + "' has the wrong type");
        }
    }
}

struct ResolvedConfig {
    SolveParams params;
    std::string backend = "local";
    AnnealParams anneal;
    RemoteConfig remote;
};

// Config document first, then flags on top.
ResolvedConfig resolve(const SolveOptions& opt) {
    ResolvedConfig cfg;
    if (!opt.config.empty()) {
        nlohmann::json doc;
        try {
            doc = read_json(opt.config, "config file");
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
        if (!doc.is_object()) {
            throw ConfigError("config document must be a JSON object");
        }
        static const std::vector<std::string> known = {"S", "segments", "mode", "seed", "T_max", "t_max",
                                                       "backend", "exact_bounds", "lea", "concurrency"};
        for (const auto& [key, value] : doc.items()) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
        take(doc, "S", cfg.params.segments);
        take(doc, "segments", cfg.params.segments);
        take(doc, "seed", cfg.params.seed);
        take(doc, "T_max", cfg.params.t_max);
        take(doc, "t_max", cfg.params.t_max);
        take(doc, "exact_bounds", cfg.params.exact_bounds);
        take(doc, "lea", cfg.params.apply_lea);
        take(doc, "concurrency", cfg.params.concurrency);
        if (doc.contains("mode")) {
            std::string mode;
            take(doc, "mode", mode);
            cfg.params.mode = parse_mode(mode);
        }
        if (doc.contains("backend")) {
            const auto& b = doc["backend"];
            if (!b.is_object()) {
                throw ConfigError("config 'backend' must be an object");
            }
            take(b, "kind", cfg.backend);
            take(b, "reads", cfg.anneal.num_reads);
            take(b, "sweeps", cfg.anneal.sweeps);
            take(b, "beta_min", cfg.anneal.beta_min);
            take(b, "beta_max", cfg.anneal.beta_max);
            take(b, "threads", cfg.anneal.threads);
            take(b, "endpoint", cfg.remote.endpoint);
            long long timeout = cfg.remote.timeout.count();
            take(b, "timeout_ms", timeout);
            cfg.remote.timeout = std::chrono::milliseconds(timeout);
        }
    }
    if (opt.segments) {
        cfg.params.segments = *opt.segments;
    }
    if (opt.mode) {
        cfg.params.mode = parse_mode(*opt.mode);
    }
    if (opt.seed) {
        cfg.params.seed = *opt.seed;
    }
    if (opt.t_max) {
        cfg.params.t_max = *opt.t_max;
    }
    if (opt.concurrency) {
        cfg.params.concurrency = *opt.concurrency;
    }
    if (opt.exact_bounds) {
        cfg.params.exact_bounds = true;
    }
    if (opt.no_lea) {
        cfg.params.apply_lea = false;
    }
    if (opt.literal) {
        cfg.params.termination = Termination::Literal;
    }
    if (opt.backend) {
        cfg.backend = *opt.backend;
    }
    if (opt.endpoint) {
        cfg.remote.endpoint = *opt.endpoint;
    }
    if (opt.timeout_ms) {
        cfg.remote.timeout = std::chrono::milliseconds(*opt.timeout_ms);
    }
    if (opt.sweeps) {
        cfg.anneal.sweeps = *opt.sweeps;
    }
    if (opt.reads) {
        cfg.anneal.num_reads = *opt.reads;
    }
    if (opt.threads) {
        cfg.anneal.threads = *opt.threads;
    }
    if (cfg.backend != "local" && cfg.backend != "remote") {
        throw ConfigError("backend must be 'local' or 'remote', got '" + cfg.backend + "'");
    }
    if (cfg.backend == "remote" && cfg.remote.endpoint.empty()) {
        throw ConfigError("the remote backend needs --endpoint");
    }
    if (cfg.remote.timeout.count() <= 0) {
        throw ConfigError("timeout must be positive");
    }
    try {
        cfg.params.validate();
        cfg.anneal.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.format != "json" && opt.format != "csv") {
        throw ConfigError("format must be 'json' or 'csv'");
    }
    const auto cfg = resolve(opt);
    const auto instance = load_or_parse_error(opt.instance);
    for (const auto& w : instance.warnings()) {
        err << "warning: " << w << '\n';
    }

    std::unique_ptr<SamplerBackend> backend;
    if (cfg.backend == "local") {
        backend = std::make_unique<LocalAnnealBackend>(cfg.anneal);
    } else {
        backend = std::make_unique<RemoteBackend>(cfg.remote);
    }
    const auto report = solve(instance, *backend, cfg.params);
    for (const auto& w : report.bounds.warnings) {
        err << "warning: " << w << '\n';
    }
    if (opt.verbose) {
        for (const auto& band : report.bands) {
            err << "band " << band.index << " [" << detail::format_number(band.band.lo) << ", "
                << detail::format_number(band.band.hi) << "]: " << (band.best ? "ok" : "infeasible") << ", "
                << band.iterations() << " iterations, " << band.stop_reason << '\n';
        }
    }

    const std::string front_text =
        opt.format == "csv" ? front_csv(report) : front_document(report).dump(2) + "\n";
    auto report_doc = report_to_json(report);
    report_doc["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                                  std::chrono::system_clock::now().time_since_epoch())
                                  .count();
    if (opt.out.empty()) {
        out << front_text;
    } else {
        write_file(opt.out, front_text);
    }
    // Without --report the report lands next to the front file.
    std::string report_path = opt.report;
    if (report_path.empty() && !opt.out.empty()) {
        report_path = fs::path(opt.out).replace_extension("").string() + ".report.json";
    }
    if (!report_path.empty()) {
        write_file(report_path, report_doc.dump(2) + "\n");
    }
    err << report.front.size() << " non-dominated points, padded variable count " << report.padded_vars << ", "
        << detail::format_number(report.total_seconds) << " s\n";
    if (report.infeasible_everywhere()) {
        err << "error: no band produced a feasible solution\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths, std::optional<std::size_t> target, std::ostream& out) {
    std::vector<std::vector<ObjectivePoint>> sets;
    for (const auto& path : paths) {
        const auto doc = read_json(path, "front file");
        try {
            sets.push_back(front_from_json(doc));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what(), 0);
        }
    }
    if (target && *target >= sets.size()) {
        throw ConfigError("target index out of range");
    }
    const auto norm = Normalization::over(sets);
    out << "# normalization f [" << detail::format_number(norm.f_min) << ", " << detail::format_number(norm.f_max)
        << "] g [" << detail::format_number(norm.g_min) << ", " << detail::format_number(norm.g_max) << "]\n";
    out << "front\tpoints\thv\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (target && *target != i) {
            continue;
        }
        out << paths[i] << '\t' << sets[i].size() << '\t' << detail::format_number(hypervolume(sets, i)) << '\n';
    }
    return kExitOk;
}

int cmd_oracle(const std::string& path, const std::vector<double>& band, const std::string& out_path,
               std::ostream& out) {
    const auto instance = load_or_parse_error(path);
    std::optional<ProfitBand> b;
    if (!band.empty()) {
        if (band.size() != 2 || band[0] > band[1]) {
            throw ConfigError("--band takes two values lo <= hi");
        }
        b = ProfitBand{band[0], band[1]};
    }
    ExactFront front;
    try {
        front = exact_front(instance, b);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    auto doc = front_to_json(front.points);
    for (std::size_t i = 0; i < front.points.size(); ++i) {
        const auto sol = solution_to_json(front.solutions[i]);
        doc["points"][i]["tour"] = sol["tour"];
        doc["points"][i]["picked"] = sol["picked"];
    }
    doc["instance"] = instance.name();
    const auto text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, text);
    }
    return front.points.empty() ? kExitInfeasible : kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    const auto instance = load_or_parse_error(path);
    const auto layout = VariableLayout::for_instance(instance);
    out << "name: " << instance.name() << '\n'
        << "cities: " << instance.num_cities() << '\n'
        << "items: " << instance.num_items() << '\n'
        << "capacity: " << detail::format_number(instance.capacity()) << '\n'
        << "speed: [" << detail::format_number(instance.min_speed()) << ", "
        << detail::format_number(instance.max_speed()) << "]\n"
        << "max items per city: " << instance.max_items_per_city() << '\n'
        << "variables: " << layout.total_vars() << " compact, " << layout.padded_vars() << " padded\n";
    for (const auto& w : instance.warnings()) {
        err << "warning: " << w << '\n';
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bi-objective traveling thief solver"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    auto* solve_cmd = app.add_subcommand("solve", "Approximate the Pareto front of an instance");
    solve_cmd->add_option("--instance", solve_opt.instance, "Instance file (.ttp or .json)")->required();
    solve_cmd->add_option("--config", solve_opt.config, "JSON config document; flags override it");
    solve_cmd->add_option("--segments", solve_opt.segments, "Number of profit bands");
    solve_cmd->add_option("--mode", solve_opt.mode, "Band boundaries: equal or random");
    solve_cmd->add_option("--seed", solve_opt.seed, "Master seed");
    solve_cmd->add_option("--tmax", solve_opt.t_max, "Iteration cap per band");
    solve_cmd->add_option("--backend", solve_opt.backend, "local or remote");
    solve_cmd->add_option("--endpoint", solve_opt.endpoint, "Remote sampler URL");
    solve_cmd->add_option("--timeout-ms", solve_opt.timeout_ms, "Remote request timeout");
    solve_cmd->add_option("--sweeps", solve_opt.sweeps, "Annealing sweeps per read");
    solve_cmd->add_option("--reads", solve_opt.reads, "Annealing reads per call");
    solve_cmd->add_option("--threads", solve_opt.threads, "Threads for annealing reads (0 = all cores)");
    solve_cmd->add_option("--concurrency", solve_opt.concurrency, "Bands solved at once");
    solve_cmd->add_flag("--exact-bounds", solve_opt.exact_bounds, "Exact knapsack bound for g_min");
    solve_cmd->add_flag("--no-lea", solve_opt.no_lea, "Skip the refinement heuristic");
    solve_cmd->add_flag("--literal-termination", solve_opt.literal,
                        "Stop at the first improvement and return the iterate before it");
    solve_cmd->add_option("--out", solve_opt.out, "Front output path (stdout when omitted)");
    solve_cmd->add_option("--report", solve_opt.report, "Report output path");
    solve_cmd->add_option("--format", solve_opt.format, "Front format: json or csv");
    solve_cmd->add_flag("--verbose,-v", solve_opt.verbose, "Per-band progress on stderr");

    std::vector<std::string> fronts;
    std::optional<std::size_t> target;
    auto* compare_cmd = app.add_subcommand("compare", "Hypervolume of fronts under shared normalization");
    compare_cmd->add_option("fronts", fronts, "Front JSON files")->required();
    compare_cmd->add_option("--target", target, "Only report this front (0-based)");

    std::string oracle_instance;
    std::vector<double> oracle_band;
    std::string oracle_out;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact front of a tiny instance by enumeration");
    oracle_cmd->add_option("--instance", oracle_instance, "Instance file")->required();
    oracle_cmd->add_option("--band", oracle_band, "Restrict g to [lo, hi]")->expected(2)->allow_extra_args(false);
    oracle_cmd->add_option("--out", oracle_out, "Output path (stdout when omitted)");

    std::string validate_instance;
    auto* validate_cmd = app.add_subcommand("validate", "Parse an instance and print its header");
    validate_cmd->add_option("--instance", validate_instance, "Instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(solve_opt, out, err);
        }
        if (*compare_cmd) {
            return cmd_compare(fronts, target, out);
        }
        if (*oracle_cmd) {
            return cmd_oracle(oracle_instance, oracle_band, oracle_out, out);
        }
        if (*validate_cmd) {
            return cmd_validate(validate_instance, out, err);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

} // namespace bittp
