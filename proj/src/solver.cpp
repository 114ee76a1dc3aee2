#include "bittp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "bittp/error.hpp"
#include "bittp/knapsack.hpp"
#include "bittp/lea.hpp"
#include "bittp/rng.hpp"
#include "format.hpp"

namespace bittp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

LocalAnnealBackend::LocalAnnealBackend(AnnealParams params, CalibrationParams calibration)
    : params_(params), calibration_(calibration) {
    params_.validate();
    calibration_.validate();
}

SampleSet LocalAnnealBackend::sample(const CqmModel& model, std::uint64_t seed) const {
    AnnealParams p = params_;
    p.seed = seed;
    return solve_cqm(model, p, calibration_);
}

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) {
        throw InvalidArgument("remote backend needs an endpoint");
    }
}

SampleSet RemoteBackend::sample(const CqmModel& model, std::uint64_t) const {
    return remote_sample(model, config_);
}

const char* schedule_mode_name(ScheduleMode mode) noexcept {
    return mode == ScheduleMode::Equal ? "equal" : "random";
}

ProfitBand EpsilonSchedule::band(std::size_t s) const {
    if (s >= segments) {
        throw InvalidArgument("band index " + std::to_string(s) + " out of range");
    }
    return {levels[s], levels[s + 1]};
}

EpsilonSchedule make_schedule(double g_min, double g_max, std::size_t segments, ScheduleMode mode,
                              std::uint64_t seed) {
    if (segments == 0) {
        throw InvalidArgument("the schedule needs at least one segment");
    }
    if (!(g_min <= g_max)) {
        throw InvalidArgument("schedule bounds must satisfy g_min <= g_max");
    }
    EpsilonSchedule s{g_min, g_max, segments, mode, {}};
    const double width = g_max - g_min;
    s.levels.push_back(g_min);
    if (mode == ScheduleMode::Equal) {
        for (std::size_t k = 1; k < segments; ++k) {
            s.levels.push_back(g_min + static_cast<double>(k) * width / static_cast<double>(segments));
        }
    } else {
        std::mt19937_64 rng(derive_seed(seed, 0));
        std::vector<double> u(segments - 1);
        for (auto& v : u) {
            v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
        std::sort(u.begin(), u.end());
        for (auto v : u) {
            s.levels.push_back(g_min + v * width);
        }
    }
    s.levels.push_back(g_max);
    return s;
}

Bounds compute_bounds(const Instance& instance, const SamplerBackend& backend, bool exact, std::uint64_t seed) {
    Bounds out;
    out.exact = exact;
    if (instance.num_items() == 0) {
        return out;
    }
    if (exact) {
        out.g_min = -solve_knapsack(instance).profit;
    } else {
        const auto samples = backend.sample(encode_profit_bound(instance), seed);
        const Sample* best = samples.best_feasible();
        if (best) {
            out.g_min = profit_objective(instance, best->assignment);
        } else {
            out.warnings.push_back("no feasible knapsack sample; using g_min = 0");
        }
    }
    if (out.g_min == out.g_max) {
        out.warnings.push_back("degenerate schedule: g_min equals g_max");
    }
    return out;
}

AuxiliaryWeights update_b(const Instance& instance, std::span<const std::size_t> tour,
                          std::span<const std::uint8_t> picks) {
    const auto weights = cumulative_weights(instance, tour, picks);
    const double cap = instance.capacity();
    if (weights.back() > cap + kFeasibilityTolerance * std::max(1.0, cap)) {
        throw OverweightError("picked weight " + detail::format_number(weights.back()) + " exceeds capacity " +
                              detail::format_number(cap));
    }
    const double vmax = instance.max_speed();
    const double dv = vmax - instance.min_speed();
    AuxiliaryWeights b;
    b.values.reserve(weights.size());
    for (auto w : weights) {
        b.values.push_back(cap * vmax - w * dv);
    }
    return b;
}

AuxiliaryWeights update_b(const Instance& instance, const Solution& solution) {
    return update_b(instance, solution.tour(), solution.picks());
}

BandResult solve_band(const Instance& instance, ProfitBand band, const SamplerBackend& backend,
                      const BandParams& params, std::size_t index) {
    if (params.t_max == 0) {
        throw InvalidArgument("t_max must be positive");
    }
    const auto start = Clock::now();
    BandResult result;
    result.index = index;
    result.band = band;

    auto b = AuxiliaryWeights::ones(instance.num_cities());
    double incumbent_f = std::numeric_limits<double>::infinity();
    std::optional<Solution> previous;

    for (std::size_t t = 1; t <= params.t_max; ++t) {
        const auto iter_start = Clock::now();
        const auto encoded = encode_subproblem(instance, band, b);
        if (encoded.trivially_infeasible) {
            result.stop_reason = "empty band";
            break;
        }
        IterationRecord rec;
        rec.iteration = t;
        rec.b = b.values;

        const auto samples = backend.sample(encoded.model, derive_seed(params.seed, t));
        rec.num_samples = samples.size();
        rec.num_feasible = samples.num_feasible();
        rec.lowered_vars = samples.info.lowered_vars;
        rec.penalty_rounds = samples.info.rounds;

        std::optional<Solution> refined;
        if (const Sample* best = samples.best_feasible()) {
            rec.sample_energy = best->energy;
            const auto sampled = decode(instance, encoded.layout, best->assignment);
            rec.sampled_f = sampled.f();
            rec.sampled_g = sampled.g();
            rec.sampled_weights = sampled.cumulative_weights();
            // The model's band check and the refinement's share one tolerance, so this only guards edge cases.
            if (is_feasible(instance, sampled, band)) {
                refined = params.apply_lea ? lea_refine(instance, sampled, band) : sampled;
                rec.refined_f = refined->f();
                rec.refined_g = refined->g();
                rec.refined_weights = refined->cumulative_weights();
            }
        }
        if (!refined) {
            rec.incumbent_f = incumbent_f;
            rec.seconds = seconds_since(iter_start);
            result.trace.push_back(std::move(rec));
            result.stop_reason = "no feasible sample";
            break;
        }

        const bool improved = refined->f() < incumbent_f;
        if (params.termination == Termination::Literal) {
            rec.accepted = true;
            rec.incumbent_f = previous ? previous->f() : refined->f();
            rec.seconds = seconds_since(iter_start);
            result.trace.push_back(std::move(rec));
            if (improved) {
                result.best = previous ? *previous : *refined;
                result.stop_reason = "improved";
                break;
            }
            previous = *refined;
            b = update_b(instance, *refined);
            continue;
        }

        if (improved) {
            incumbent_f = refined->f();
            result.best = *refined;
            b = update_b(instance, *refined);
        }
        rec.accepted = improved;
        rec.incumbent_f = incumbent_f;
        rec.seconds = seconds_since(iter_start);
        result.trace.push_back(std::move(rec));
        if (!improved) {
            result.stop_reason = "no improvement";
            break;
        }
    }
    if (result.stop_reason.empty()) {
        result.stop_reason = "iteration limit";
    }
    if (!result.best && previous) {
        result.best = previous;
    }
    result.seconds = seconds_since(start);
    return result;
}

void SolveParams::validate() const {
    if (segments == 0) {
        throw InvalidArgument("segments must be positive");
    }
    if (t_max == 0) {
        throw InvalidArgument("t_max must be positive");
    }
    if (concurrency == 0) {
        throw InvalidArgument("concurrency must be positive");
    }
}

SolveReport solve(const Instance& instance, const SamplerBackend& backend, const SolveParams& params) {
    params.validate();
    const auto start = Clock::now();
    SolveReport report;
    report.instance_name = instance.name();
    report.backend = backend.name();
    report.params = params;
    const auto layout = VariableLayout::for_instance(instance);
    report.compact_vars = layout.total_vars();
    report.padded_vars = layout.padded_vars();

    report.bounds = compute_bounds(instance, backend, params.exact_bounds, derive_seed(params.seed, 0));
    report.bounds_seconds = seconds_since(start);
    report.schedule = make_schedule(report.bounds.g_min, report.bounds.g_max, params.segments, params.mode,
                                    derive_seed(params.seed, 1));

    const auto bands_start = Clock::now();
    report.bands.resize(params.segments);
    auto run = [&](std::size_t s) {
        BandParams bp;
        bp.t_max = params.t_max;
        bp.apply_lea = params.apply_lea;
        bp.termination = params.termination;
        bp.seed = derive_seed(params.seed, 1000 + s);
        return solve_band(instance, report.schedule.band(s), backend, bp, s);
    };
    if (params.concurrency <= 1) {
        for (std::size_t s = 0; s < params.segments; ++s) {
            report.bands[s] = run(s);
        }
    } else {
        for (std::size_t first = 0; first < params.segments; first += params.concurrency) {
            std::vector<std::future<BandResult>> batch;
            const std::size_t last = std::min(params.segments, first + params.concurrency);
            for (std::size_t s = first; s < last; ++s) {
                batch.push_back(std::async(std::launch::async, run, s));
            }
            for (std::size_t s = first; s < last; ++s) {
                report.bands[s] = batch[s - first].get();
            }
        }
    }
    report.bands_seconds = seconds_since(bands_start);

    std::vector<ObjectivePoint> candidates;
    for (const auto& band : report.bands) {
        if (band.best) {
            candidates.push_back({band.best->f(), band.best->g(), band.index});
        }
    }
    report.front = filter_nondominated(candidates);
    for (const auto& p : report.front) {
        report.front_solutions.push_back(*report.bands[*p.tag].best);
    }
    report.total_seconds = seconds_since(start);
    return report;
}

nlohmann::json front_document(const SolveReport& report) {
    std::vector<std::vector<ObjectivePoint>> sets{report.front};
    const auto norm = Normalization::over(sets);
    auto doc = front_to_json(report.front, report.front.empty() ? std::nullopt : std::optional(hypervolume(sets, 0)),
                             norm);
    for (std::size_t i = 0; i < report.front.size(); ++i) {
        auto& p = doc["points"][i];
        const auto sol = solution_to_json(report.front_solutions[i]);
        p["band"] = *report.front[i].tag;
        p["tour"] = sol["tour"];
        p["picked"] = sol["picked"];
    }
    doc["instance"] = report.instance_name;
    doc["variables"] = {{"compact", report.compact_vars}, {"padded", report.padded_vars}};
    return doc;
}

nlohmann::json report_to_json(const SolveReport& report) {
    nlohmann::json doc;
    doc["instance"] = report.instance_name;
    doc["backend"] = report.backend;
    doc["config"] = {{"segments", report.params.segments},
                     {"mode", schedule_mode_name(report.params.mode)},
                     {"seed", report.params.seed},
                     {"t_max", report.params.t_max},
                     {"exact_bounds", report.params.exact_bounds},
                     {"lea", report.params.apply_lea},
                     {"termination", report.params.termination == Termination::Literal ? "literal" : "no-improvement"},
                     {"concurrency", report.params.concurrency}};
    doc["bounds"] = {{"g_min", report.bounds.g_min},
                     {"g_max", report.bounds.g_max},
                     {"exact", report.bounds.exact},
                     {"warnings", report.bounds.warnings}};
    doc["schedule"] = {{"mode", schedule_mode_name(report.schedule.mode)}, {"levels", report.schedule.levels}};
    auto bands = nlohmann::json::array();
    for (const auto& band : report.bands) {
        nlohmann::json b;
        b["index"] = band.index;
        b["band"] = {band.band.lo, band.band.hi};
        b["status"] = band.best ? "ok" : "infeasible";
        b["stop_reason"] = band.stop_reason;
        b["iterations"] = band.iterations();
        b["seconds"] = band.seconds;
        b["best"] = band.best ? solution_to_json(*band.best) : nlohmann::json(nullptr);
        auto trace = nlohmann::json::array();
        for (const auto& r : band.trace) {
            trace.push_back({{"iteration", r.iteration},
                             {"b", r.b},
                             {"samples", r.num_samples},
                             {"feasible_samples", r.num_feasible},
                             {"sample_energy", optional_number(r.sample_energy)},
                             {"sampled_f", optional_number(r.sampled_f)},
                             {"sampled_g", optional_number(r.sampled_g)},
                             {"refined_f", optional_number(r.refined_f)},
                             {"refined_g", optional_number(r.refined_g)},
                             {"accepted", r.accepted},
                             {"incumbent_f", std::isfinite(r.incumbent_f) ? nlohmann::json(r.incumbent_f)
                                                                          : nlohmann::json(nullptr)},
                             {"lowered_vars", r.lowered_vars},
                             {"penalty_rounds", r.penalty_rounds},
                             {"seconds", r.seconds}});
        }
        b["trace"] = std::move(trace);
        bands.push_back(std::move(b));
    }
    doc["bands"] = std::move(bands);
    doc["front"] = front_document(report);
    doc["variables"] = {{"compact", report.compact_vars}, {"padded", report.padded_vars}};
    doc["timings"] = {{"bounds_seconds", report.bounds_seconds},
                      {"bands_seconds", report.bands_seconds},
                      {"total_seconds", report.total_seconds}};
    return doc;
}

std::string front_csv(const SolveReport& report) {
    std::ostringstream out;
    out << "band_index,f,g,iterations\n";
    for (const auto& p : report.front) {
        out << *p.tag << ',' << detail::format_number(p.f) << ',' << detail::format_number(p.g) << ','
            << report.bands[*p.tag].iterations() << '\n';
    }
    return out.str();
}

} // namespace bittp
