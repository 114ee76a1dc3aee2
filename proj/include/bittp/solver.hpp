#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bittp/anneal.hpp"
#include "bittp/cqm.hpp"
#include "bittp/encoder.hpp"
#include "bittp/instance.hpp"
#include "bittp/model.hpp"
#include "bittp/pareto.hpp"
#include "bittp/remote.hpp"

namespace bittp {

/// Anything that returns samples for a CQM. Implementations must tolerate concurrent calls.
class SamplerBackend {
public:
    virtual ~SamplerBackend() = default;
    virtual SampleSet sample(const CqmModel& model, std::uint64_t seed) const = 0;
    virtual std::string name() const = 0;
};

class LocalAnnealBackend : public SamplerBackend {
public:
    explicit LocalAnnealBackend(AnnealParams params = {}, CalibrationParams calibration = {});
    SampleSet sample(const CqmModel& model, std::uint64_t seed) const override;
    std::string name() const override { return "local"; }

    const AnnealParams& params() const noexcept { return params_; }

private:
    AnnealParams params_;
    CalibrationParams calibration_;
};

class RemoteBackend : public SamplerBackend {
public:
    explicit RemoteBackend(RemoteConfig config);
    /// The seed is not transmitted; remote samplers pick their own randomness.
    SampleSet sample(const CqmModel& model, std::uint64_t seed) const override;
    std::string name() const override { return "remote"; }

private:
    RemoteConfig config_;
};

enum class ScheduleMode { Equal, Random };

const char* schedule_mode_name(ScheduleMode mode) noexcept;

struct EpsilonSchedule {
    double g_min = 0.0;
    double g_max = 0.0;
    std::size_t segments = 0;
    ScheduleMode mode = ScheduleMode::Equal;
    /// segments + 1 non-decreasing levels from g_min to g_max.
    std::vector<double> levels;

    /// [levels[s], levels[s + 1]]
    ProfitBand band(std::size_t s) const;
};

/// Equal mode: levels[s] = g_min + s * (g_max - g_min) / segments. Random mode:
/// segments - 1 sorted uniform interior points with the endpoints pinned.
EpsilonSchedule make_schedule(double g_min, double g_max, std::size_t segments, ScheduleMode mode,
                              std::uint64_t seed = 0);

struct Bounds {
    double g_min = 0.0;
    double g_max = 0.0;
    bool exact = false;
    std::vector<std::string> warnings;
};

/// g_max = 0. g_min is the best sampled knapsack value or, with `exact`, the
/// dynamic-programming optimum. Without a feasible sample g_min falls back to 0.
Bounds compute_bounds(const Instance& instance, const SamplerBackend& backend, bool exact, std::uint64_t seed = 0);

/// b_i = W * vmax - W_i * (vmax - vmin).
AuxiliaryWeights update_b(const Instance& instance, const Solution& solution);
/// Throws OverweightError when the plan exceeds the capacity.
AuxiliaryWeights update_b(const Instance& instance, std::span<const std::size_t> tour,
                          std::span<const std::uint8_t> picks);

enum class Termination {
    /// Stop once an iterate fails to beat the incumbent; return the best solution seen.
    NoImprovement,
    /// Stop at the first improvement and return the iterate before it.
    Literal,
};

struct BandParams {
    std::size_t t_max = 5;
    bool apply_lea = true;
    Termination termination = Termination::NoImprovement;
    std::uint64_t seed = 0;
};

struct IterationRecord {
    std::size_t iteration = 0;
    /// Weights the subproblem was encoded with.
    std::vector<double> b;
    std::size_t num_samples = 0;
    std::size_t num_feasible = 0;
    std::optional<double> sample_energy;
    std::optional<double> sampled_f;
    std::optional<double> sampled_g;
    /// Cumulative weights of the decoded sample before refinement.
    std::vector<double> sampled_weights;
    std::optional<double> refined_f;
    std::optional<double> refined_g;
    std::vector<double> refined_weights;
    bool accepted = false;
    double incumbent_f = 0.0;
    std::size_t lowered_vars = 0;
    std::size_t penalty_rounds = 0;
    double seconds = 0.0;
};

struct BandResult {
    std::size_t index = 0;
    ProfitBand band;
    /// Empty when no iteration produced a feasible sample.
    std::optional<Solution> best;
    std::vector<IterationRecord> trace;
    std::string stop_reason;
    double seconds = 0.0;

    std::size_t iterations() const noexcept { return trace.size(); }
};

/// Alternate sampling the band subproblem, refining, and re-weighting.
BandResult solve_band(const Instance& instance, ProfitBand band, const SamplerBackend& backend,
                      const BandParams& params, std::size_t index = 0);

struct SolveParams {
    std::size_t segments = 10;
    ScheduleMode mode = ScheduleMode::Equal;
    std::uint64_t seed = 0;
    std::size_t t_max = 5;
    bool exact_bounds = false;
    bool apply_lea = true;
    Termination termination = Termination::NoImprovement;
    /// Bands solved at the same time.
    std::size_t concurrency = 1;

    void validate() const;
};

struct SolveReport {
    std::string instance_name;
    std::string backend;
    SolveParams params;
    Bounds bounds;
    EpsilonSchedule schedule;
    std::vector<BandResult> bands;
    /// Non-dominated band incumbents, ascending f; each tag is the band index.
    std::vector<ObjectivePoint> front;
    std::vector<Solution> front_solutions;
    std::size_t compact_vars = 0;
    std::size_t padded_vars = 0;
    double bounds_seconds = 0.0;
    double bands_seconds = 0.0;
    double total_seconds = 0.0;

    bool infeasible_everywhere() const noexcept { return front.empty(); }
};

SolveReport solve(const Instance& instance, const SamplerBackend& backend, const SolveParams& params);

/// Front document: points with their band and solution, variable counts, hv under self-normalization.
/// Contains no timing data, so equal inputs give identical bytes.
nlohmann::json front_document(const SolveReport& report);
nlohmann::json report_to_json(const SolveReport& report);
/// band_index,f,g,iterations for every front point.
std::string front_csv(const SolveReport& report);

} // namespace bittp
