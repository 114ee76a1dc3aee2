#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bittp/cqm.hpp"

namespace bittp {

struct AnnealParams {
    std::size_t num_reads = 32;
    std::size_t sweeps = 2000;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::uint64_t seed = 0;
    /// Worker threads for reads; 0 picks the hardware concurrency.
    std::size_t threads = 1;

    /// Throws InvalidArgument unless reads and sweeps are positive and 0 < beta_min < beta_max.
    void validate() const;
};

struct CalibrationParams {
    double initial_multiplier = 2.0;
    double escalation_factor = 10.0;
    /// Total annealing rounds, the first included.
    std::size_t max_rounds = 4;

    void validate() const;
};

/// Single-flip Metropolis annealing with a geometric inverse-temperature schedule.
///
/// Each read starts from a uniformly random state seeded by
/// derive_seed(params.seed, read). The betas are divided by the model's
/// energy scale (largest objective coefficient, or largest penalty coefficient
/// when the objective is flat) so the same defaults fit any coefficient range.
/// Slack bits are reset to their optimum after each read; returned samples
/// hold model variables only, with the energy of the completed assignment.
SampleSet anneal(const LoweredModel& model, const AnnealParams& params);
SampleSet anneal(const QuadraticForm& qubo, std::size_t num_vars, const AnnealParams& params);

/// multiplier * max|objective coef| * vars(c_j) / max|coef(c_j)|^2 for each constraint.
std::vector<double> initial_penalties(const CqmModel& model, const CalibrationParams& calibration);

/// Anneal the lowered model, escalating all penalties while the lowest-energy sample is infeasible.
SampleSet solve_cqm(const CqmModel& model, const AnnealParams& params, const CalibrationParams& calibration = {});

} // namespace bittp
