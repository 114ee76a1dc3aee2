#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bittp/quadratic.hpp"

namespace bittp {

enum class Sense { Le, Ge, Eq };

const char* sense_symbol(Sense sense) noexcept;

/// `lhs sense rhs` over binary variables.
struct Constraint {
    QuadraticForm lhs;
    Sense sense = Sense::Le;
    double rhs = 0.0;
    std::string label;

    /// Amount by which the constraint is violated, 0 when satisfied.
    double violation(std::span<const std::uint8_t> x) const;
    /// Inclusive check with a relative tolerance of 1e-9 on the bound.
    bool satisfied(std::span<const std::uint8_t> x) const;
};

/// Constrained quadratic model over binary variables.
class CqmModel {
public:
    explicit CqmModel(std::size_t num_vars = 0) : num_vars_(num_vars) {}

    Var add_variable();
    std::size_t num_vars() const noexcept { return num_vars_; }

    /// Canonicalizes and checks variable indices.
    void set_objective(QuadraticForm objective);
    /// Canonicalizes the expression; throws InvalidArgument when it is empty or out of range.
    std::size_t add_constraint(QuadraticForm lhs, Sense sense, double rhs, std::string label);

    const QuadraticForm& objective() const noexcept { return objective_; }
    std::span<const Constraint> constraints() const noexcept { return constraints_; }

    double objective_value(std::span<const std::uint8_t> x) const;
    bool is_feasible(std::span<const std::uint8_t> x) const;
    /// Indices of violated constraints.
    std::vector<std::size_t> violated(std::span<const std::uint8_t> x) const;

private:
    void check_range(const QuadraticForm& form) const;

    std::size_t num_vars_;
    QuadraticForm objective_;
    std::vector<Constraint> constraints_;
};

/// H(s) = sum_i h_i s_i + sum_(i,j) J_ij s_i s_j + offset, spins in {-1, +1}.
struct IsingModel {
    std::vector<double> h;
    std::vector<QuadraticTerm> couplings;
    double offset = 0.0;

    double energy(std::span<const std::int8_t> spins) const;
};

/// Unconstrained QUBO with the same energy under x = (s + 1) / 2.
CqmModel qubo_from_ising(const IsingModel& ising);

/// Binary expansion of an integer slack: value = unit * sum_k 2^k s_k, entering the residual with `sign`.
struct SlackEncoding {
    std::size_t first_var = 0;
    std::size_t bits = 0;
    double unit = 1.0;
    double sign = 1.0;

    double max_value() const noexcept;
};

/// weight * (residual(x) + sign * slack)^2
struct PenaltyTerm {
    double weight = 0.0;
    QuadraticForm residual;
    SlackEncoding slack;
    std::string label;
};

/// Penalized energy of a CQM: objective plus one squared term per constraint.
///
/// Model variables come first, slack variables after them. When every
/// constraint is linear the energy is a genuine QUBO (`to_quadratic`); a
/// quadratic constraint makes its penalty quartic, which the annealer handles
/// directly.
class LoweredModel {
public:
    std::size_t num_model_vars() const noexcept { return num_model_vars_; }
    std::size_t num_vars() const noexcept { return num_vars_; }
    const QuadraticForm& objective() const noexcept { return objective_; }
    std::span<const PenaltyTerm> penalties() const noexcept { return penalties_; }

    /// Energy of a full assignment (model and slack variables).
    double energy(std::span<const std::uint8_t> full) const;
    double penalty(std::span<const std::uint8_t> full) const;
    /// Extend a model assignment with the slack setting minimizing each penalty.
    std::vector<std::uint8_t> complete_slack(std::span<const std::uint8_t> model_assignment) const;
    /// Expanded QUBO; throws InvalidArgument if any constraint is quadratic.
    QuadraticForm to_quadratic() const;

    friend LoweredModel lower_to_qubo(const class CqmModel& model, std::span<const double> penalties);
    friend LoweredModel lower_unconstrained(const QuadraticForm& qubo, std::size_t num_vars);

private:
    std::size_t num_model_vars_ = 0;
    std::size_t num_vars_ = 0;
    QuadraticForm objective_;
    std::vector<PenaltyTerm> penalties_;
};

/// Penalty lowering with one weight per constraint (all > 0).
///
/// Equalities become weight*(lhs - rhs)^2. Inequalities get a binary-expanded
/// slack sized ceil(log2(range + 1)); with integral coefficients the bound is
/// first rounded inward, so any satisfying assignment has a slack setting with
/// zero penalty.
LoweredModel lower_to_qubo(const CqmModel& model, std::span<const double> penalties);
LoweredModel lower_unconstrained(const QuadraticForm& qubo, std::size_t num_vars);

struct Sample {
    std::vector<std::uint8_t> assignment;
    double energy = 0.0;
    double objective = 0.0;
    bool feasible = false;
};

struct SamplerInfo {
    std::string backend;
    std::size_t rounds = 0;
    /// Penalty weights used in each round.
    std::vector<std::vector<double>> penalty_history;
    std::size_t lowered_vars = 0;
    double seconds = 0.0;
};

/// Samples ordered feasible first, then by ascending energy.
class SampleSet {
public:
    SampleSet() = default;
    explicit SampleSet(std::vector<Sample> samples);

    std::span<const Sample> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const Sample& operator[](std::size_t i) const { return samples_.at(i); }

    /// Lowest-energy sample regardless of feasibility, nullptr when empty.
    const Sample* lowest_energy() const noexcept;
    /// Lowest-energy feasible sample, nullptr when there is none.
    const Sample* best_feasible() const noexcept;
    std::size_t num_feasible() const noexcept;

    SamplerInfo info;

private:
    std::vector<Sample> samples_;
};

/// Remote wire representation of a model; constraint offsets are folded into `bound`.
nlohmann::json cqm_to_wire(const CqmModel& model);
CqmModel cqm_from_wire(const nlohmann::json& doc);

} // namespace bittp
