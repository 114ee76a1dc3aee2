#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bittp/cqm.hpp"
#include "bittp/instance.hpp"
#include "bittp/model.hpp"

namespace bittp {

/// Flat indices of the tour and picking variables.
///
/// x(v, i) = 1 when city v occupies tour position i; z(k) = 1 when item k is
/// picked. Compact layout: N*N tour variables followed by M item variables.
class VariableLayout {
public:
    VariableLayout(std::size_t num_cities, std::size_t num_items, std::size_t max_items_per_city);
    static VariableLayout for_instance(const Instance& instance);

    Var tour_var(std::size_t city, std::size_t position) const;
    Var pick_var(std::size_t item) const;

    std::size_t num_cities() const noexcept { return n_; }
    std::size_t num_items() const noexcept { return m_; }
    std::size_t total_vars() const noexcept { return n_ * n_ + m_; }
    /// N * (N + max items per city): size of a layout padding every city to the same item count.
    std::size_t padded_vars() const noexcept { return n_ * (n_ + max_per_city_); }

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t max_per_city_;
};

/// One positive weight per tour position replacing the speed denominators.
struct AuxiliaryWeights {
    std::vector<double> values;

    static AuxiliaryWeights ones(std::size_t n) { return {std::vector<double>(n, 1.0)}; }
    /// Throws InvalidArgument unless there are `n` finite positive values.
    void validate(std::size_t n) const;
};

struct EncodeOptions {
    /// Multiply item terms by the visiting indicators instead of using z alone.
    bool quadratic_item_forms = false;
};

struct EncodedModel {
    CqmModel model;
    VariableLayout layout;
    /// No assignment can satisfy the band (no items and 0 outside it); the model has no band constraint then.
    bool trivially_infeasible = false;
};

/// sum_i W * sum_{u != v} d(u, v) x(u, i) x(v, i+1) / b_i over the closed tour.
QuadraticForm surrogate_travel_form(const Instance& instance, const VariableLayout& layout, const AuxiliaryWeights& b);
/// Knapsack weight after leaving position i, as a function of (x, z).
QuadraticForm cumulative_weight_form(const Instance& instance, const VariableLayout& layout, std::size_t position);
/// Negated profit; with quadratic forms, each item term is weighted by whether its city is visited.
QuadraticForm profit_form(const Instance& instance, const VariableLayout& layout, bool quadratic = false);
QuadraticForm weight_form(const Instance& instance, const VariableLayout& layout, bool quadratic = false);

/// sum_i W d(tour_i, tour_i+1) / b_i, the travel objective with fixed weights.
double surrogate_travel_time(const Instance& instance, std::span<const std::size_t> tour, const AuxiliaryWeights& b);

/// Band subproblem: minimize the surrogate travel objective subject to the
/// permutation, depot, capacity, band and per-position speed constraints.
///
/// The speed constraint W*vmax - W_i*(vmax - vmin) >= b_i is stored as
/// W_i <= (W*vmax - b_i) / (vmax - vmin) and skipped at positions where the
/// capacity already implies it.
EncodedModel encode_subproblem(const Instance& instance, ProfitBand band, const AuxiliaryWeights& b,
                               EncodeOptions options = {});

/// Knapsack over item variables only: minimize -sum p z subject to sum w z <= W.
CqmModel encode_profit_bound(const Instance& instance);

/// alpha * travel + (1 - alpha) * g without a band.
EncodedModel encode_weighted_sum(const Instance& instance, double alpha, const AuxiliaryWeights& b,
                                 EncodeOptions options = {});

/// Read a solution out of an assignment over the layout. Throws DecodeError
/// naming the position or city whose one-hot structure is broken.
Solution decode(const Instance& instance, const VariableLayout& layout, std::span<const std::uint8_t> assignment);

/// Assignment whose decoding is `solution`.
std::vector<std::uint8_t> encode_assignment(const VariableLayout& layout, const Solution& solution);

} // namespace bittp
