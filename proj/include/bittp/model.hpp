#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "bittp/instance.hpp"

namespace bittp {

/// Visiting order, 0-based city ids, starting at the depot (city 0).
using Tour = std::vector<std::size_t>;
/// One flag per item, indexed by item id.
using PickingPlan = std::vector<std::uint8_t>;

/// Relative slack used for every inclusive bound comparison (capacity, profit band).
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Closed interval [lo, hi] on the negated-profit objective g.
struct ProfitBand {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double g) const noexcept;
};

bool is_valid_tour(std::size_t num_cities, std::span<const std::size_t> tour) noexcept;

/// Knapsack weight after leaving each tour position; non-decreasing.
std::vector<double> cumulative_weights(const Instance& instance, std::span<const std::size_t> tour,
                                       std::span<const std::uint8_t> picks);

/// Total travel time of the closed tour. Throws OverweightError when the plan exceeds the capacity.
double travel_time(const Instance& instance, std::span<const std::size_t> tour, std::span<const std::uint8_t> picks);

/// Negated collected profit, always <= 0.
double profit_objective(const Instance& instance, std::span<const std::uint8_t> picks);

/// Depot-anchored permutation, capacity respected, and g inside `band` when given.
bool is_feasible(const Instance& instance, std::span<const std::size_t> tour, std::span<const std::uint8_t> picks,
                 std::optional<ProfitBand> band = std::nullopt);

/// Tour plus picking plan with eagerly computed objectives.
///
/// Construct through `evaluate`; there is no way to mutate a Solution in place,
/// so the cached values always match a from-scratch evaluation.
class Solution {
public:
    /// Throws InvalidArgument for a malformed tour or plan and OverweightError for an overweight plan.
    static Solution evaluate(const Instance& instance, Tour tour, PickingPlan picks);

    const Tour& tour() const noexcept { return tour_; }
    const PickingPlan& picks() const noexcept { return picks_; }
    double f() const noexcept { return f_; }
    double g() const noexcept { return g_; }
    const std::vector<double>& cumulative_weights() const noexcept { return weights_; }
    double total_weight() const noexcept { return weights_.empty() ? 0.0 : weights_.back(); }
    std::vector<std::size_t> picked_items() const;

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.tour_ == b.tour_ && a.picks_ == b.picks_;
    }

private:
    Solution() = default;

    Tour tour_;
    PickingPlan picks_;
    double f_ = 0.0;
    double g_ = 0.0;
    std::vector<double> weights_;
};

bool is_feasible(const Instance& instance, const Solution& solution, std::optional<ProfitBand> band = std::nullopt);

/// {tour: [1-based city ids], picked: [0-based item ids], f, g}
nlohmann::json solution_to_json(const Solution& solution);
Solution solution_from_json(const Instance& instance, const nlohmann::json& doc);

} // namespace bittp
