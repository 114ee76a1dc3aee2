#pragma once

#include <span>
#include <vector>

#include "bittp/instance.hpp"
#include "bittp/model.hpp"

namespace bittp {

struct KnapsackSolution {
    double profit = 0.0;
    PickingPlan picks;
};

/// Exact 0/1 knapsack. Integral weights and capacity use dynamic programming
/// over capacities; anything else falls back to enumeration, limited to 30 items.
KnapsackSolution solve_knapsack(std::span<const double> profits, std::span<const double> weights, double capacity);
KnapsackSolution solve_knapsack(const Instance& instance);

} // namespace bittp
