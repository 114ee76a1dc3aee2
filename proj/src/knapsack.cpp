#include "bittp/knapsack.hpp"

#include <cmath>
#include <cstdint>

#include "bittp/error.hpp"

namespace bittp {

namespace {

bool integral(double v) {
    return std::isfinite(v) && v >= 0.0 && std::floor(v) == v;
}

KnapsackSolution by_dynamic_programming(std::span<const double> profits, std::span<const double> weights,
                                        std::size_t capacity) {
    const std::size_t m = profits.size();
    std::vector<double> best(capacity + 1, 0.0);
    std::vector<std::vector<bool>> took(m, std::vector<bool>(capacity + 1, false));
    for (std::size_t k = 0; k < m; ++k) {
        const auto w = static_cast<std::size_t>(weights[k]);
        if (w > capacity) {
            continue;
        }
        for (std::size_t c = capacity; c + 1 > w; --c) {
            const double with = best[c - w] + profits[k];
            if (with > best[c]) {
                best[c] = with;
                took[k][c] = true;
            }
            if (c == 0) {
                break;
            }
        }
    }
    KnapsackSolution out;
    out.picks.assign(m, 0);
    std::size_t c = capacity;
    for (std::size_t k = m; k-- > 0;) {
        if (took[k][c]) {
            out.picks[k] = 1;
            out.profit += profits[k];
            c -= static_cast<std::size_t>(weights[k]);
        }
    }
    return out;
}

KnapsackSolution by_enumeration(std::span<const double> profits, std::span<const double> weights, double capacity) {
    const std::size_t m = profits.size();
    if (m > 30) {
        throw InvalidArgument("exact knapsack with fractional weights is limited to 30 items");
    }
    const double limit = capacity + kFeasibilityTolerance * std::max(1.0, capacity);
    std::uint64_t best_mask = 0;
    double best = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        double w = 0.0;
        double p = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (mask >> k & 1U) {
                w += weights[k];
                p += profits[k];
            }
        }
        if (w <= limit && p > best) {
            best = p;
            best_mask = mask;
        }
    }
    KnapsackSolution out;
    out.profit = best;
    out.picks.assign(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
        out.picks[k] = static_cast<std::uint8_t>(best_mask >> k & 1U);
    }
    return out;
}

} // namespace

KnapsackSolution solve_knapsack(std::span<const double> profits, std::span<const double> weights, double capacity) {
    if (profits.size() != weights.size()) {
        throw InvalidArgument("profits and weights differ in length");
    }
    bool all_integral = integral(capacity) && capacity <= 5e7;
    for (auto w : weights) {
        all_integral = all_integral && integral(w);
    }
    if (all_integral) {
        return by_dynamic_programming(profits, weights, static_cast<std::size_t>(capacity));
    }
    return by_enumeration(profits, weights, capacity);
}

KnapsackSolution solve_knapsack(const Instance& instance) {
    std::vector<double> profits;
    std::vector<double> weights;
    for (const auto& item : instance.items()) {
        profits.push_back(item.profit);
        weights.push_back(item.weight);
    }
    return solve_knapsack(profits, weights, instance.capacity());
}

} // namespace bittp
