#pragma once

#include <optional>
#include <vector>

#include "bittp/instance.hpp"
#include "bittp/model.hpp"
#include "bittp/pareto.hpp"

namespace bittp {

inline constexpr std::size_t kOracleMaxCities = 8;
inline constexpr std::size_t kOracleMaxItems = 12;

struct ExactFront {
    /// Sorted by ascending f; `solutions[i]` attains `points[i]`.
    std::vector<ObjectivePoint> points;
    std::vector<Solution> solutions;
};

/// Exhaustive enumeration of every depot-anchored tour and picking plan within capacity (and `band`).
/// Throws InvalidArgument beyond kOracleMaxCities cities or kOracleMaxItems items.
ExactFront exact_front(const Instance& instance, std::optional<ProfitBand> band = std::nullopt);

} // namespace bittp
