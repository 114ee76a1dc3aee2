#pragma once

#include <cstddef>
#include <vector>

#include "bittp/instance.hpp"
#include "bittp/model.hpp"

namespace bittp {

/// Picking flags listed in visiting order: items sorted by the tour position of
/// their city, then by item id.
struct FlattenedPlan {
    std::vector<std::size_t> order;
    std::vector<std::uint8_t> flags;

    static FlattenedPlan from(const Instance& instance, const Solution& solution);
    PickingPlan inflate() const;
};

/// Shift picks toward later cities whenever that strictly shortens the travel
/// time and keeps the plan inside capacity and `band`.
Solution lea_shift_later(const Instance& instance, const Solution& solution, ProfitBand band);
/// Drop picks, in flattened order, while the plan stays inside capacity and `band`.
Solution lea_drop(const Instance& instance, const Solution& solution, ProfitBand band);

/// Both phases. The tour is never changed. Throws InfeasibleSolutionError for an infeasible input.
Solution lea_refine(const Instance& instance, const Solution& solution, ProfitBand band);

} // namespace bittp
