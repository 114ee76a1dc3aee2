#include "bittp/lea.hpp"

#include <algorithm>
#include <cmath>

#include "bittp/error.hpp"

namespace bittp {

namespace {

// Evaluates a picking plan for a fixed tour with the same summation order as
// the model functions, so accepted values agree bit for bit.
class PlanEvaluator {
public:
    PlanEvaluator(const Instance& instance, const Tour& tour)
        : instance_(instance), position_of_(instance.num_cities()), legs_(tour.size()), bucket_(tour.size()) {
        const std::size_t n = tour.size();
        for (std::size_t i = 0; i < n; ++i) {
            position_of_[tour[i]] = i;
            legs_[i] = instance.distance(tour[i], tour[(i + 1) % n]);
        }
    }

    double travel_time(const PickingPlan& picks) {
        std::fill(bucket_.begin(), bucket_.end(), 0.0);
        for (std::size_t k = 0; k < picks.size(); ++k) {
            if (picks[k]) {
                const auto& item = instance_.item(k);
                bucket_[position_of_[item.city]] += item.weight;
            }
        }
        const double cap = instance_.capacity();
        const double vmax = instance_.max_speed();
        const double dv = vmax - instance_.min_speed();
        double acc = 0.0;
        double f = 0.0;
        for (std::size_t i = 0; i < legs_.size(); ++i) {
            acc += bucket_[i];
            f += legs_[i] / (vmax - acc / cap * dv);
        }
        return f;
    }

    std::size_t position_of(std::size_t city) const { return position_of_[city]; }

private:
    const Instance& instance_;
    std::vector<std::size_t> position_of_;
    std::vector<double> legs_;
    std::vector<double> bucket_;
};

std::vector<std::size_t> flattened_order(const Instance& instance, const Tour& tour) {
    std::vector<std::size_t> order;
    order.reserve(instance.num_items());
    for (auto city : tour) {
        for (auto k : instance.items_at(city)) {
            order.push_back(k);
        }
    }
    return order;
}

void require_feasible(const Instance& instance, const Solution& solution, ProfitBand band) {
    if (!is_feasible(instance, solution, band)) {
        throw InfeasibleSolutionError("refinement needs a solution inside capacity and the profit band");
    }
}

} // namespace

FlattenedPlan FlattenedPlan::from(const Instance& instance, const Solution& solution) {
    FlattenedPlan plan;
    plan.order = flattened_order(instance, solution.tour());
    plan.flags.reserve(plan.order.size());
    for (auto k : plan.order) {
        plan.flags.push_back(solution.picks()[k]);
    }
    return plan;
}

PickingPlan FlattenedPlan::inflate() const {
    PickingPlan picks(order.size(), 0);
    for (std::size_t s = 0; s < order.size(); ++s) {
        picks.at(order[s]) = flags[s];
    }
    return picks;
}

Solution lea_shift_later(const Instance& instance, const Solution& solution, ProfitBand band) {
    require_feasible(instance, solution, band);
    const auto order = flattened_order(instance, solution.tour());
    PlanEvaluator eval(instance, solution.tour());
    PickingPlan picks = solution.picks();
    double best = eval.travel_time(picks);
    const std::size_t m = order.size();
    for (std::size_t p = 0; p + 1 < m; ++p) {
        for (std::size_t q = p + 1; q < m; ++q) {
            const auto a = order[p];
            const auto b = order[q];
            if (!picks[a] || picks[b]) {
                continue;
            }
            picks[a] = 0;
            picks[b] = 1;
            if (is_feasible(instance, solution.tour(), picks, band)) {
                const double f = eval.travel_time(picks);
                if (f < best) {
                    best = f;
                    continue;
                }
            }
            picks[a] = 1;
            picks[b] = 0;
        }
    }
    return Solution::evaluate(instance, solution.tour(), std::move(picks));
}

Solution lea_drop(const Instance& instance, const Solution& solution, ProfitBand band) {
    require_feasible(instance, solution, band);
    PickingPlan picks = solution.picks();
    for (auto k : flattened_order(instance, solution.tour())) {
        if (!picks[k]) {
            continue;
        }
        picks[k] = 0;
        if (!is_feasible(instance, solution.tour(), picks, band)) {
            picks[k] = 1;
        }
    }
    return Solution::evaluate(instance, solution.tour(), std::move(picks));
}

Solution lea_refine(const Instance& instance, const Solution& solution, ProfitBand band) {
    return lea_drop(instance, lea_shift_later(instance, solution, band), band);
}

} // namespace bittp
