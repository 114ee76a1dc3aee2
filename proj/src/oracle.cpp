#include "bittp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "bittp/error.hpp"

namespace bittp {

ExactFront exact_front(const Instance& instance, std::optional<ProfitBand> band) {
    const std::size_t n = instance.num_cities();
    const std::size_t m = instance.num_items();
    if (n > kOracleMaxCities || m > kOracleMaxItems) {
        throw InvalidArgument("exhaustive front is limited to " + std::to_string(kOracleMaxCities) + " cities and " +
                              std::to_string(kOracleMaxItems) + " items");
    }
    Tour tour(n);
    std::iota(tour.begin(), tour.end(), std::size_t{0});

    // Plans within capacity and band are shared by every tour; keep each one's per-city weight.
    std::vector<PickingPlan> plans;
    std::vector<double> plan_g;
    std::vector<std::vector<double>> city_weight;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        PickingPlan picks(m);
        for (std::size_t k = 0; k < m; ++k) {
            picks[k] = static_cast<std::uint8_t>(mask >> k & 1U);
        }
        if (!is_feasible(instance, tour, picks, band)) {
            continue;
        }
        std::vector<double> weights(n, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            if (picks[k]) {
                weights[instance.item(k).city] += instance.item(k).weight;
            }
        }
        plan_g.push_back(profit_objective(instance, picks));
        city_weight.push_back(std::move(weights));
        plans.push_back(std::move(picks));
    }

    struct Best {
        double f;
        Tour tour;
        std::size_t plan;
    };
    std::map<double, Best> best;
    const double cap = instance.capacity();
    const double vmax = instance.max_speed();
    const double dv = vmax - instance.min_speed();
    std::vector<double> legs(n);
    do {
        for (std::size_t i = 0; i < n; ++i) {
            legs[i] = instance.distance(tour[i], tour[(i + 1) % n]);
        }
        for (std::size_t p = 0; p < plans.size(); ++p) {
            double acc = 0.0;
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += city_weight[p][tour[i]];
                f += legs[i] / (vmax - acc / cap * dv);
            }
            auto it = best.find(plan_g[p]);
            if (it == best.end()) {
                best.emplace(plan_g[p], Best{f, tour, p});
            } else if (f < it->second.f) {
                it->second = Best{f, tour, p};
            }
        }
    } while (n > 1 && std::next_permutation(tour.begin() + 1, tour.end()));

    std::vector<ObjectivePoint> candidates;
    std::vector<const Best*> refs;
    for (const auto& entry : best) {
        candidates.push_back({entry.second.f, entry.first, refs.size()});
        refs.push_back(&entry.second);
    }
    ExactFront out;
    out.points = filter_nondominated(candidates);
    for (auto& point : out.points) {
        const Best& b = *refs[*point.tag];
        out.solutions.push_back(Solution::evaluate(instance, b.tour, plans[b.plan]));
        point.tag.reset();
    }
    return out;
}

} // namespace bittp
