#include "bittp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bittp/error.hpp"
#include "format.hpp"

namespace bittp {

namespace {

double tolerance_for(double bound) {
    return kFeasibilityTolerance * std::max(1.0, std::abs(bound));
}

void check_shapes(const Instance& instance, std::span<const std::size_t> tour, std::span<const std::uint8_t> picks) {
    if (!is_valid_tour(instance.num_cities(), tour)) {
        throw InvalidArgument("tour must be a permutation of all cities starting at the depot");
    }
    if (picks.size() != instance.num_items()) {
        throw InvalidArgument("picking plan has " + std::to_string(picks.size()) + " flags for " +
                              std::to_string(instance.num_items()) + " items");
    }
}

double picked_weight_at(const Instance& instance, std::size_t city, std::span<const std::uint8_t> picks) {
    double w = 0.0;
    for (auto k : instance.items_at(city)) {
        if (picks[k]) {
            w += instance.item(k).weight;
        }
    }
    return w;
}

} // namespace

bool ProfitBand::contains(double g) const noexcept {
    return g >= lo - tolerance_for(lo) && g <= hi + tolerance_for(hi);
}

bool is_valid_tour(std::size_t num_cities, std::span<const std::size_t> tour) noexcept {
    if (tour.size() != num_cities || num_cities == 0 || tour.front() != 0) {
        return false;
    }
    std::vector<bool> seen(num_cities, false);
    for (auto c : tour) {
        if (c >= num_cities || seen[c]) {
            return false;
        }
        seen[c] = true;
    }
    return true;
}

std::vector<double> cumulative_weights(const Instance& instance, std::span<const std::size_t> tour,
                                       std::span<const std::uint8_t> picks) {
    check_shapes(instance, tour, picks);
    std::vector<double> weights(tour.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < tour.size(); ++i) {
        acc += picked_weight_at(instance, tour[i], picks);
        weights[i] = acc;
    }
    return weights;
}

double travel_time(const Instance& instance, std::span<const std::size_t> tour, std::span<const std::uint8_t> picks) {
    const auto weights = cumulative_weights(instance, tour, picks);
    const double cap = instance.capacity();
    if (weights.back() > cap + tolerance_for(cap)) {
        throw OverweightError("picked weight " + detail::format_number(weights.back()) + " exceeds capacity " +
                              detail::format_number(cap));
    }
    const double vmax = instance.max_speed();
    const double dv = vmax - instance.min_speed();
    const std::size_t n = tour.size();
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = instance.distance(tour[i], tour[(i + 1) % n]);
        f += d / (vmax - weights[i] / cap * dv);
    }
    return f;
}

double profit_objective(const Instance& instance, std::span<const std::uint8_t> picks) {
    if (picks.size() != instance.num_items()) {
        throw InvalidArgument("picking plan size does not match the item count");
    }
    double g = 0.0;
    for (std::size_t k = 0; k < picks.size(); ++k) {
        if (picks[k]) {
            g -= instance.item(k).profit;
        }
    }
    return g;
}

bool is_feasible(const Instance& instance, std::span<const std::size_t> tour, std::span<const std::uint8_t> picks,
                 std::optional<ProfitBand> band) {
    if (!is_valid_tour(instance.num_cities(), tour) || picks.size() != instance.num_items()) {
        return false;
    }
    double weight = 0.0;
    for (std::size_t k = 0; k < picks.size(); ++k) {
        if (picks[k]) {
            weight += instance.item(k).weight;
        }
    }
    if (weight > instance.capacity() + tolerance_for(instance.capacity())) {
        return false;
    }
    return !band || band->contains(profit_objective(instance, picks));
}

Solution Solution::evaluate(const Instance& instance, Tour tour, PickingPlan picks) {
    Solution s;
    s.f_ = travel_time(instance, tour, picks);
    s.g_ = profit_objective(instance, picks);
    s.weights_ = bittp::cumulative_weights(instance, tour, picks);
    s.tour_ = std::move(tour);
    s.picks_ = std::move(picks);
    return s;
}

std::vector<std::size_t> Solution::picked_items() const {
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < picks_.size(); ++k) {
        if (picks_[k]) {
            ids.push_back(k);
        }
    }
    return ids;
}

bool is_feasible(const Instance& instance, const Solution& solution, std::optional<ProfitBand> band) {
    return is_feasible(instance, solution.tour(), solution.picks(), band);
}

nlohmann::json solution_to_json(const Solution& solution) {
    nlohmann::json doc;
    auto tour = nlohmann::json::array();
    for (auto c : solution.tour()) {
        tour.push_back(c + 1);
    }
    doc["tour"] = std::move(tour);
    doc["picked"] = solution.picked_items();
    doc["f"] = solution.f();
    doc["g"] = solution.g();
    return doc;
}

Solution solution_from_json(const Instance& instance, const nlohmann::json& doc) {
    try {
        Tour tour;
        for (const auto& c : doc.at("tour")) {
            const auto id = c.get<long long>();
            if (id < 1) {
                throw ParseError("tour city ids are 1-based", 0);
            }
            tour.push_back(static_cast<std::size_t>(id - 1));
        }
        PickingPlan picks(instance.num_items(), 0);
        for (const auto& k : doc.at("picked")) {
            const auto id = k.get<long long>();
            if (id < 0 || static_cast<std::size_t>(id) >= picks.size()) {
                throw ParseError("picked item id " + std::to_string(id) + " out of range", 0);
            }
            picks[static_cast<std::size_t>(id)] = 1;
        }
        return Solution::evaluate(instance, std::move(tour), std::move(picks));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid solution document: ") + e.what(), 0);
    }
}

} // namespace bittp
