#include <doctest.h>

#include <random>

#include "bittp/error.hpp"
#include "bittp/model.hpp"
#include "support/oracles.hpp"

using namespace bittp;

TEST_CASE("triangle travel times") {
    const auto empty = oracle::triangle();
    CHECK(travel_time(empty, Tour{0, 1, 2}, PickingPlan{}) == 15.0);

    const auto inst = oracle::triangle({{10, 10, 1}});
    const double f = travel_time(inst, Tour{0, 1, 2}, PickingPlan{1});
    CHECK(f == doctest::Approx(5.0 / 1.0 + 5.0 / 0.1 + 5.0 / 0.1).epsilon(1e-12));
    CHECK(f == doctest::Approx(oracle::travel_time(inst, {0, 1, 2}, {1})).epsilon(1e-12));
    CHECK(cumulative_weights(inst, Tour{0, 1, 2}, PickingPlan{1}) == std::vector<double>{0, 10, 10});
}

TEST_CASE("overweight plans are rejected") {
    const auto inst = oracle::triangle({{10, 6, 1}, {10, 6, 2}});
    CHECK_THROWS_AS(travel_time(inst, Tour{0, 1, 2}, PickingPlan{1, 1}), OverweightError);
    CHECK_THROWS_AS(Solution::evaluate(inst, {0, 1, 2}, {1, 1}), OverweightError);
    CHECK_FALSE(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{1, 1}));
}

TEST_CASE("capacity and band bounds are inclusive") {
    const auto inst = oracle::triangle({{50, 10, 1}});
    CHECK(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{1}));
    CHECK(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{1}, ProfitBand{-60, -40}));
    CHECK_FALSE(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{1}, ProfitBand{-40, -20}));
    CHECK(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{1}, ProfitBand{-50, -50}));
    CHECK(is_feasible(inst, Tour{0, 1, 2}, PickingPlan{0}));
}

TEST_CASE("profit objective") {
    const auto inst = oracle::triangle({{10, 1, 1}, {7, 1, 2}});
    CHECK(profit_objective(inst, PickingPlan{0, 0}) == 0.0);
    CHECK(profit_objective(inst, PickingPlan{1, 1}) == -17.0);
}

TEST_CASE("malformed tours") {
    const auto inst = oracle::triangle();
    CHECK_FALSE(is_valid_tour(3, Tour{1, 0, 2}));
    CHECK_FALSE(is_valid_tour(3, Tour{0, 1, 1}));
    CHECK_FALSE(is_valid_tour(3, Tour{0, 1}));
    CHECK_THROWS_AS(Solution::evaluate(inst, {0, 2, 2}, {}), InvalidArgument);
}

TEST_CASE("random solutions agree with straight-line evaluation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_instance(rng, 5, 4);
        Tour tour{0, 1, 2, 3, 4};
        std::shuffle(tour.begin() + 1, tour.end(), rng);
        PickingPlan picks(4);
        for (auto& z : picks) {
            z = rng() & 1U;
        }
        if (oracle::weight(inst, picks) > inst.capacity()) {
            continue;
        }
        const auto s = Solution::evaluate(inst, tour, picks);
        CHECK(s.f() == doctest::Approx(oracle::travel_time(inst, tour, picks)).epsilon(1e-12));
        CHECK(s.g() == oracle::profit(inst, picks));
        for (std::size_t i = 1; i < s.cumulative_weights().size(); ++i) {
            CHECK(s.cumulative_weights()[i - 1] <= s.cumulative_weights()[i]);
        }
        // Fraction form with W substituted.
        double frac = 0.0;
        const double w = inst.capacity();
        for (std::size_t i = 0; i < tour.size(); ++i) {
            const double d = inst.distance(tour[i], tour[(i + 1) % tour.size()]);
            frac += w * d / (w * inst.max_speed() - s.cumulative_weights()[i] * (inst.max_speed() - inst.min_speed()));
        }
        CHECK(frac == doctest::Approx(s.f()).epsilon(1e-12));
    }
}

TEST_CASE("adding an item never speeds the thief up") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_instance(rng, 6, 5, 1.0);
        Tour tour{0, 1, 2, 3, 4, 5};
        std::shuffle(tour.begin() + 1, tour.end(), rng);
        PickingPlan picks(5);
        for (auto& z : picks) {
            z = rng() % 3 == 0;
        }
        const auto base = Solution::evaluate(inst, tour, picks);
        for (std::size_t k = 0; k < 5; ++k) {
            if (picks[k]) {
                continue;
            }
            auto more = picks;
            more[k] = 1;
            const auto s = Solution::evaluate(inst, tour, more);
            CHECK(s.f() >= base.f());
            CHECK(s.g() <= base.g());
        }
    }
}

TEST_CASE("solution json round trip") {
    const auto inst = oracle::triangle({{10, 4, 1}, {7, 3, 2}});
    const auto s = Solution::evaluate(inst, {0, 2, 1}, {0, 1});
    const auto doc = solution_to_json(s);
    CHECK(doc["tour"] == nlohmann::json::array({1, 3, 2}));
    CHECK(doc["picked"] == nlohmann::json::array({1}));
    const auto back = solution_from_json(inst, doc);
    CHECK(back == s);
    CHECK(back.f() == s.f());
}
