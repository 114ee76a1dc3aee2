#include <doctest.h>

#include <random>

#include "bittp/encoder.hpp"
#include "bittp/error.hpp"
#include "bittp/solver.hpp"
#include "support/oracles.hpp"

using namespace bittp;

namespace {

Solution random_solution(std::mt19937_64& rng, const Instance& inst) {
    Tour tour(inst.num_cities());
    std::iota(tour.begin(), tour.end(), std::size_t{0});
    std::shuffle(tour.begin() + 1, tour.end(), rng);
    PickingPlan picks(inst.num_items(), 0);
    double w = 0.0;
    for (std::size_t k = 0; k < picks.size(); ++k) {
        if (rng() & 1U && w + inst.item(k).weight <= inst.capacity()) {
            picks[k] = 1;
            w += inst.item(k).weight;
        }
    }
    return Solution::evaluate(inst, std::move(tour), std::move(picks));
}

bool has_label(const CqmModel& m, const std::string& label) {
    for (const auto& c : m.constraints()) {
        if (c.label == label) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("layout indices") {
    const VariableLayout layout(4, 3, 2);
    CHECK(layout.tour_var(0, 0) == 0);
    CHECK(layout.tour_var(2, 3) == 11);
    CHECK(layout.pick_var(0) == 16);
    CHECK(layout.total_vars() == 19);
    CHECK(layout.padded_vars() == 4 * (4 + 2));
    CHECK_THROWS_AS(layout.tour_var(4, 0), InvalidArgument);
    CHECK_THROWS_AS(layout.pick_var(3), InvalidArgument);
}

TEST_CASE("travel objective coefficients on three cities") {
    const auto inst = build_instance({{0, 2, 3}, {2, 0, 4}, {3, 4, 0}}, {}, 10, 0.1, 1);
    const auto layout = VariableLayout::for_instance(inst);
    const AuxiliaryWeights b{{10, 5, 2}};
    const auto form = surrogate_travel_form(inst, layout, b);
    // Position pairs (0,1), (1,2), (2,0) with scales W/b = 1, 2, 5; six ordered city pairs each.
    CHECK(form.quadratic().size() == 18);
    CHECK(form.linear().empty());
    auto coef = [&](Var i, Var j) {
        if (i > j) {
            std::swap(i, j);
        }
        for (const auto& t : form.quadratic()) {
            if (t.i == i && t.j == j) {
                return t.coef;
            }
        }
        return 0.0;
    };
    CHECK(coef(layout.tour_var(0, 0), layout.tour_var(1, 1)) == 2.0);
    CHECK(coef(layout.tour_var(1, 1), layout.tour_var(2, 2)) == 2.0 * 4.0);
    CHECK(coef(layout.tour_var(2, 2), layout.tour_var(0, 0)) == 5.0 * 3.0);
    CHECK(coef(layout.tour_var(0, 0), layout.tour_var(0, 1)) == 0.0);
}

TEST_CASE("surrogate with b from the solution reproduces the travel time") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_instance(rng, 6, 5);
        const auto s = random_solution(rng, inst);
        const auto b = update_b(inst, s);
        const auto enc = encode_subproblem(inst, {-1e9, 0}, b);
        const auto x = encode_assignment(enc.layout, s);
        CHECK(enc.model.objective_value(x) == doctest::Approx(s.f()).epsilon(1e-9));
        CHECK(surrogate_travel_time(inst, s.tour(), b) == doctest::Approx(s.f()).epsilon(1e-9));
        CHECK(enc.model.is_feasible(x));
        // W vmax - W_i (vmax - vmin) recovers b_i.
        const double dv = inst.max_speed() - inst.min_speed();
        for (std::size_t i = 0; i < inst.num_cities(); ++i) {
            const double wi = cumulative_weight_form(inst, enc.layout, i).evaluate(x);
            CHECK(std::abs(inst.capacity() * inst.max_speed() - wi * dv - b.values[i]) <= 1e-12 * inst.capacity());
            CHECK(wi == s.cumulative_weights()[i]);
        }
    }
}

TEST_CASE("speed constraints reject heavier prefixes") {
    // Item at city 2 is picked; b forces W_1 <= 0 at the second position.
    const auto inst = oracle::triangle({{10, 5, 1}});
    const auto light = Solution::evaluate(inst, {0, 2, 1}, {1});
    const auto enc = encode_subproblem(inst, {-10, 0}, update_b(inst, light));
    CHECK(has_label(enc.model, "speed[2]"));
    CHECK(enc.model.is_feasible(encode_assignment(enc.layout, light)));
    const auto early = Solution::evaluate(inst, {0, 1, 2}, {1});
    CHECK_FALSE(enc.model.is_feasible(encode_assignment(enc.layout, early)));
}

TEST_CASE("permutation violations are flagged") {
    const auto inst = oracle::triangle({{10, 5, 1}});
    const auto enc = encode_subproblem(inst, {-10, 0}, AuxiliaryWeights::ones(3));
    auto x = encode_assignment(enc.layout, Solution::evaluate(inst, {0, 1, 2}, {0}));
    CHECK(enc.model.is_feasible(x));
    x[enc.layout.tour_var(2, 1)] = 1;
    const auto bad = enc.model.violated(x);
    REQUIRE(bad.size() == 2);
    CHECK(enc.model.constraints()[bad[0]].label == "position[2]");
    CHECK(enc.model.constraints()[bad[1]].label == "city[3]");
}

TEST_CASE("band constraints") {
    const auto inst = oracle::triangle({{10, 4, 1}, {7, 3, 2}});
    const auto layout = VariableLayout::for_instance(inst);
    const auto enc = encode_subproblem(inst, {-12, -8}, AuxiliaryWeights::ones(3));
    CHECK(has_label(enc.model, "band_lo"));
    CHECK(has_label(enc.model, "band_hi"));
    CHECK_FALSE(has_label(enc.model, "capacity"));
    auto feasible = [&](PickingPlan z) {
        return enc.model.is_feasible(encode_assignment(layout, Solution::evaluate(inst, {0, 1, 2}, std::move(z))));
    };
    CHECK(feasible({1, 0}));
    CHECK_FALSE(feasible({1, 1}));
    CHECK_FALSE(feasible({0, 1}));
    CHECK_FALSE(feasible({0, 0}));

    const auto open = encode_subproblem(inst, {-17, 0}, AuxiliaryWeights::ones(3));
    CHECK_FALSE(has_label(open.model, "band_lo"));
    CHECK_FALSE(has_label(open.model, "band_hi"));
    CHECK_THROWS_AS(encode_subproblem(inst, {-1, -2}, AuxiliaryWeights::ones(3)), InvalidArgument);
    CHECK_THROWS_AS(encode_subproblem(inst, {-1, 1}, AuxiliaryWeights::ones(3)), InvalidArgument);
}

TEST_CASE("an instance without items cannot meet a band away from zero") {
    const auto inst = oracle::triangle();
    CHECK(encode_subproblem(inst, {-5, -1}, AuxiliaryWeights::ones(3)).trivially_infeasible);
    CHECK_FALSE(encode_subproblem(inst, {0, 0}, AuxiliaryWeights::ones(3)).trivially_infeasible);
}

TEST_CASE("profit bound model") {
    const auto inst = oracle::triangle({{10, 6, 1}, {7, 5, 2}, {4, 4, 2}});
    const auto m = encode_profit_bound(inst);
    CHECK(m.num_vars() == 3);
    REQUIRE(m.constraints().size() == 1);
    CHECK(m.objective_value(std::vector<std::uint8_t>{1, 0, 1}) == -14.0);
    CHECK(m.is_feasible(std::vector<std::uint8_t>{1, 0, 1}));
    CHECK_FALSE(m.is_feasible(std::vector<std::uint8_t>{1, 1, 0}));
    CHECK(encode_profit_bound(oracle::triangle()).constraints().empty());
}

TEST_CASE("weighted sum endpoints") {
    std::mt19937_64 rng(4);
    const auto inst = oracle::random_instance(rng, 5, 4);
    const auto b = AuxiliaryWeights::ones(5);
    const auto travel = encode_weighted_sum(inst, 1.0, b);
    const auto items = encode_weighted_sum(inst, 0.0, b);
    const auto half = encode_weighted_sum(inst, 0.5, b);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_solution(rng, inst);
        const auto x = encode_assignment(travel.layout, s);
        const double t = surrogate_travel_time(inst, s.tour(), b);
        CHECK(travel.model.objective_value(x) == doctest::Approx(t).epsilon(1e-12));
        CHECK(items.model.objective_value(x) == doctest::Approx(s.g()).epsilon(1e-12));
        CHECK(half.model.objective_value(x) == doctest::Approx(0.5 * t + 0.5 * s.g()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(encode_weighted_sum(inst, 1.5, b), InvalidArgument);
}

TEST_CASE("decode") {
    const auto inst = oracle::triangle({{10, 4, 1}, {7, 3, 2}});
    const auto layout = VariableLayout::for_instance(inst);
    const auto s = Solution::evaluate(inst, {0, 2, 1}, {0, 1});
    auto x = encode_assignment(layout, s);
    CHECK(decode(inst, layout, x) == s);

    auto doubled = x;
    doubled[layout.tour_var(2, 2)] = 1;
    doubled[layout.tour_var(1, 2)] = 0;
    CHECK_THROWS_WITH_AS(decode(inst, layout, doubled), "city 3 occupies positions 2 and 3", DecodeError);

    auto empty_row = x;
    empty_row[layout.tour_var(2, 1)] = 0;
    CHECK_THROWS_WITH_AS(decode(inst, layout, empty_row), "position 2 holds 0 cities instead of one", DecodeError);

    const auto no_depot = encode_assignment(layout, s);
    auto moved = no_depot;
    moved[layout.tour_var(0, 0)] = 0;
    moved[layout.tour_var(1, 0)] = 1;
    moved[layout.tour_var(1, 2)] = 0;
    moved[layout.tour_var(0, 2)] = 1;
    CHECK_THROWS_AS(decode(inst, layout, moved), DecodeError);
}

TEST_CASE("encode and decode round trip") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = oracle::random_instance(rng, 2 + trial % 6, trial % 7);
        const auto layout = VariableLayout::for_instance(inst);
        const auto s = random_solution(rng, inst);
        const auto back = decode(inst, layout, encode_assignment(layout, s));
        CHECK(back == s);
        CHECK(back.f() == s.f());
    }
}

TEST_CASE("quadratic item forms agree with linear ones on valid assignments") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = oracle::random_instance(rng, 5, 6);
        const auto layout = VariableLayout::for_instance(inst);
        const auto s = random_solution(rng, inst);
        const auto x = encode_assignment(layout, s);
        CHECK(profit_form(inst, layout, true).evaluate(x) == profit_form(inst, layout, false).evaluate(x));
        CHECK(weight_form(inst, layout, true).evaluate(x) == weight_form(inst, layout, false).evaluate(x));
        const ProfitBand band{s.g() - 5, std::min(0.0, s.g() + 5)};
        const auto b = update_b(inst, s);
        const auto lin = encode_subproblem(inst, band, b);
        const auto quad = encode_subproblem(inst, band, b, {true});
        CHECK(lin.model.is_feasible(x) == quad.model.is_feasible(x));
        CHECK(lin.model.objective_value(x) == quad.model.objective_value(x));
    }
}
