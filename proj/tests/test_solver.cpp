#include <doctest.h>

#include <atomic>
#include <mutex>
#include <random>

#include "bittp/error.hpp"
#include "bittp/knapsack.hpp"
#include "bittp/solver.hpp"
#include "support/oracles.hpp"

using namespace bittp;

namespace {

// Replays fixed solutions, one per call, whatever model it is handed.
class ScriptedBackend : public SamplerBackend {
public:
    ScriptedBackend(const Instance& instance, std::vector<Solution> script)
        : layout_(VariableLayout::for_instance(instance)), script_(std::move(script)) {}

    SampleSet sample(const CqmModel& model, std::uint64_t) const override {
        std::lock_guard lock(mutex_);
        const auto& s = script_.at(std::min(calls_, script_.size() - 1));
        ++calls_;
        Sample out;
        out.assignment = encode_assignment(layout_, s);
        out.objective = model.objective_value(out.assignment);
        out.energy = out.objective;
        out.feasible = model.is_feasible(out.assignment);
        return SampleSet({out});
    }
    std::string name() const override { return "scripted"; }
    std::size_t calls() const { return calls_; }

private:
    VariableLayout layout_;
    std::vector<Solution> script_;
    mutable std::mutex mutex_;
    mutable std::size_t calls_ = 0;
};

// Knapsack stub answering every bound query with the empty plan.
class EmptyPlanBackend : public SamplerBackend {
public:
    SampleSet sample(const CqmModel& model, std::uint64_t) const override {
        Sample s;
        s.assignment.assign(model.num_vars(), 0);
        s.feasible = model.is_feasible(s.assignment);
        return SampleSet({s});
    }
    std::string name() const override { return "empty"; }
};

LocalAnnealBackend small_backend() {
    AnnealParams p;
    p.num_reads = 16;
    p.sweeps = 1000;
    return LocalAnnealBackend(p);
}

} // namespace

TEST_CASE("profit bounds") {
    const auto backend = small_backend();
    CHECK(compute_bounds(oracle::triangle(), backend, false).g_min == 0.0);
    CHECK(compute_bounds(oracle::triangle(), backend, true).g_max == 0.0);

    const auto inst = oracle::triangle({{5, 4, 1}, {6, 5, 2}, {4, 6, 2}});
    const auto exact = compute_bounds(inst, backend, true);
    CHECK(exact.g_min == -11.0);
    CHECK(exact.g_min == -oracle::knapsack_by_enumeration({5, 6, 4}, {4, 5, 6}, 10));
    CHECK(compute_bounds(inst, backend, false, 3).g_min == -11.0);

    const auto degenerate = compute_bounds(inst, EmptyPlanBackend{}, false);
    CHECK(degenerate.g_min == 0.0);
    CHECK(degenerate.g_max == 0.0);
    CHECK_FALSE(degenerate.warnings.empty());
}

TEST_CASE("equal schedule") {
    const auto s = make_schedule(-10, 0, 4, ScheduleMode::Equal);
    CHECK(s.levels == std::vector<double>{-10, -7.5, -5, -2.5, 0});
    CHECK(s.band(1).lo == -7.5);
    CHECK(s.band(1).hi == -5);
    CHECK_THROWS_AS(s.band(4), InvalidArgument);
    CHECK_THROWS_AS(make_schedule(0, -1, 2, ScheduleMode::Equal), InvalidArgument);
    CHECK_THROWS_AS(make_schedule(-1, 0, 0, ScheduleMode::Equal), InvalidArgument);
    CHECK(make_schedule(-3, 0, 1, ScheduleMode::Equal).levels == std::vector<double>{-3, 0});
}

TEST_CASE("random schedule") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = make_schedule(-20, 0, 6, ScheduleMode::Random, seed);
        REQUIRE(s.levels.size() == 7);
        CHECK(s.levels.front() == -20);
        CHECK(s.levels.back() == 0);
        CHECK(std::is_sorted(s.levels.begin(), s.levels.end()));
        CHECK(make_schedule(-20, 0, 6, ScheduleMode::Random, seed).levels == s.levels);
    }
}

TEST_CASE("auxiliary weights from a solution") {
    const auto inst = oracle::triangle({{10, 10, 2}});
    CHECK(update_b(inst, Solution::evaluate(inst, {0, 1, 2}, {1})).values == std::vector<double>{10, 10, 1});
    CHECK(update_b(inst, Solution::evaluate(inst, {0, 1, 2}, {0})).values == std::vector<double>{10, 10, 10});
    const auto heavy = oracle::triangle({{10, 6, 1}, {10, 6, 2}});
    const Tour tour{0, 1, 2};
    const PickingPlan both{1, 1};
    CHECK_THROWS_AS(update_b(heavy, tour, both), OverweightError);
}

TEST_CASE("the zero band on the triangle returns the empty plan") {
    const auto inst = oracle::triangle({{10, 10, 1}});
    const auto r = solve_band(inst, {0, 0}, small_backend(), {});
    REQUIRE(r.best);
    CHECK(r.best->f() == 15.0);
    CHECK(r.best->g() == 0.0);
}

TEST_CASE("an unreachable band has no incumbent") {
    const auto inst = oracle::triangle({{10, 10, 1}});
    const auto r = solve_band(inst, {-5, -3}, small_backend(), {});
    CHECK_FALSE(r.best);
    CHECK(r.stop_reason == "no feasible sample");
    CHECK(r.iterations() == 1);
    CHECK(r.trace[0].penalty_rounds == 4);

    const auto empty = solve_band(oracle::triangle(), {-5, -3}, small_backend(), {});
    CHECK_FALSE(empty.best);
    CHECK(empty.stop_reason == "empty band");
}

TEST_CASE("the band loop stops once an iterate fails to improve") {
    const auto inst = oracle::triangle({{10, 10, 1}, {3, 2, 2}});
    const auto a = Solution::evaluate(inst, {0, 1, 2}, {0, 1});
    // Replaying the incumbent is not a strict improvement.
    ScriptedBackend backend(inst, {a, a, a});
    BandParams params;
    params.apply_lea = false;
    const auto r = solve_band(inst, {-3, -3}, backend, params);
    CHECK(r.iterations() == 2);
    CHECK(backend.calls() == 2);
    REQUIRE(r.best);
    CHECK(*r.best == a);
    CHECK(r.trace[0].accepted);
    CHECK_FALSE(r.trace[1].accepted);
    CHECK(r.stop_reason == "no improvement");
    // Second iteration is encoded with weights from the first incumbent.
    CHECK(r.trace[1].b == update_b(inst, a).values);
}

TEST_CASE("the literal rule returns the iterate before the first improvement") {
    const auto inst = oracle::triangle({{10, 10, 1}, {3, 2, 2}});
    const auto slow = Solution::evaluate(inst, {0, 2, 1}, {0, 1});
    const auto fast = Solution::evaluate(inst, {0, 1, 2}, {0, 1});
    ScriptedBackend backend(inst, {slow, fast});
    BandParams params;
    params.apply_lea = false;
    params.termination = Termination::Literal;
    const auto r = solve_band(inst, {-3, -3}, backend, params);
    REQUIRE(r.best);
    CHECK(r.iterations() == 1);
    CHECK(*r.best == slow);
}

TEST_CASE("trace invariants on a real run") {
    const auto inst = load_instance(std::string(BITTP_DATA_DIR) + "/instances/syn6_n5_unc.ttp");
    AnnealParams p;
    p.num_reads = 32;
    p.sweeps = 2000;
    const LocalAnnealBackend backend(p);
    BandParams params;
    params.t_max = 4;
    const double tol = 1e-9;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        params.seed = seed;
        const auto total = -solve_knapsack(inst).profit;
        const auto r = solve_band(inst, {total, total / 2}, backend, params);
        double last = INFINITY;
        for (std::size_t t = 0; t < r.trace.size(); ++t) {
            const auto& rec = r.trace[t];
            CHECK(rec.iteration == t + 1);
            if (rec.accepted) {
                CHECK(rec.incumbent_f < last);
                last = rec.incumbent_f;
            }
            if (t > 0 && !rec.sampled_weights.empty()) {
                // Speed floors built from the incumbent bound every prefix weight.
                const auto& prev = r.trace[t - 1].refined_weights;
                for (std::size_t i = 0; i < prev.size(); ++i) {
                    CHECK(rec.sampled_weights[i] <= prev[i] + tol * inst.capacity());
                }
            }
            if (rec.refined_f) {
                CHECK(*rec.refined_f <= *rec.sampled_f);
            }
        }
        if (r.best) {
            CHECK(r.best->f() == last);
            CHECK(is_feasible(inst, *r.best, r.band));
        }
    }
}

TEST_CASE("an instance without items has a single front point") {
    SolveParams params;
    params.segments = 3;
    const auto report = solve(oracle::triangle(), small_backend(), params);
    REQUIRE(report.front.size() == 1);
    CHECK(report.front[0].f == 15.0);
    CHECK(report.front[0].g == 0.0);
    CHECK(report.bounds.g_min == 0.0);
}

TEST_CASE("one segment") {
    const auto inst = load_instance(std::string(BITTP_DATA_DIR) + "/instances/syn5_n4_unc.ttp");
    SolveParams params;
    params.segments = 1;
    params.exact_bounds = true;
    const auto report = solve(inst, small_backend(), params);
    CHECK(report.bands.size() == 1);
    CHECK(report.front.size() <= 1);
    CHECK(report.schedule.levels.size() == 2);
}

TEST_CASE("equal seeds give identical fronts at any concurrency") {
    const auto inst = load_instance(std::string(BITTP_DATA_DIR) + "/instances/syn5_n4_unc.ttp");
    SolveParams params;
    params.segments = 3;
    params.seed = 11;
    const auto a = solve(inst, small_backend(), params);
    params.concurrency = 3;
    const auto b = solve(inst, small_backend(), params);
    CHECK(front_document(a).dump() == front_document(b).dump());
    CHECK(front_csv(a) == front_csv(b));
    for (std::size_t i = 0; i < a.front.size(); ++i) {
        CHECK(a.front_solutions[i].f() == a.front[i].f);
        CHECK(is_feasible(inst, a.front_solutions[i], a.schedule.band(*a.front[i].tag)));
    }
}

TEST_CASE("parameter validation") {
    SolveParams params;
    params.segments = 0;
    CHECK_THROWS_AS(params.validate(), InvalidArgument);
    params = {};
    params.t_max = 0;
    CHECK_THROWS_AS(params.validate(), InvalidArgument);
    CHECK_THROWS_AS(RemoteBackend(RemoteConfig{}), InvalidArgument);
}
