#include "bittp/anneal.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

#include "bittp/error.hpp"
#include "bittp/rng.hpp"

namespace bittp {

namespace {

// Energy = r_0 + sum_e w_e * r_e^2, where r_0 is the objective and r_e the
// penalty residuals. Each (variable, expression) pair keeps the change in r_e
// caused by flipping that variable up; quadratic terms update partner fields.
class Engine {
public:
    explicit Engine(const LoweredModel& model) : model_(model), n_(model.num_vars()) {
        weights_.push_back(0.0);
        for (const auto& p : model.penalties()) {
            weights_.push_back(p.weight);
        }
        build();
        find_grids();
    }

    std::vector<std::uint8_t> run(std::uint64_t seed, const AnnealParams& params, double scale) const {
        std::mt19937_64 rng(seed);
        auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

        std::vector<std::uint8_t> x(n_);
        for (auto& b : x) {
            b = static_cast<std::uint8_t>(rng() & 1U);
        }
        std::vector<double> field(entries_.size());
        for (std::size_t en = 0; en < entries_.size(); ++en) {
            double f = entries_[en].base;
            for (auto p = entries_[en].partner_begin; p < entries_[en].partner_end; ++p) {
                if (x[entry_var_[partners_[p].entry]]) {
                    f += partners_[p].coef;
                }
            }
            field[en] = f;
        }
        std::vector<double> r(weights_.size());
        r[0] = model_.objective().evaluate(x);
        for (std::size_t e = 1; e < r.size(); ++e) {
            const auto& pen = model_.penalties()[e - 1];
            double slack = 0.0;
            for (std::size_t k = 0; k < pen.slack.bits; ++k) {
                if (x[pen.slack.first_var + k]) {
                    slack += std::ldexp(1.0, static_cast<int>(k));
                }
            }
            r[e] = pen.residual.evaluate(x) + pen.slack.sign * pen.slack.unit * slack;
        }

        const double ratio = params.sweeps > 1 ? std::pow(params.beta_max / params.beta_min,
                                                          1.0 / static_cast<double>(params.sweeps - 1))
                                               : 1.0;
        double beta = params.sweeps > 1 ? params.beta_min : params.beta_max;
        auto delta_of = [&](std::size_t k) {
            const double s = x[k] ? -1.0 : 1.0;
            double delta = 0.0;
            for (auto en = var_begin_[k]; en < var_begin_[k + 1]; ++en) {
                const auto e = entries_[en].expr;
                const double f = field[en];
                if (e == 0) {
                    delta += s * f;
                } else {
                    delta += weights_[e] * (2.0 * r[e] * s * f + f * f);
                }
            }
            return delta;
        };
        auto flip = [&](std::size_t k) {
            const double s = x[k] ? -1.0 : 1.0;
            x[k] ^= 1U;
            for (auto en = var_begin_[k]; en < var_begin_[k + 1]; ++en) {
                r[entries_[en].expr] += s * field[en];
                for (auto p = entries_[en].partner_begin; p < entries_[en].partner_end; ++p) {
                    field[partners_[p].entry] += s * partners_[p].coef;
                }
            }
        };
        auto accept = [&](double delta, double b) {
            if (delta <= 0.0) {
                return true;
            }
            const double t = b * delta;
            return t <= 40.0 && uniform() < std::exp(-t);
        };
        auto active_in = [&](std::size_t g) -> std::int64_t {
            std::int64_t found = -1;
            for (auto v : groups_[g]) {
                if (x[v]) {
                    if (found >= 0) {
                        return -1;
                    }
                    found = v;
                }
            }
            return found;
        };

        for (std::size_t sweep = 0; sweep < params.sweeps; ++sweep, beta *= ratio) {
            const double b = beta / scale;
            for (std::size_t k = 0; k < n_; ++k) {
                if (accept(delta_of(k), b)) {
                    flip(k);
                }
            }
            // Exchange move on one-hot grids: with a = (P, Q) and b = (R, S)
            // active, turn on c = (P, R') and d = (S', Q) so every group keeps one active member.
            for (std::size_t attempt = 0; attempt < groups_.size(); ++attempt) {
                const std::size_t g = rng() % groups_.size();
                const auto a = active_in(g);
                if (a < 0 || cross_[a].empty()) {
                    continue;
                }
                const auto& members = groups_[g];
                const Var c = members[rng() % members.size()];
                if (static_cast<std::int64_t>(c) == a || x[c] || cross_[c].empty()) {
                    continue;
                }
                const std::size_t q = other_group(a, g);
                const std::size_t rg = other_group(c, g);
                const auto bv = active_in(rg);
                if (bv < 0) {
                    continue;
                }
                const std::size_t sg = other_group(bv, rg);
                const auto d = cell(sg, q);
                if (d < 0 || x[d] || d == a || d == bv) {
                    continue;
                }
                const std::size_t moves[] = {static_cast<std::size_t>(a), static_cast<std::size_t>(bv), c,
                                             static_cast<std::size_t>(d)};
                double total = 0.0;
                for (auto k : moves) {
                    total += delta_of(k);
                    flip(k);
                }
                if (!accept(total, b)) {
                    for (auto k : moves) {
                        flip(k);
                    }
                }
            }
        }
        return x;
    }

private:
    struct Entry {
        std::uint32_t expr = 0;
        double base = 0.0;
        std::uint32_t partner_begin = 0;
        std::uint32_t partner_end = 0;
    };
    struct Partner {
        std::uint32_t entry;
        double coef;
    };

    void build() {
        struct Raw {
            std::uint32_t var;
            std::uint32_t expr;
            double base;
        };
        struct RawPair {
            std::uint32_t owner;
            std::uint32_t other;
            double coef;
        };
        std::vector<Raw> raw;
        std::vector<RawPair> pairs;
        std::vector<std::int64_t> slot(n_, -1);
        std::vector<Var> touched;

        auto add_expr = [&](std::uint32_t e, const QuadraticForm& form, const SlackEncoding* slack) {
            auto get = [&](Var v) {
                if (slot[v] < 0) {
                    slot[v] = static_cast<std::int64_t>(raw.size());
                    raw.push_back({v, e, 0.0});
                    touched.push_back(v);
                }
                return static_cast<std::uint32_t>(slot[v]);
            };
            for (const auto& t : form.linear()) {
                raw[get(t.var)].base += t.coef;
            }
            for (const auto& t : form.quadratic()) {
                const auto a = get(t.i);
                const auto b = get(t.j);
                pairs.push_back({a, b, t.coef});
                pairs.push_back({b, a, t.coef});
            }
            if (slack) {
                for (std::size_t k = 0; k < slack->bits; ++k) {
                    raw[get(static_cast<Var>(slack->first_var + k))].base +=
                        slack->sign * slack->unit * std::ldexp(1.0, static_cast<int>(k));
                }
            }
            for (auto v : touched) {
                slot[v] = -1;
            }
            touched.clear();
        };
        add_expr(0, model_.objective(), nullptr);
        for (std::size_t j = 0; j < model_.penalties().size(); ++j) {
            const auto& p = model_.penalties()[j];
            add_expr(static_cast<std::uint32_t>(j + 1), p.residual, &p.slack);
        }

        // Group entries by variable.
        var_begin_.assign(n_ + 1, 0);
        for (const auto& e : raw) {
            ++var_begin_[e.var + 1];
        }
        for (std::size_t k = 0; k < n_; ++k) {
            var_begin_[k + 1] += var_begin_[k];
        }
        std::vector<std::uint32_t> where(raw.size());
        {
            auto cursor = var_begin_;
            for (std::size_t i = 0; i < raw.size(); ++i) {
                where[i] = cursor[raw[i].var]++;
            }
        }
        entries_.assign(raw.size(), {});
        entry_var_.assign(raw.size(), 0);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            entries_[where[i]].expr = raw[i].expr;
            entries_[where[i]].base = raw[i].base;
            entry_var_[where[i]] = raw[i].var;
        }

        // Group partner lists by owning entry.
        std::vector<std::uint32_t> begin(entries_.size() + 1, 0);
        for (const auto& p : pairs) {
            ++begin[where[p.owner] + 1];
        }
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            begin[i + 1] += begin[i];
        }
        partners_.assign(pairs.size(), {0, 0.0});
        auto cursor = begin;
        for (const auto& p : pairs) {
            partners_[cursor[where[p.owner]]++] = {where[p.other], p.coef};
        }
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i].partner_begin = begin[i];
            entries_[i].partner_end = begin[i + 1];
        }
    }

    // Equality penalties of the form sum(x) - 1 over two or more variables.
    // Variables sitting in exactly two of them form a grid usable by the exchange move.
    void find_grids() {
        std::vector<std::vector<std::size_t>> member_of(n_);
        for (const auto& p : model_.penalties()) {
            const auto& res = p.residual;
            if (p.slack.bits > 0 || !res.is_linear() || res.offset() != -1.0 || res.linear().size() < 2) {
                continue;
            }
            const bool unit = std::all_of(res.linear().begin(), res.linear().end(),
                                          [](const LinearTerm& t) { return t.coef == 1.0; });
            if (!unit) {
                continue;
            }
            std::vector<Var> vars;
            for (const auto& t : res.linear()) {
                vars.push_back(t.var);
                member_of[t.var].push_back(groups_.size());
            }
            groups_.push_back(std::move(vars));
        }
        cross_.assign(n_, {});
        for (std::size_t v = 0; v < n_; ++v) {
            if (member_of[v].size() == 2) {
                cross_[v] = member_of[v];
                cells_.emplace(key(member_of[v][0], member_of[v][1]), static_cast<Var>(v));
            }
        }
        if (cells_.empty()) {
            groups_.clear();
        }
    }

    static std::uint64_t key(std::size_t g, std::size_t h) {
        if (g > h) {
            std::swap(g, h);
        }
        return (static_cast<std::uint64_t>(g) << 32) | h;
    }

    std::size_t other_group(std::int64_t v, std::size_t g) const {
        const auto& c = cross_[v];
        return c[0] == g ? c[1] : c[0];
    }

    std::int64_t cell(std::size_t g, std::size_t h) const {
        if (g == h) {
            return -1;
        }
        const auto it = cells_.find(key(g, h));
        return it == cells_.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

    const LoweredModel& model_;
    std::size_t n_;
    std::vector<std::vector<Var>> groups_;
    std::vector<std::vector<std::size_t>> cross_;
    std::unordered_map<std::uint64_t, Var> cells_;
    std::vector<double> weights_;
    std::vector<std::uint32_t> var_begin_;
    std::vector<Entry> entries_;
    std::vector<Var> entry_var_;
    std::vector<Partner> partners_;
};

double energy_scale(const LoweredModel& model) {
    const double obj = model.objective().max_abs_coef();
    if (obj > 0.0) {
        return obj;
    }
    double s = 0.0;
    for (const auto& p : model.penalties()) {
        const double c = std::max(p.residual.max_abs_coef(), p.slack.bits > 0 ? p.slack.unit : 0.0);
        s = std::max(s, p.weight * c * c);
    }
    return s > 0.0 ? s : 1.0;
}

SampleSet anneal_impl(const LoweredModel& model, const AnnealParams& params, const CqmModel* exact) {
    params.validate();
    if (model.num_vars() == 0) {
        throw InvalidArgument("cannot anneal an empty model");
    }
    const auto start = std::chrono::steady_clock::now();
    const Engine engine(model);
    const double scale = energy_scale(model);
    std::vector<Sample> samples(params.num_reads);

    auto do_read = [&](std::size_t read) {
        const auto x = engine.run(derive_seed(params.seed, read), params, scale);
        const std::span<const std::uint8_t> model_part(x.data(), model.num_model_vars());
        const auto full = model.complete_slack(model_part);
        Sample s;
        s.assignment.assign(model_part.begin(), model_part.end());
        s.energy = model.energy(full);
        s.objective = model.objective().evaluate(full);
        s.feasible = exact ? exact->is_feasible(s.assignment) : model.penalties().empty();
        samples[read] = std::move(s);
    };

    std::size_t threads = params.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : params.threads;
    threads = std::min(threads, params.num_reads);
    if (threads <= 1) {
        for (std::size_t read = 0; read < params.num_reads; ++read) {
            do_read(read);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t read = next++; read < params.num_reads; read = next++) {
                    do_read(read);
                }
            });
        }
    }

    SampleSet out(std::move(samples));
    out.info.backend = "local-anneal";
    out.info.rounds = 1;
    out.info.lowered_vars = model.num_vars();
    out.info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace

void AnnealParams::validate() const {
    if (num_reads == 0 || sweeps == 0) {
        throw InvalidArgument("reads and sweeps must be positive");
    }
    if (!(beta_min > 0.0) || !(beta_min < beta_max) || !std::isfinite(beta_max)) {
        throw InvalidArgument("annealing schedule needs 0 < beta_min < beta_max");
    }
}

void CalibrationParams::validate() const {
    if (!(initial_multiplier > 0.0) || !(escalation_factor >= 1.0) || max_rounds == 0) {
        throw InvalidArgument("calibration needs a positive multiplier, escalation >= 1 and at least one round");
    }
}

SampleSet anneal(const LoweredModel& model, const AnnealParams& params) {
    return anneal_impl(model, params, nullptr);
}

SampleSet anneal(const QuadraticForm& qubo, std::size_t num_vars, const AnnealParams& params) {
    return anneal_impl(lower_unconstrained(qubo, num_vars), params, nullptr);
}

std::vector<double> initial_penalties(const CqmModel& model, const CalibrationParams& calibration) {
    calibration.validate();
    double obj = model.objective().max_abs_coef();
    if (obj == 0.0) {
        obj = 1.0;
    }
    std::vector<double> out;
    for (const auto& c : model.constraints()) {
        const double a = c.lhs.max_abs_coef();
        out.push_back(calibration.initial_multiplier * obj * static_cast<double>(c.lhs.num_distinct_vars()) / (a * a));
    }
    return out;
}

SampleSet solve_cqm(const CqmModel& model, const AnnealParams& params, const CalibrationParams& calibration) {
    params.validate();
    auto penalties = initial_penalties(model, calibration);
    std::vector<std::vector<double>> history;
    double seconds = 0.0;
    SampleSet result;
    for (std::size_t round = 0; round < calibration.max_rounds; ++round) {
        AnnealParams p = params;
        p.seed = derive_seed(params.seed, round);
        const auto lowered = lower_to_qubo(model, penalties);
        result = anneal_impl(lowered, p, &model);
        history.push_back(penalties);
        seconds += result.info.seconds;
        const Sample* lowest = result.lowest_energy();
        if (model.constraints().empty() || (lowest && lowest->feasible)) {
            break;
        }
        for (auto& w : penalties) {
            w *= calibration.escalation_factor;
        }
    }
    result.info.rounds = history.size();
    result.info.penalty_history = std::move(history);
    result.info.seconds = seconds;
    return result;
}

} // namespace bittp
