#include "bittp/encoder.hpp"

#include <cmath>
#include <string>

#include "bittp/error.hpp"
#include "format.hpp"

namespace bittp {

VariableLayout::VariableLayout(std::size_t num_cities, std::size_t num_items, std::size_t max_items_per_city)
    : n_(num_cities), m_(num_items), max_per_city_(max_items_per_city) {}

VariableLayout VariableLayout::for_instance(const Instance& instance) {
    return {instance.num_cities(), instance.num_items(), instance.max_items_per_city()};
}

Var VariableLayout::tour_var(std::size_t city, std::size_t position) const {
    if (city >= n_ || position >= n_) {
        throw InvalidArgument("tour variable (" + std::to_string(city) + ", " + std::to_string(position) +
                              ") out of range");
    }
    return static_cast<Var>(city * n_ + position);
}

Var VariableLayout::pick_var(std::size_t item) const {
    if (item >= m_) {
        throw InvalidArgument("item " + std::to_string(item) + " out of range");
    }
    return static_cast<Var>(n_ * n_ + item);
}

void AuxiliaryWeights::validate(std::size_t n) const {
    if (values.size() != n) {
        throw InvalidArgument("expected " + std::to_string(n) + " auxiliary weights, got " +
                              std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw InvalidArgument("auxiliary weight at position " + std::to_string(i + 1) + " must be positive");
        }
    }
}

QuadraticForm surrogate_travel_form(const Instance& instance, const VariableLayout& layout, const AuxiliaryWeights& b) {
    const std::size_t n = instance.num_cities();
    b.validate(n);
    QuadraticForm form;
    if (n < 2) {
        return form;
    }
    const double cap = instance.capacity();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        const double scale = cap / b.values[i];
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (u != v && instance.distance(u, v) != 0.0) {
                    form.add_quadratic(layout.tour_var(u, i), layout.tour_var(v, next), scale * instance.distance(u, v));
                }
            }
        }
    }
    form.canonicalize();
    return form;
}

QuadraticForm cumulative_weight_form(const Instance& instance, const VariableLayout& layout, std::size_t position) {
    QuadraticForm form;
    for (std::size_t k = 0; k < instance.num_items(); ++k) {
        const auto& item = instance.item(k);
        for (std::size_t p = 0; p <= position; ++p) {
            form.add_quadratic(layout.pick_var(k), layout.tour_var(item.city, p), item.weight);
        }
    }
    form.canonicalize();
    return form;
}

namespace {

QuadraticForm item_form(const Instance& instance, const VariableLayout& layout, bool quadratic, bool profit) {
    QuadraticForm form;
    for (std::size_t k = 0; k < instance.num_items(); ++k) {
        const auto& item = instance.item(k);
        const double c = profit ? -item.profit : item.weight;
        if (quadratic) {
            for (std::size_t p = 0; p < instance.num_cities(); ++p) {
                form.add_quadratic(layout.pick_var(k), layout.tour_var(item.city, p), c);
            }
        } else {
            form.add_linear(layout.pick_var(k), c);
        }
    }
    form.canonicalize();
    return form;
}

void add_permutation_constraints(CqmModel& model, const VariableLayout& layout) {
    const std::size_t n = layout.num_cities();
    for (std::size_t i = 0; i < n; ++i) {
        QuadraticForm row;
        for (std::size_t v = 0; v < n; ++v) {
            row.add_linear(layout.tour_var(v, i), 1.0);
        }
        model.add_constraint(std::move(row), Sense::Eq, 1.0, "position[" + std::to_string(i + 1) + "]");
    }
    for (std::size_t v = 0; v < n; ++v) {
        QuadraticForm col;
        for (std::size_t i = 0; i < n; ++i) {
            col.add_linear(layout.tour_var(v, i), 1.0);
        }
        model.add_constraint(std::move(col), Sense::Eq, 1.0, "city[" + std::to_string(v + 1) + "]");
    }
    QuadraticForm depot;
    depot.add_linear(layout.tour_var(0, 0), 1.0);
    model.add_constraint(std::move(depot), Sense::Eq, 1.0, "depot");
}

void add_item_constraints(CqmModel& model, const Instance& instance, const VariableLayout& layout,
                          const AuxiliaryWeights& b, const EncodeOptions& options) {
    if (instance.num_items() == 0) {
        return;
    }
    const double cap = instance.capacity();
    const double total = instance.total_item_weight();
    if (total > cap) {
        model.add_constraint(weight_form(instance, layout, options.quadratic_item_forms), Sense::Le, cap, "capacity");
    }
    const double vmax = instance.max_speed();
    const double dv = vmax - instance.min_speed();
    const double implied = std::min(cap, total);
    for (std::size_t i = 0; i < instance.num_cities(); ++i) {
        const double limit = (cap * vmax - b.values[i]) / dv;
        // The depot pin keeps position 1 empty, so a non-negative limit there never binds.
        if (limit >= implied || (i == 0 && limit >= 0.0)) {
            continue;
        }
        model.add_constraint(cumulative_weight_form(instance, layout, i), Sense::Le, limit,
                             "speed[" + std::to_string(i + 1) + "]");
    }
}

EncodedModel make_base(const Instance& instance) {
    const auto layout = VariableLayout::for_instance(instance);
    return {CqmModel(layout.total_vars()), layout, false};
}

} // namespace

QuadraticForm profit_form(const Instance& instance, const VariableLayout& layout, bool quadratic) {
    return item_form(instance, layout, quadratic, true);
}

QuadraticForm weight_form(const Instance& instance, const VariableLayout& layout, bool quadratic) {
    return item_form(instance, layout, quadratic, false);
}

double surrogate_travel_time(const Instance& instance, std::span<const std::size_t> tour, const AuxiliaryWeights& b) {
    const std::size_t n = instance.num_cities();
    b.validate(n);
    if (!is_valid_tour(n, tour)) {
        throw InvalidArgument("tour must be a permutation of all cities starting at the depot");
    }
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f += instance.capacity() * instance.distance(tour[i], tour[(i + 1) % n]) / b.values[i];
    }
    return f;
}

EncodedModel encode_subproblem(const Instance& instance, ProfitBand band, const AuxiliaryWeights& b,
                               EncodeOptions options) {
    if (!(band.lo <= band.hi) || band.hi > 0.0 + kFeasibilityTolerance) {
        throw InvalidArgument("profit band must satisfy lo <= hi <= 0, got [" + detail::format_number(band.lo) + ", " +
                              detail::format_number(band.hi) + "]");
    }
    b.validate(instance.num_cities());
    auto out = make_base(instance);
    out.model.set_objective(surrogate_travel_form(instance, out.layout, b));
    add_permutation_constraints(out.model, out.layout);
    add_item_constraints(out.model, instance, out.layout, b, options);

    if (instance.num_items() == 0) {
        out.trivially_infeasible = !band.contains(0.0);
        return out;
    }
    // g ranges over [-total profit, 0]; bounds outside that range never bind.
    if (band.lo > -instance.total_item_profit()) {
        out.model.add_constraint(profit_form(instance, out.layout, options.quadratic_item_forms), Sense::Ge, band.lo,
                                 "band_lo");
    }
    if (band.hi < 0.0) {
        out.model.add_constraint(profit_form(instance, out.layout, options.quadratic_item_forms), Sense::Le, band.hi,
                                 "band_hi");
    }
    return out;
}

CqmModel encode_profit_bound(const Instance& instance) {
    const std::size_t m = instance.num_items();
    CqmModel model(m);
    QuadraticForm objective;
    QuadraticForm weight;
    for (std::size_t k = 0; k < m; ++k) {
        objective.add_linear(static_cast<Var>(k), -instance.item(k).profit);
        weight.add_linear(static_cast<Var>(k), instance.item(k).weight);
    }
    model.set_objective(std::move(objective));
    if (m > 0) {
        model.add_constraint(std::move(weight), Sense::Le, instance.capacity(), "capacity");
    }
    return model;
}

EncodedModel encode_weighted_sum(const Instance& instance, double alpha, const AuxiliaryWeights& b,
                                 EncodeOptions options) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("alpha must lie in [0, 1], got " + detail::format_number(alpha));
    }
    b.validate(instance.num_cities());
    auto out = make_base(instance);
    QuadraticForm objective;
    objective.add(surrogate_travel_form(instance, out.layout, b), alpha);
    objective.add(profit_form(instance, out.layout, options.quadratic_item_forms), 1.0 - alpha);
    out.model.set_objective(std::move(objective));
    add_permutation_constraints(out.model, out.layout);
    add_item_constraints(out.model, instance, out.layout, b, options);
    return out;
}

Solution decode(const Instance& instance, const VariableLayout& layout, std::span<const std::uint8_t> assignment) {
    const std::size_t n = layout.num_cities();
    if (n != instance.num_cities() || layout.num_items() != instance.num_items()) {
        throw InvalidArgument("layout does not match the instance");
    }
    if (assignment.size() != layout.total_vars()) {
        throw InvalidArgument("assignment has " + std::to_string(assignment.size()) + " entries, layout needs " +
                              std::to_string(layout.total_vars()));
    }
    Tour tour(n);
    std::vector<int> seen_at(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (assignment[layout.tour_var(v, i)]) {
                tour[i] = v;
                ++count;
            }
        }
        if (count != 1) {
            throw DecodeError("position " + std::to_string(i + 1) + " holds " + std::to_string(count) +
                              " cities instead of one");
        }
        if (seen_at[tour[i]] >= 0) {
            throw DecodeError("city " + std::to_string(tour[i] + 1) + " occupies positions " +
                              std::to_string(seen_at[tour[i]] + 1) + " and " + std::to_string(i + 1));
        }
        seen_at[tour[i]] = static_cast<int>(i);
    }
    if (tour[0] != 0) {
        throw DecodeError("position 1 holds city " + std::to_string(tour[0] + 1) + " instead of the depot");
    }
    PickingPlan picks(layout.num_items());
    for (std::size_t k = 0; k < picks.size(); ++k) {
        picks[k] = assignment[layout.pick_var(k)] ? 1 : 0;
    }
    return Solution::evaluate(instance, std::move(tour), std::move(picks));
}

std::vector<std::uint8_t> encode_assignment(const VariableLayout& layout, const Solution& solution) {
    if (solution.tour().size() != layout.num_cities() || solution.picks().size() != layout.num_items()) {
        throw InvalidArgument("solution does not match the layout");
    }
    std::vector<std::uint8_t> x(layout.total_vars(), 0);
    for (std::size_t i = 0; i < solution.tour().size(); ++i) {
        x[layout.tour_var(solution.tour()[i], i)] = 1;
    }
    for (std::size_t k = 0; k < solution.picks().size(); ++k) {
        x[layout.pick_var(k)] = solution.picks()[k];
    }
    return x;
}

} // namespace bittp
