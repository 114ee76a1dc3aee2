#include "bittp/cqm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "bittp/error.hpp"
#include "bittp/model.hpp"

namespace bittp {

namespace {

double tolerance_for(double bound) {
    return kFeasibilityTolerance * std::max(1.0, std::abs(bound));
}

nlohmann::json linear_to_wire(const QuadraticForm& form) {
    auto arr = nlohmann::json::array();
    for (const auto& t : form.linear()) {
        arr.push_back(nlohmann::json::array({t.var, t.coef}));
    }
    return arr;
}

nlohmann::json quadratic_to_wire(const QuadraticForm& form) {
    auto arr = nlohmann::json::array();
    for (const auto& t : form.quadratic()) {
        arr.push_back(nlohmann::json::array({t.i, t.j, t.coef}));
    }
    return arr;
}

QuadraticForm form_from_wire(const nlohmann::json& doc) {
    QuadraticForm form;
    for (const auto& t : doc.at("linear")) {
        form.add_linear(t.at(0).get<Var>(), t.at(1).get<double>());
    }
    for (const auto& t : doc.at("quadratic")) {
        form.add_quadratic(t.at(0).get<Var>(), t.at(1).get<Var>(), t.at(2).get<double>());
    }
    return form;
}

Sense sense_from_symbol(const std::string& s) {
    if (s == "<=") {
        return Sense::Le;
    }
    if (s == ">=") {
        return Sense::Ge;
    }
    if (s == "==") {
        return Sense::Eq;
    }
    throw ParseError("unknown constraint sense '" + s + "'", 0);
}

} // namespace

const char* sense_symbol(Sense sense) noexcept {
    switch (sense) {
    case Sense::Le:
        return "<=";
    case Sense::Ge:
        return ">=";
    case Sense::Eq:
        return "==";
    }
    return "?";
}

double Constraint::violation(std::span<const std::uint8_t> x) const {
    const double v = lhs.evaluate(x);
    switch (sense) {
    case Sense::Le:
        return std::max(0.0, v - rhs);
    case Sense::Ge:
        return std::max(0.0, rhs - v);
    case Sense::Eq:
        return std::abs(v - rhs);
    }
    return 0.0;
}

bool Constraint::satisfied(std::span<const std::uint8_t> x) const {
    return violation(x) <= tolerance_for(rhs);
}

Var CqmModel::add_variable() {
    return static_cast<Var>(num_vars_++);
}

void CqmModel::check_range(const QuadraticForm& form) const {
    if (form.var_bound() > num_vars_) {
        throw InvalidArgument("expression references variable " + std::to_string(form.var_bound() - 1) +
                              " but the model has " + std::to_string(num_vars_));
    }
}

void CqmModel::set_objective(QuadraticForm objective) {
    objective.canonicalize();
    check_range(objective);
    objective_ = std::move(objective);
}

std::size_t CqmModel::add_constraint(QuadraticForm lhs, Sense sense, double rhs, std::string label) {
    lhs.canonicalize();
    if (lhs.empty()) {
        throw InvalidArgument("constraint '" + label + "' has an empty expression");
    }
    check_range(lhs);
    constraints_.push_back({std::move(lhs), sense, rhs, std::move(label)});
    return constraints_.size() - 1;
}

double CqmModel::objective_value(std::span<const std::uint8_t> x) const {
    return objective_.evaluate(x);
}

bool CqmModel::is_feasible(std::span<const std::uint8_t> x) const {
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return c.satisfied(x); });
}

std::vector<std::size_t> CqmModel::violated(std::span<const std::uint8_t> x) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < constraints_.size(); ++j) {
        if (!constraints_[j].satisfied(x)) {
            out.push_back(j);
        }
    }
    return out;
}

double IsingModel::energy(std::span<const std::int8_t> spins) const {
    if (spins.size() < h.size()) {
        throw InvalidArgument("spin vector shorter than the bias vector");
    }
    double e = offset;
    for (std::size_t i = 0; i < h.size(); ++i) {
        e += h[i] * spins[i];
    }
    for (const auto& c : couplings) {
        if (c.i >= spins.size() || c.j >= spins.size()) {
            throw InvalidArgument("coupling references a spin out of range");
        }
        e += c.coef * spins[c.i] * spins[c.j];
    }
    return e;
}

CqmModel qubo_from_ising(const IsingModel& ising) {
    std::size_t n = ising.h.size();
    for (const auto& c : ising.couplings) {
        n = std::max<std::size_t>(n, std::max(c.i, c.j) + 1);
    }
    // s = 2x - 1
    QuadraticForm q;
    q.add_offset(ising.offset);
    for (std::size_t i = 0; i < ising.h.size(); ++i) {
        q.add_linear(static_cast<Var>(i), 2.0 * ising.h[i]);
        q.add_offset(-ising.h[i]);
    }
    for (const auto& c : ising.couplings) {
        if (c.i == c.j) {
            q.add_offset(c.coef);
            continue;
        }
        q.add_quadratic(c.i, c.j, 4.0 * c.coef);
        q.add_linear(c.i, -2.0 * c.coef);
        q.add_linear(c.j, -2.0 * c.coef);
        q.add_offset(c.coef);
    }
    CqmModel model(n);
    model.set_objective(std::move(q));
    return model;
}

double SlackEncoding::max_value() const noexcept {
    return unit * (std::ldexp(1.0, static_cast<int>(bits)) - 1.0);
}

namespace {

double slack_value(const SlackEncoding& s, std::span<const std::uint8_t> full) {
    double v = 0.0;
    for (std::size_t k = 0; k < s.bits; ++k) {
        if (full[s.first_var + k]) {
            v += std::ldexp(1.0, static_cast<int>(k));
        }
    }
    return v * s.unit;
}

} // namespace

double LoweredModel::penalty(std::span<const std::uint8_t> full) const {
    if (full.size() != num_vars_) {
        throw InvalidArgument("lowered assignment has " + std::to_string(full.size()) + " entries, expected " +
                              std::to_string(num_vars_));
    }
    double p = 0.0;
    for (const auto& t : penalties_) {
        const double r = t.residual.evaluate(full) + t.slack.sign * slack_value(t.slack, full);
        p += t.weight * r * r;
    }
    return p;
}

double LoweredModel::energy(std::span<const std::uint8_t> full) const {
    return penalty(full) + objective_.evaluate(full);
}

std::vector<std::uint8_t> LoweredModel::complete_slack(std::span<const std::uint8_t> model_assignment) const {
    if (model_assignment.size() != num_model_vars_) {
        throw InvalidArgument("model assignment has " + std::to_string(model_assignment.size()) +
                              " entries, expected " + std::to_string(num_model_vars_));
    }
    std::vector<std::uint8_t> full(num_vars_, 0);
    std::copy(model_assignment.begin(), model_assignment.end(), full.begin());
    for (const auto& t : penalties_) {
        if (t.slack.bits == 0) {
            continue;
        }
        const double r = t.residual.evaluate(full);
        const double top = std::ldexp(1.0, static_cast<int>(t.slack.bits)) - 1.0;
        const double ideal = std::clamp(std::round(-t.slack.sign * r / t.slack.unit), 0.0, top);
        auto code = static_cast<std::uint64_t>(ideal);
        for (std::size_t k = 0; k < t.slack.bits; ++k) {
            full[t.slack.first_var + k] = static_cast<std::uint8_t>((code >> k) & 1U);
        }
    }
    return full;
}

QuadraticForm LoweredModel::to_quadratic() const {
    QuadraticForm q = objective_;
    for (const auto& t : penalties_) {
        if (!t.residual.is_linear()) {
            throw InvalidArgument("constraint '" + t.label + "' is quadratic; its penalty is not a QUBO");
        }
        std::vector<LinearTerm> terms(t.residual.linear().begin(), t.residual.linear().end());
        for (std::size_t k = 0; k < t.slack.bits; ++k) {
            terms.push_back({static_cast<Var>(t.slack.first_var + k),
                             t.slack.sign * t.slack.unit * std::ldexp(1.0, static_cast<int>(k))});
        }
        // (c + sum a_i x_i)^2 with x_i^2 = x_i
        const double c = t.residual.offset();
        q.add_offset(t.weight * c * c);
        for (std::size_t a = 0; a < terms.size(); ++a) {
            q.add_linear(terms[a].var, t.weight * (terms[a].coef * terms[a].coef + 2.0 * c * terms[a].coef));
            for (std::size_t b = a + 1; b < terms.size(); ++b) {
                q.add_quadratic(terms[a].var, terms[b].var, 2.0 * t.weight * terms[a].coef * terms[b].coef);
            }
        }
    }
    q.canonicalize();
    return q;
}

LoweredModel lower_unconstrained(const QuadraticForm& qubo, std::size_t num_vars) {
    LoweredModel out;
    out.objective_ = qubo;
    out.objective_.canonicalize();
    if (out.objective_.var_bound() > num_vars) {
        throw InvalidArgument("QUBO references variables beyond num_vars");
    }
    out.num_model_vars_ = num_vars;
    out.num_vars_ = num_vars;
    return out;
}

LoweredModel lower_to_qubo(const CqmModel& model, std::span<const double> penalties) {
    const auto constraints = model.constraints();
    if (penalties.size() != constraints.size()) {
        throw InvalidArgument("expected one penalty weight per constraint");
    }
    LoweredModel out;
    out.objective_ = model.objective();
    out.num_model_vars_ = model.num_vars();
    std::size_t next_var = model.num_vars();

    for (std::size_t j = 0; j < constraints.size(); ++j) {
        const auto& c = constraints[j];
        if (!(penalties[j] > 0.0) || !std::isfinite(penalties[j])) {
            throw InvalidArgument("penalty for constraint '" + c.label + "' must be positive");
        }
        PenaltyTerm term;
        term.weight = penalties[j];
        term.label = c.label;
        term.residual = c.lhs;

        const bool integral = c.lhs.has_integral_coefs();
        double rhs = c.rhs;
        double range = 0.0;
        if (c.sense == Sense::Le) {
            if (integral) {
                rhs = std::floor(c.rhs + tolerance_for(c.rhs));
            }
            range = rhs - c.lhs.lower_bound();
            term.slack.sign = 1.0;
        } else if (c.sense == Sense::Ge) {
            if (integral) {
                rhs = std::ceil(c.rhs - tolerance_for(c.rhs));
            }
            range = c.lhs.upper_bound() - rhs;
            term.slack.sign = -1.0;
        }
        term.residual.add_offset(-rhs);

        if (c.sense != Sense::Eq && range > 0.0) {
            term.slack.first_var = next_var;
            if (integral) {
                const auto r = static_cast<std::uint64_t>(std::llround(range));
                term.slack.bits = static_cast<std::size_t>(std::bit_width(r));
                term.slack.unit = 1.0;
            } else {
                // Fractional range: resolve to a quarter of the smallest coefficient, capped at 24 bits.
                double smallest = c.lhs.max_abs_coef();
                for (const auto& t : c.lhs.linear()) {
                    smallest = std::min(smallest, std::abs(t.coef));
                }
                for (const auto& t : c.lhs.quadratic()) {
                    smallest = std::min(smallest, std::abs(t.coef));
                }
                const double steps = std::ceil(4.0 * range / smallest);
                term.slack.bits = std::clamp<std::size_t>(
                    static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(std::min(steps, 1.6e7)))), 1, 24);
                term.slack.unit = range / (std::ldexp(1.0, static_cast<int>(term.slack.bits)) - 1.0);
            }
            next_var += term.slack.bits;
        }
        term.residual.canonicalize();
        out.penalties_.push_back(std::move(term));
    }
    out.num_vars_ = next_var;
    return out;
}

SampleSet::SampleSet(std::vector<Sample> samples) : samples_(std::move(samples)) {
    std::stable_sort(samples_.begin(), samples_.end(), [](const Sample& a, const Sample& b) {
        if (a.feasible != b.feasible) {
            return a.feasible;
        }
        return a.energy < b.energy;
    });
}

const Sample* SampleSet::lowest_energy() const noexcept {
    const Sample* best = nullptr;
    for (const auto& s : samples_) {
        if (!best || s.energy < best->energy) {
            best = &s;
        }
    }
    return best;
}

const Sample* SampleSet::best_feasible() const noexcept {
    return !samples_.empty() && samples_.front().feasible ? &samples_.front() : nullptr;
}

std::size_t SampleSet::num_feasible() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(samples_.begin(), samples_.end(), [](const Sample& s) { return s.feasible; }));
}

nlohmann::json cqm_to_wire(const CqmModel& model) {
    nlohmann::json doc;
    doc["vars"] = model.num_vars();
    doc["objective"] = {{"linear", linear_to_wire(model.objective())},
                        {"quadratic", quadratic_to_wire(model.objective())},
                        {"offset", model.objective().offset()}};
    auto constraints = nlohmann::json::array();
    for (const auto& c : model.constraints()) {
        constraints.push_back({{"linear", linear_to_wire(c.lhs)},
                               {"quadratic", quadratic_to_wire(c.lhs)},
                               {"sense", sense_symbol(c.sense)},
                               {"bound", c.rhs - c.lhs.offset()},
                               {"label", c.label}});
    }
    doc["constraints"] = std::move(constraints);
    return doc;
}

CqmModel cqm_from_wire(const nlohmann::json& doc) {
    try {
        CqmModel model(doc.at("vars").get<std::size_t>());
        const auto& obj = doc.at("objective");
        auto objective = form_from_wire(obj);
        objective.add_offset(obj.at("offset").get<double>());
        model.set_objective(std::move(objective));
        for (const auto& c : doc.at("constraints")) {
            model.add_constraint(form_from_wire(c), sense_from_symbol(c.at("sense").get<std::string>()),
                                 c.at("bound").get<double>(), c.value("label", std::string{}));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid model document: ") + e.what(), 0);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid model document: ") + e.what(), 0);
    }
}

} // namespace bittp
