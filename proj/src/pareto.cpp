#include "bittp/pareto.hpp"

#include <algorithm>
#include <cmath>

#include "bittp/error.hpp"

namespace bittp {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept {
    return a.f <= b.f && a.g <= b.g && (a.f < b.f || a.g < b.g);
}

std::vector<ObjectivePoint> filter_nondominated(std::span<const ObjectivePoint> points) {
    std::vector<ObjectivePoint> sorted(points.begin(), points.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        return a.f != b.f ? a.f < b.f : a.g < b.g;
    });
    std::vector<ObjectivePoint> front;
    for (const auto& p : sorted) {
        // With f ascending, p survives iff its g beats every g seen so far.
        if (front.empty() || p.g < front.back().g) {
            front.push_back(p);
        }
    }
    return front;
}

Normalization Normalization::over(std::span<const std::vector<ObjectivePoint>> sets) {
    Normalization n;
    bool first = true;
    for (const auto& set : sets) {
        for (const auto& p : set) {
            if (first) {
                n = {p.f, p.f, p.g, p.g};
                first = false;
                continue;
            }
            n.f_min = std::min(n.f_min, p.f);
            n.f_max = std::max(n.f_max, p.f);
            n.g_min = std::min(n.g_min, p.g);
            n.g_max = std::max(n.g_max, p.g);
        }
    }
    return n;
}

ObjectivePoint Normalization::apply(const ObjectivePoint& p) const noexcept {
    const double fr = f_max - f_min;
    const double gr = g_max - g_min;
    return {fr > 0.0 ? (p.f - f_min) / fr : 0.0, gr > 0.0 ? (p.g - g_min) / gr : 0.0, p.tag};
}

double hypervolume_scaled(std::span<const ObjectivePoint> points) {
    std::vector<ObjectivePoint> inside;
    for (const auto& p : points) {
        if (p.f < 1.0 && p.g < 1.0) {
            inside.push_back(p);
        }
    }
    const auto front = filter_nondominated(inside);
    double area = 0.0;
    for (std::size_t k = 0; k < front.size(); ++k) {
        const double next_f = k + 1 < front.size() ? front[k + 1].f : 1.0;
        area += (next_f - front[k].f) * (1.0 - front[k].g);
    }
    return area;
}

double hypervolume(std::span<const std::vector<ObjectivePoint>> sets, std::size_t target) {
    if (target >= sets.size()) {
        throw InvalidArgument("hypervolume target index out of range");
    }
    const auto norm = Normalization::over(sets);
    std::vector<ObjectivePoint> scaled;
    for (const auto& p : sets[target]) {
        scaled.push_back(norm.apply(p));
    }
    return hypervolume_scaled(scaled);
}

std::vector<double> hypervolumes(std::span<const std::vector<ObjectivePoint>> sets) {
    std::vector<double> out;
    for (std::size_t t = 0; t < sets.size(); ++t) {
        out.push_back(hypervolume(sets, t));
    }
    return out;
}

nlohmann::json front_to_json(std::span<const ObjectivePoint> front, std::optional<double> hv,
                             std::optional<Normalization> normalization) {
    nlohmann::json doc;
    auto points = nlohmann::json::array();
    for (const auto& p : front) {
        points.push_back({{"f", p.f}, {"g", p.g}});
    }
    doc["points"] = std::move(points);
    if (hv) {
        doc["hv"] = *hv;
    }
    if (normalization) {
        doc["normalization"] = {{"f_min", normalization->f_min},
                                {"f_max", normalization->f_max},
                                {"g_min", normalization->g_min},
                                {"g_max", normalization->g_max}};
    }
    return doc;
}

std::vector<ObjectivePoint> front_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
        throw ParseError("front document needs a 'points' array", 0);
    }
    std::vector<ObjectivePoint> out;
    for (const auto& p : doc["points"]) {
        if (!p.is_object() || !p.contains("f") || !p.contains("g") || !p["f"].is_number() || !p["g"].is_number()) {
            throw ParseError("front point needs numeric 'f' and 'g'", 0);
        }
        const double f = p["f"].get<double>();
        const double g = p["g"].get<double>();
        if (!std::isfinite(f) || !std::isfinite(g)) {
            throw ParseError("front point is not finite", 0);
        }
        out.push_back({f, g, std::nullopt});
    }
    return out;
}

} // namespace bittp
