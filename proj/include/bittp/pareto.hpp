#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace bittp {

/// Both coordinates are minimized.
struct ObjectivePoint {
    double f = 0.0;
    double g = 0.0;
    /// Caller-defined tag, e.g. the band index or a solution id.
    std::optional<std::size_t> tag;
};

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept;

/// Non-dominated points sorted by ascending f (hence strictly descending g),
/// one per distinct (f, g); a duplicate keeps the tag of its first occurrence.
std::vector<ObjectivePoint> filter_nondominated(std::span<const ObjectivePoint> points);

struct Normalization {
    double f_min = 0.0;
    double f_max = 0.0;
    double g_min = 0.0;
    double g_max = 0.0;

    /// Min-max bounds over every point of every set.
    static Normalization over(std::span<const std::vector<ObjectivePoint>> sets);
    /// Scaled into [0, 1]; a coordinate with zero range maps to 0.
    ObjectivePoint apply(const ObjectivePoint& p) const noexcept;
};

/// Area dominated by already-scaled points with respect to the reference (1, 1).
double hypervolume_scaled(std::span<const ObjectivePoint> points);

/// Hypervolume of sets[target] after joint normalization over all sets.
double hypervolume(std::span<const std::vector<ObjectivePoint>> sets, std::size_t target);
/// Hypervolume of every set under the shared normalization.
std::vector<double> hypervolumes(std::span<const std::vector<ObjectivePoint>> sets);

/// {points: [{f, g}], normalization: {...}, hv} with hv and normalization optional.
nlohmann::json front_to_json(std::span<const ObjectivePoint> front, std::optional<double> hv = std::nullopt,
                             std::optional<Normalization> normalization = std::nullopt);
/// Reads the `points` array of a front document; throws ParseError when it is malformed.
std::vector<ObjectivePoint> front_from_json(const nlohmann::json& doc);

} // namespace bittp
