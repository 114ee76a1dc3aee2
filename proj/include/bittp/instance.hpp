#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace bittp {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// An item that can be stolen. `city` is a 0-based city index; never the depot.
struct Item {
    double profit = 0.0;
    double weight = 0.0;
    std::size_t city = 0;
};

enum class EdgeWeightType { Ceil2D, Explicit };

/// ceil of the Euclidean distance, the TSPLIB CEIL_2D convention.
double ceil_2d(Point a, Point b);

/// Immutable traveling-thief instance.
///
/// Cities are 0-based here; the depot is city 0. File formats and reports use
/// 1-based ids. The renting ratio is carried for round-tripping only and takes
/// no part in any objective.
class Instance {
public:
    struct Params {
        std::string name;
        std::string knapsack_type;
        double capacity = 0.0;
        double min_speed = 0.0;
        double max_speed = 0.0;
        double renting_ratio = 0.0;
        EdgeWeightType edge_weight_type = EdgeWeightType::Explicit;
    };

    /// `distances` is row-major N*N. `coords` may be empty for explicit instances.
    /// Throws InvalidArgument on any invariant violation.
    Instance(Params params, std::vector<double> distances, std::vector<Point> coords, std::vector<Item> items);

    const std::string& name() const noexcept { return params_.name; }
    const std::string& knapsack_type() const noexcept { return params_.knapsack_type; }
    std::size_t num_cities() const noexcept { return num_cities_; }
    std::size_t num_items() const noexcept { return items_.size(); }
    double capacity() const noexcept { return params_.capacity; }
    double min_speed() const noexcept { return params_.min_speed; }
    double max_speed() const noexcept { return params_.max_speed; }
    double renting_ratio() const noexcept { return params_.renting_ratio; }
    EdgeWeightType edge_weight_type() const noexcept { return params_.edge_weight_type; }

    bool has_coords() const noexcept { return !coords_.empty(); }
    std::span<const Point> coords() const noexcept { return coords_; }
    double distance(std::size_t u, std::size_t v) const noexcept { return distances_[u * num_cities_ + v]; }
    std::span<const double> distance_matrix() const noexcept { return distances_; }

    std::span<const Item> items() const noexcept { return items_; }
    const Item& item(std::size_t k) const { return items_.at(k); }
    /// Item ids located at `city`, ascending.
    std::span<const std::size_t> items_at(std::size_t city) const { return items_by_city_.at(city); }
    /// max over cities of the number of items located there.
    std::size_t max_items_per_city() const noexcept;

    double total_item_weight() const noexcept;
    double total_item_profit() const noexcept;

    /// Non-fatal findings, e.g. items heavier than the knapsack.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    Params params_;
    std::size_t num_cities_ = 0;
    std::vector<double> distances_;
    std::vector<Point> coords_;
    std::vector<Item> items_;
    std::vector<std::vector<std::size_t>> items_by_city_;
    std::vector<std::string> warnings_;
};

/// Parse the TTP text format. Errors carry the offending line number.
Instance parse_instance(std::istream& in);
/// Parse from a file; `.json` files use the JSON document schema, anything else the TTP text format.
Instance load_instance(const std::filesystem::path& path);

/// Explicit-distance instance for synthetic tests. Item cities are 0-based.
Instance build_instance(const std::vector<std::vector<double>>& distance, std::vector<Item> items, double capacity,
                        double min_speed, double max_speed, std::string name = "synthetic");

/// Instance with CEIL_2D distances computed from `coords`.
Instance build_instance_from_coords(std::vector<Point> coords, std::vector<Item> items, double capacity,
                                    double min_speed, double max_speed, std::string name = "synthetic");

/// Write the TTP text format. Explicit instances get a FULL_MATRIX EDGE_WEIGHT_SECTION.
std::string serialize_instance(const Instance& instance);

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

} // namespace bittp
