#include "bittp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "bittp/error.hpp"
#include "format.hpp"

namespace bittp {

double ceil_2d(Point a, Point b) {
    return std::ceil(std::hypot(a.x - b.x, a.y - b.y));
}

Instance::Instance(Params params, std::vector<double> distances, std::vector<Point> coords, std::vector<Item> items)
    : params_(std::move(params)), distances_(std::move(distances)), coords_(std::move(coords)), items_(std::move(items)) {
    const auto n2 = distances_.size();
    num_cities_ = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n2))));
    if (num_cities_ == 0 || num_cities_ * num_cities_ != n2) {
        throw InvalidArgument("distance matrix must be square and non-empty");
    }
    if (!(params_.capacity > 0.0) || !std::isfinite(params_.capacity)) {
        throw InvalidArgument("capacity must be positive");
    }
    if (!(params_.min_speed > 0.0) || !std::isfinite(params_.max_speed)) {
        throw InvalidArgument("speeds must be positive and finite");
    }
    if (!(params_.min_speed < params_.max_speed)) {
        throw InvalidArgument("min speed must be strictly below max speed");
    }
    const std::size_t n = num_cities_;
    for (std::size_t u = 0; u < n; ++u) {
        if (distance(u, u) != 0.0) {
            throw InvalidArgument("distance matrix diagonal must be zero (city " + std::to_string(u + 1) + ")");
        }
        for (std::size_t v = 0; v < n; ++v) {
            const double d = distance(u, v);
            if (!(d >= 0.0) || !std::isfinite(d)) {
                throw InvalidArgument("distances must be finite and non-negative");
            }
            if (d != distance(v, u)) {
                throw InvalidArgument("distance matrix is not symmetric at (" + std::to_string(u + 1) + ", " +
                                      std::to_string(v + 1) + ")");
            }
        }
    }
    if (!coords_.empty() && coords_.size() != n) {
        throw InvalidArgument("coordinate count does not match the number of cities");
    }
    if (params_.edge_weight_type == EdgeWeightType::Ceil2D) {
        if (coords_.empty()) {
            throw InvalidArgument("CEIL_2D instances need coordinates");
        }
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (distance(u, v) != ceil_2d(coords_[u], coords_[v])) {
                    throw InvalidArgument("distance matrix disagrees with CEIL_2D coordinates");
                }
            }
        }
    }

    items_by_city_.assign(n, {});
    for (std::size_t k = 0; k < items_.size(); ++k) {
        const Item& it = items_[k];
        if (it.city == 0 || it.city >= n) {
            throw InvalidArgument("item " + std::to_string(k + 1) + " has city " + std::to_string(it.city + 1) +
                                  "; items must lie in cities 2.." + std::to_string(n));
        }
        if (!(it.profit > 0.0) || !(it.weight > 0.0) || !std::isfinite(it.profit) || !std::isfinite(it.weight)) {
            throw InvalidArgument("item " + std::to_string(k + 1) + " needs positive profit and weight");
        }
        if (it.weight > params_.capacity) {
            warnings_.push_back("item " + std::to_string(k + 1) + " weighs " + detail::format_number(it.weight) +
                                ", more than the capacity; it can never be picked");
        }
        items_by_city_[it.city].push_back(k);
    }
}

std::size_t Instance::max_items_per_city() const noexcept {
    std::size_t best = 0;
    for (const auto& ids : items_by_city_) {
        best = std::max(best, ids.size());
    }
    return best;
}

double Instance::total_item_weight() const noexcept {
    double s = 0.0;
    for (const auto& it : items_) {
        s += it.weight;
    }
    return s;
}

double Instance::total_item_profit() const noexcept {
    double s = 0.0;
    for (const auto& it : items_) {
        s += it.profit;
    }
    return s;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<long long> to_integer(std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

enum class Section { Header, Coords, EdgeWeights, Items, Done };

struct Line {
    std::size_t number;
    std::string text;
};

class TtpReader {
public:
    explicit TtpReader(std::istream& in) {
        std::string raw;
        std::size_t number = 0;
        while (std::getline(in, raw)) {
            ++number;
            auto text = trim(raw);
            if (!text.empty()) {
                lines_.push_back({number, std::move(text)});
            }
        }
        last_line_ = number;
    }

    Instance read() {
        std::size_t pos = 0;
        while (pos < lines_.size()) {
            const Line& line = lines_[pos];
            if (is_section(line.text)) {
                pos = read_section(pos);
                continue;
            }
            read_header(line);
            ++pos;
        }
        return finish();
    }

private:
    static bool is_section(std::string_view t) {
        return starts_with(t, "NODE_COORD_SECTION") || starts_with(t, "EDGE_WEIGHT_SECTION") ||
               starts_with(t, "ITEMS SECTION") || t == "EOF";
    }

    void read_header(const Line& line) {
        const auto colon = line.text.find(':');
        if (colon == std::string::npos) {
            throw ParseError("malformed header line '" + line.text + "'", line.number);
        }
        const std::string key = trim(std::string_view(line.text).substr(0, colon));
        const std::string value = trim(std::string_view(line.text).substr(colon + 1));
        auto number = [&]() {
            auto v = to_double(value);
            if (!v) {
                throw ParseError("header key " + key + " needs a number, got '" + value + "'", line.number);
            }
            return *v;
        };
        auto count = [&]() {
            auto v = to_integer(value);
            if (!v || *v < 0) {
                throw ParseError("header key " + key + " needs a non-negative integer, got '" + value + "'",
                                 line.number);
            }
            return static_cast<std::size_t>(*v);
        };
        if (key == "PROBLEM NAME" || key == "NAME") {
            params_.name = value;
        } else if (key == "KNAPSACK DATA TYPE") {
            params_.knapsack_type = value;
        } else if (key == "DIMENSION") {
            dimension_ = count();
            dimension_line_ = line.number;
        } else if (key == "NUMBER OF ITEMS") {
            num_items_ = count();
        } else if (key == "CAPACITY OF KNAPSACK") {
            params_.capacity = number();
            have_capacity_ = true;
        } else if (key == "MIN SPEED") {
            params_.min_speed = number();
            have_min_speed_ = true;
        } else if (key == "MAX SPEED") {
            params_.max_speed = number();
            have_max_speed_ = true;
        } else if (key == "RENTING RATIO") {
            params_.renting_ratio = number();
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value == "CEIL_2D") {
                params_.edge_weight_type = EdgeWeightType::Ceil2D;
            } else if (value == "EXPLICIT") {
                params_.edge_weight_type = EdgeWeightType::Explicit;
            } else {
                throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + value + "' (CEIL_2D or EXPLICIT)", line.number);
            }
            have_edge_type_ = true;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            if (value != "FULL_MATRIX") {
                throw ParseError("unsupported EDGE_WEIGHT_FORMAT '" + value + "' (FULL_MATRIX only)", line.number);
            }
        } else if (key == "COMMENT" || key == "TYPE") {
            // informational
        } else {
            throw ParseError("malformed header key '" + key + "'", line.number);
        }
    }

    void require_dimension(const Line& at) const {
        if (!dimension_) {
            throw ParseError("section before DIMENSION header", at.number);
        }
    }

    std::size_t read_section(std::size_t pos) {
        const Line& head = lines_[pos];
        if (head.text == "EOF") {
            return lines_.size();
        }
        if (starts_with(head.text, "NODE_COORD_SECTION")) {
            require_dimension(head);
            return read_coords(pos + 1);
        }
        if (starts_with(head.text, "EDGE_WEIGHT_SECTION")) {
            require_dimension(head);
            return read_matrix(pos + 1);
        }
        if (!num_items_) {
            throw ParseError("ITEMS SECTION before NUMBER OF ITEMS header", head.number);
        }
        return read_items(pos + 1);
    }

    std::size_t line_after(std::size_t pos) const {
        return pos < lines_.size() ? lines_[pos].number : last_line_ + 1;
    }

    std::size_t read_coords(std::size_t pos) {
        const std::size_t n = *dimension_;
        coords_.assign(n, Point{});
        std::vector<bool> seen(n, false);
        std::size_t found = 0;
        while (found < n) {
            if (pos >= lines_.size() || is_section(lines_[pos].text)) {
                throw ParseError("dimension mismatch: DIMENSION is " + std::to_string(n) + " but " +
                                     std::to_string(found) + " coordinate lines were found",
                                 line_after(pos));
            }
            const Line& line = lines_[pos];
            const auto tok = split_ws(line.text);
            std::optional<long long> idx;
            std::optional<double> x, y;
            if (tok.size() == 3) {
                idx = to_integer(tok[0]);
                x = to_double(tok[1]);
                y = to_double(tok[2]);
            }
            if (!idx || !x || !y) {
                throw ParseError("coordinate line must be 'index x y'", line.number);
            }
            if (*idx < 1 || static_cast<std::size_t>(*idx) > n) {
                throw ParseError("coordinate index " + std::to_string(*idx) + " outside 1.." + std::to_string(n),
                                 line.number);
            }
            const auto c = static_cast<std::size_t>(*idx - 1);
            if (seen[c]) {
                throw ParseError("duplicate coordinate index " + std::to_string(*idx), line.number);
            }
            seen[c] = true;
            coords_[c] = Point{*x, *y};
            ++found;
            ++pos;
        }
        if (pos < lines_.size() && !is_section(lines_[pos].text)) {
            throw ParseError("dimension mismatch: more than " + std::to_string(n) + " coordinate lines",
                             lines_[pos].number);
        }
        have_coords_ = true;
        return pos;
    }

    std::size_t read_matrix(std::size_t pos) {
        const std::size_t n = *dimension_;
        matrix_.clear();
        matrix_.reserve(n * n);
        while (matrix_.size() < n * n) {
            if (pos >= lines_.size() || is_section(lines_[pos].text)) {
                throw ParseError("dimension mismatch: EDGE_WEIGHT_SECTION holds " + std::to_string(matrix_.size()) +
                                     " of " + std::to_string(n * n) + " entries",
                                 line_after(pos));
            }
            for (auto tok : split_ws(lines_[pos].text)) {
                auto v = to_double(tok);
                if (!v) {
                    throw ParseError("bad edge weight '" + std::string(tok) + "'", lines_[pos].number);
                }
                matrix_.push_back(*v);
            }
            ++pos;
        }
        if (matrix_.size() != n * n) {
            throw ParseError("dimension mismatch: EDGE_WEIGHT_SECTION has too many entries", lines_[pos - 1].number);
        }
        have_matrix_ = true;
        return pos;
    }

    std::size_t read_items(std::size_t pos) {
        const std::size_t m = *num_items_;
        items_.assign(m, Item{});
        std::vector<bool> seen(m, false);
        std::size_t found = 0;
        while (found < m) {
            if (pos >= lines_.size() || is_section(lines_[pos].text)) {
                throw ParseError("item count mismatch: NUMBER OF ITEMS is " + std::to_string(m) + " but " +
                                     std::to_string(found) + " item lines were found",
                                 line_after(pos));
            }
            const Line& line = lines_[pos];
            const auto tok = split_ws(line.text);
            std::optional<long long> idx, city;
            std::optional<double> profit, weight;
            if (tok.size() == 4) {
                idx = to_integer(tok[0]);
                profit = to_double(tok[1]);
                weight = to_double(tok[2]);
                city = to_integer(tok[3]);
            }
            if (!idx || !profit || !weight || !city) {
                throw ParseError("item line must be 'index profit weight city'", line.number);
            }
            if (*idx < 1 || static_cast<std::size_t>(*idx) > m || seen[static_cast<std::size_t>(*idx - 1)]) {
                throw ParseError("bad or duplicate item index " + std::to_string(*idx), line.number);
            }
            if (dimension_ && (*city < 2 || static_cast<std::size_t>(*city) > *dimension_)) {
                throw ParseError("item " + std::to_string(*idx) + " has city " + std::to_string(*city) +
                                     " outside 2.." + std::to_string(*dimension_),
                                 line.number);
            }
            if (!dimension_) {
                throw ParseError("ITEMS SECTION before DIMENSION header", line.number);
            }
            if (!(*profit > 0.0) || !(*weight > 0.0)) {
                throw ParseError("item " + std::to_string(*idx) + " needs positive profit and weight", line.number);
            }
            const auto k = static_cast<std::size_t>(*idx - 1);
            seen[k] = true;
            items_[k] = Item{*profit, *weight, static_cast<std::size_t>(*city - 1)};
            ++found;
            ++pos;
        }
        if (pos < lines_.size() && !is_section(lines_[pos].text)) {
            throw ParseError("item count mismatch: more than " + std::to_string(m) + " item lines",
                             lines_[pos].number);
        }
        have_items_ = true;
        return pos;
    }

    Instance finish() {
        const std::size_t end = last_line_ + 1;
        if (!dimension_) {
            throw ParseError("missing DIMENSION header", end);
        }
        if (!num_items_) {
            throw ParseError("missing NUMBER OF ITEMS header", end);
        }
        if (!have_capacity_ || !have_min_speed_ || !have_max_speed_ || !have_edge_type_) {
            throw ParseError("missing one of CAPACITY OF KNAPSACK, MIN SPEED, MAX SPEED, EDGE_WEIGHT_TYPE", end);
        }
        if (*num_items_ > 0 && !have_items_) {
            throw ParseError("missing ITEMS SECTION", end);
        }
        const std::size_t n = *dimension_;
        if (n == 0) {
            throw ParseError("DIMENSION must be positive", dimension_line_);
        }
        std::vector<double> dist(n * n, 0.0);
        if (params_.edge_weight_type == EdgeWeightType::Ceil2D) {
            if (!have_coords_) {
                throw ParseError("CEIL_2D instance without NODE_COORD_SECTION", end);
            }
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) {
                    dist[u * n + v] = ceil_2d(coords_[u], coords_[v]);
                }
            }
        } else {
            if (!have_matrix_) {
                throw ParseError("EXPLICIT instance without EDGE_WEIGHT_SECTION", end);
            }
            dist = matrix_;
        }
        try {
            return Instance(params_, std::move(dist), have_coords_ ? coords_ : std::vector<Point>{}, items_);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), 0);
        }
    }

    std::vector<Line> lines_;
    std::size_t last_line_ = 0;
    Instance::Params params_;
    std::optional<std::size_t> dimension_;
    std::size_t dimension_line_ = 0;
    std::optional<std::size_t> num_items_;
    bool have_capacity_ = false;
    bool have_min_speed_ = false;
    bool have_max_speed_ = false;
    bool have_edge_type_ = false;
    bool have_coords_ = false;
    bool have_matrix_ = false;
    bool have_items_ = false;
    std::vector<Point> coords_;
    std::vector<double> matrix_;
    std::vector<Item> items_;
};

std::vector<double> flatten(const std::vector<std::vector<double>>& distance) {
    const std::size_t n = distance.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : distance) {
        if (row.size() != n) {
            throw InvalidArgument("distance matrix must be square");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

} // namespace

Instance parse_instance(std::istream& in) {
    return TtpReader(in).read();
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open instance file '" + path.string() + "'", 0);
    }
    if (path.extension() == ".json") {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON instance: ") + e.what(), 0);
        }
        return instance_from_json(doc);
    }
    return parse_instance(in);
}

Instance build_instance(const std::vector<std::vector<double>>& distance, std::vector<Item> items, double capacity,
                        double min_speed, double max_speed, std::string name) {
    Instance::Params p;
    p.name = std::move(name);
    p.capacity = capacity;
    p.min_speed = min_speed;
    p.max_speed = max_speed;
    p.edge_weight_type = EdgeWeightType::Explicit;
    return Instance(std::move(p), flatten(distance), {}, std::move(items));
}

Instance build_instance_from_coords(std::vector<Point> coords, std::vector<Item> items, double capacity,
                                    double min_speed, double max_speed, std::string name) {
    const std::size_t n = coords.size();
    std::vector<double> dist(n * n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            dist[u * n + v] = ceil_2d(coords[u], coords[v]);
        }
    }
    Instance::Params p;
    p.name = std::move(name);
    p.capacity = capacity;
    p.min_speed = min_speed;
    p.max_speed = max_speed;
    p.edge_weight_type = EdgeWeightType::Ceil2D;
    return Instance(std::move(p), std::move(dist), std::move(coords), std::move(items));
}

std::string serialize_instance(const Instance& instance) {
    using detail::format_number;
    std::ostringstream out;
    const std::size_t n = instance.num_cities();
    out << "PROBLEM NAME: \t" << instance.name() << '\n';
    if (!instance.knapsack_type().empty()) {
        out << "KNAPSACK DATA TYPE: \t" << instance.knapsack_type() << '\n';
    }
    out << "DIMENSION:\t" << n << '\n';
    out << "NUMBER OF ITEMS: \t" << instance.num_items() << '\n';
    out << "CAPACITY OF KNAPSACK: \t" << format_number(instance.capacity()) << '\n';
    out << "MIN SPEED: \t" << format_number(instance.min_speed()) << '\n';
    out << "MAX SPEED: \t" << format_number(instance.max_speed()) << '\n';
    out << "RENTING RATIO: \t" << format_number(instance.renting_ratio()) << '\n';
    if (instance.edge_weight_type() == EdgeWeightType::Ceil2D) {
        out << "EDGE_WEIGHT_TYPE:\tCEIL_2D\n";
    } else {
        out << "EDGE_WEIGHT_TYPE:\tEXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT:\tFULL_MATRIX\n";
    }
    if (instance.has_coords()) {
        out << "NODE_COORD_SECTION\t(INDEX, X, Y): \n";
        for (std::size_t c = 0; c < n; ++c) {
            out << c + 1 << '\t' << format_number(instance.coords()[c].x) << '\t'
                << format_number(instance.coords()[c].y) << '\n';
        }
    }
    if (instance.edge_weight_type() == EdgeWeightType::Explicit) {
        out << "EDGE_WEIGHT_SECTION\n";
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                out << (v ? "\t" : "") << format_number(instance.distance(u, v));
            }
            out << '\n';
        }
    }
    out << "ITEMS SECTION\t(INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER): \n";
    for (std::size_t k = 0; k < instance.num_items(); ++k) {
        const Item& it = instance.item(k);
        out << k + 1 << '\t' << format_number(it.profit) << '\t' << format_number(it.weight) << '\t' << it.city + 1
            << '\n';
    }
    return out.str();
}

nlohmann::json instance_to_json(const Instance& instance) {
    nlohmann::json doc;
    doc["name"] = instance.name();
    doc["capacity"] = instance.capacity();
    doc["min_speed"] = instance.min_speed();
    doc["max_speed"] = instance.max_speed();
    doc["renting_ratio"] = instance.renting_ratio();
    if (!instance.knapsack_type().empty()) {
        doc["knapsack_type"] = instance.knapsack_type();
    }
    const std::size_t n = instance.num_cities();
    if (instance.edge_weight_type() == EdgeWeightType::Ceil2D) {
        doc["edge_weight_type"] = "CEIL_2D";
    } else {
        doc["edge_weight_type"] = "EXPLICIT";
        auto rows = nlohmann::json::array();
        for (std::size_t u = 0; u < n; ++u) {
            auto row = nlohmann::json::array();
            for (std::size_t v = 0; v < n; ++v) {
                row.push_back(instance.distance(u, v));
            }
            rows.push_back(std::move(row));
        }
        doc["distances"] = std::move(rows);
    }
    if (instance.has_coords()) {
        auto coords = nlohmann::json::array();
        for (const auto& p : instance.coords()) {
            coords.push_back({p.x, p.y});
        }
        doc["coords"] = std::move(coords);
    }
    auto items = nlohmann::json::array();
    for (const auto& it : instance.items()) {
        items.push_back({{"profit", it.profit}, {"weight", it.weight}, {"city", it.city + 1}});
    }
    doc["items"] = std::move(items);
    return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
    try {
        Instance::Params p;
        p.name = doc.value("name", std::string("unnamed"));
        p.knapsack_type = doc.value("knapsack_type", std::string());
        p.capacity = doc.at("capacity").get<double>();
        p.min_speed = doc.at("min_speed").get<double>();
        p.max_speed = doc.at("max_speed").get<double>();
        p.renting_ratio = doc.value("renting_ratio", 0.0);

        std::vector<Point> coords;
        if (doc.contains("coords")) {
            for (const auto& c : doc.at("coords")) {
                if (!c.is_array() || c.size() != 2) {
                    throw ParseError("each coordinate must be an [x, y] pair", 0);
                }
                coords.push_back(Point{c[0].get<double>(), c[1].get<double>()});
            }
        }
        const std::string type =
            doc.value("edge_weight_type", std::string(doc.contains("distances") ? "EXPLICIT" : "CEIL_2D"));
        std::vector<double> dist;
        if (type == "CEIL_2D") {
            p.edge_weight_type = EdgeWeightType::Ceil2D;
            const std::size_t n = coords.size();
            dist.resize(n * n);
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) {
                    dist[u * n + v] = ceil_2d(coords[u], coords[v]);
                }
            }
        } else if (type == "EXPLICIT") {
            p.edge_weight_type = EdgeWeightType::Explicit;
            dist = flatten(doc.at("distances").get<std::vector<std::vector<double>>>());
        } else {
            throw ParseError("unsupported edge_weight_type '" + type + "'", 0);
        }

        std::vector<Item> items;
        for (const auto& it : doc.value("items", nlohmann::json::array())) {
            const auto city = it.at("city").get<long long>();
            if (city < 1) {
                throw ParseError("item city ids are 1-based", 0);
            }
            items.push_back(Item{it.at("profit").get<double>(), it.at("weight").get<double>(),
                                 static_cast<std::size_t>(city - 1)});
        }
        return Instance(std::move(p), std::move(dist), std::move(coords), std::move(items));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid instance document: ") + e.what(), 0);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0);
    }
}

} // namespace bittp
