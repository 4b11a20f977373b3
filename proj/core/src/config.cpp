#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "wcf/errors.hpp"
#include "wcf/ingest.hpp"

namespace wcf {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

double number_at(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) bad_key(key, "expected a number");
    return v.get<double>();
}

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown " + scope + " key '" + key + "'");
        }
    }
}

void apply_fuel_table(const json& obj, const std::string& scope,
                      std::array<double, kFuelTypeCount>& table) {
    if (!obj.is_object()) bad_key(scope, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const auto fuel = fuel_from_label(key);
        if (!fuel) {
            throw ConfigError("unknown fuel '" + key + "' in '" + scope + "'");
        }
        if (!value.is_number()) bad_key(scope + "." + key, "expected a number");
        const double v = value.get<double>();
        if (!std::isfinite(v) || v < 0.0) {
            bad_key(scope + "." + key, "must be finite and >= 0");
        }
        table[static_cast<std::size_t>(*fuel)] = v;
    }
}

Location parse_location(const json& obj, std::size_t index) {
    const std::string scope = "locations[" + std::to_string(index) + "]";
    if (!obj.is_object()) throw ConfigError(scope + ": expected an object");
    check_known_keys(
        obj, {"id", "display_name", "grid_region", "weather_station"}, scope);
    Location loc;
    for (const char* key : {"id", "grid_region", "weather_station"}) {
        if (!obj.contains(key) || !obj.at(key).is_string() ||
            obj.at(key).get<std::string>().empty()) {
            throw ConfigError(scope + ": '" + key +
                              "' must be a nonempty string");
        }
    }
    loc.id = obj.at("id").get<std::string>();
    loc.grid_region = obj.at("grid_region").get<std::string>();
    loc.weather_station = obj.at("weather_station").get<std::string>();
    loc.display_name = obj.contains("display_name")
                           ? obj.at("display_name").get<std::string>()
                           : loc.id;
    return loc;
}

}  // namespace

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    json root;
    try {
        root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ParseError("config " + path.string() + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config root must be an object");
    }
    check_known_keys(root,
                     {"locations", "ewif", "carbon", "exclude_hydro_water",
                      "cycles_of_concentration", "wue_floor", "pue_default",
                      "gap_limit_hours"},
                     "top-level");

    Config config;

    if (root.contains("locations")) {
        const json& locs = root.at("locations");
        if (!locs.is_array()) bad_key("locations", "expected an array");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < locs.size(); ++i) {
            Location loc = parse_location(locs[i], i);
            if (!seen.insert(loc.id).second) {
                throw ConfigError("duplicate location id '" + loc.id + "'");
            }
            config.locations.push_back(std::move(loc));
        }
    }

    if (root.contains("ewif")) {
        apply_fuel_table(root.at("ewif"), "ewif", config.tables.ewif_l_per_kwh);
    }
    if (root.contains("carbon")) {
        apply_fuel_table(root.at("carbon"), "carbon",
                         config.tables.carbon_kg_per_kwh);
    }
    if (root.contains("exclude_hydro_water")) {
        const json& v = root.at("exclude_hydro_water");
        if (!v.is_boolean()) bad_key("exclude_hydro_water", "expected a bool");
        config.tables.exclude_hydro_water = v.get<bool>();
    }

    config.cooling.cycles_of_concentration = number_at(
        root, "cycles_of_concentration", config.cooling.cycles_of_concentration);
    config.cooling.wue_floor_l_per_kwh =
        number_at(root, "wue_floor", config.cooling.wue_floor_l_per_kwh);
    config.pue_default = number_at(root, "pue_default", config.pue_default);

    if (root.contains("gap_limit_hours")) {
        const json& v = root.at("gap_limit_hours");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            bad_key("gap_limit_hours", "expected an integer >= 0");
        }
        config.gap_limit_hours = static_cast<int>(v.get<std::int64_t>());
    }

    try {
        config.cooling.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(
            "config key 'cycles_of_concentration' / 'wue_floor': " +
            std::string(e.what()));
    }
    try {
        config.tables.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!std::isfinite(config.pue_default) || config.pue_default < 1.0) {
        bad_key("pue_default", "must be >= 1");
    }
    return config;
}

}  // namespace wcf
