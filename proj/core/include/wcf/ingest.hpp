#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcf/fuel.hpp"
#include "wcf/time.hpp"
#include "wcf/wue.hpp"

namespace wcf {

struct Location {
    std::string id;               // short unique key
    std::string display_name;
    std::string grid_region;      // key naming the fuel-mix trace
    std::string weather_station;  // key naming the weather trace
};

struct WeatherSample {
    TimePoint timestamp;  // UTC hour start
    double dry_bulb_c = 0.0;
    double relative_humidity_pct = 0.0;
    // Measured wet bulb; used verbatim when present, derived otherwise.
    std::optional<double> wet_bulb_c;
};

struct FuelMixSample {
    TimePoint timestamp;  // UTC hour start
    FuelMix mix;
};

template <typename Sample>
struct Parsed {
    std::vector<Sample> samples;
    std::vector<std::string> warnings;
};

// Weather CSV: header "timestamp,dry_bulb_c,relative_humidity_pct" with an
// optional "wet_bulb_c" column, ISO-8601 UTC timestamps, '#' comment lines
// allowed. Rows out of order are sorted with a warning; duplicate
// timestamps are rejected.
Parsed<WeatherSample> parse_weather_csv(std::istream& in);

// Fuel-mix CSV, long format: "timestamp,fuel_type,generation_mwh". Rows
// sharing a timestamp merge into one sample; repeated (timestamp, fuel)
// rows accumulate. Unknown fuel labels fold into Other and negative
// generation clamps to zero, each with a warning.
Parsed<FuelMixSample> parse_fuelmix_csv(std::istream& in);

// Hourly environmental intensities for one location over a contiguous
// window. Immutable once built.
class EnvironmentSeries {
public:
    EnvironmentSeries(Location location, TimePoint start,
                      std::vector<double> wue_on_l_per_kwh,
                      std::vector<double> wue_off_l_per_kwh,
                      std::vector<double> carbon_kg_per_kwh);

    const Location& location() const { return location_; }
    std::size_t slot_count() const { return wue_on_.size(); }
    TimePoint start_time() const { return start_; }
    // One past the last slot's start.
    TimePoint end_time() const;

    TimePoint timestamp_at(std::size_t i) const;
    double wue_on_at(std::size_t i) const { return wue_on_[i]; }
    double wue_off_at(std::size_t i) const { return wue_off_[i]; }
    double carbon_at(std::size_t i) const { return carbon_[i]; }

    // Slot index holding t, if t is hour-aligned and inside the window.
    std::optional<std::size_t> index_of(TimePoint t) const;

private:
    Location location_;
    TimePoint start_;
    std::vector<double> wue_on_;
    std::vector<double> wue_off_;
    std::vector<double> carbon_;
};

struct BuiltEnvironment {
    EnvironmentSeries series;
    std::vector<std::string> warnings;
};

// Aligns the two traces on their common window, fills internal gaps of at
// most gap_limit_hours by linear interpolation of the raw inputs (never of
// derived intensities), then computes per-slot wue_on / wue_off / carbon.
// Throws WindowError for an empty intersection or an over-limit gap.
BuiltEnvironment build_environment(const Location& location,
                                   const std::vector<WeatherSample>& weather,
                                   const std::vector<FuelMixSample>& fuel,
                                   const EfficiencyTables& tables,
                                   const CoolingTowerParams& params,
                                   int gap_limit_hours);

struct Config {
    std::vector<Location> locations;
    EfficiencyTables tables = EfficiencyTables::defaults();
    CoolingTowerParams cooling;
    double pue_default = 1.2;
    int gap_limit_hours = 3;

    const Location* find_location(std::string_view id) const;
};

// Strict JSON config loader. Known keys: locations[], ewif{}, carbon{},
// exclude_hydro_water, cycles_of_concentration, wue_floor, pue_default,
// gap_limit_hours. Unknown keys are errors; missing ewif/carbon entries
// fall back to EfficiencyTables::defaults().
Config load_config(const std::filesystem::path& path);

}  // namespace wcf
