#include "wcf/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "wcf/errors.hpp"

namespace wcf {

namespace {

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
    while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                           text[end - 1] == '\r')) {
        --end;
    }
    return std::string(text.substr(begin, end - begin));
}

std::string lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    }
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(pos)));
            break;
        }
        fields.push_back(
            trim(std::string_view(line).substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, std::size_t line,
                    const char* column) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("column '" + std::string(column) +
                             "': not a number: '" + field + "'",
                         line);
    }
    if (!std::isfinite(value)) {
        throw ParseError("column '" + std::string(column) +
                             "': non-finite value",
                         line);
    }
    return value;
}

// Reads the next data line, skipping blanks and '#' comments.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        line = stripped;
        return true;
    }
    return false;
}

TimePoint parse_hour_timestamp(const std::string& field, std::size_t lineno) {
    TimePoint t;
    try {
        t = parse_iso8601_utc(field);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
    }
    if (!hour_aligned(t)) {
        throw ValidationError("line " + std::to_string(lineno) +
                              ": timestamp '" + field +
                              "' is not an hour start");
    }
    return t;
}

}  // namespace

Parsed<WeatherSample> parse_weather_csv(std::istream& in) {
    Parsed<WeatherSample> out;
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) {
        throw ParseError("empty weather file: header row required");
    }

    const std::vector<std::string> header = split_csv(line);
    int col_ts = -1, col_dry = -1, col_rh = -1, col_wb = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "timestamp") {
            col_ts = static_cast<int>(i);
        } else if (name == "dry_bulb_c") {
            col_dry = static_cast<int>(i);
        } else if (name == "relative_humidity_pct") {
            col_rh = static_cast<int>(i);
        } else if (name == "wet_bulb_c") {
            col_wb = static_cast<int>(i);
        } else {
            out.warnings.push_back("ignoring unknown weather column '" +
                                   header[i] + "'");
        }
    }
    if (col_ts < 0 || col_dry < 0 || col_rh < 0) {
        throw ParseError(
            "weather header must name timestamp, dry_bulb_c, "
            "relative_humidity_pct",
            lineno);
    }

    bool sorted = true;
    while (next_line(in, line, lineno)) {
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        }
        WeatherSample sample;
        sample.timestamp = parse_hour_timestamp(fields[col_ts], lineno);
        sample.dry_bulb_c = parse_number(fields[col_dry], lineno, "dry_bulb_c");
        sample.relative_humidity_pct =
            parse_number(fields[col_rh], lineno, "relative_humidity_pct");
        if (sample.relative_humidity_pct < 0.0 ||
            sample.relative_humidity_pct > 100.0) {
            throw ValidationError(
                "line " + std::to_string(lineno) + ": relative_humidity_pct " +
                fields[col_rh] + " outside [0, 100]");
        }
        if (col_wb >= 0 && !fields[col_wb].empty()) {
            sample.wet_bulb_c = parse_number(fields[col_wb], lineno, "wet_bulb_c");
        }
        if (!out.samples.empty() &&
            sample.timestamp < out.samples.back().timestamp) {
            sorted = false;
        }
        out.samples.push_back(sample);
    }

    if (!sorted) {
        std::stable_sort(out.samples.begin(), out.samples.end(),
                         [](const WeatherSample& a, const WeatherSample& b) {
                             return a.timestamp < b.timestamp;
                         });
        out.warnings.push_back("weather rows were out of order; sorted");
    }
    for (std::size_t i = 1; i < out.samples.size(); ++i) {
        if (out.samples[i].timestamp == out.samples[i - 1].timestamp) {
            throw ValidationError(
                "duplicate weather timestamp " +
                format_iso8601_utc(out.samples[i].timestamp));
        }
    }
    return out;
}

Parsed<FuelMixSample> parse_fuelmix_csv(std::istream& in) {
    Parsed<FuelMixSample> out;
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) {
        throw ParseError("empty fuel-mix file: header row required");
    }

    const std::vector<std::string> header = split_csv(line);
    int col_ts = -1, col_fuel = -1, col_gen = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "timestamp") {
            col_ts = static_cast<int>(i);
        } else if (name == "fuel_type") {
            col_fuel = static_cast<int>(i);
        } else if (name == "generation_mwh") {
            col_gen = static_cast<int>(i);
        } else {
            out.warnings.push_back("ignoring unknown fuel-mix column '" +
                                   header[i] + "'");
        }
    }
    if (col_ts < 0 || col_fuel < 0 || col_gen < 0) {
        throw ParseError(
            "fuel-mix header must name timestamp, fuel_type, generation_mwh",
            lineno);
    }

    std::map<TimePoint, FuelMix> merged;
    std::set<std::string> unknown_labels;
    while (next_line(in, line, lineno)) {
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        }
        const TimePoint ts = parse_hour_timestamp(fields[col_ts], lineno);
        const std::string label = fields[col_fuel];
        FuelType fuel = FuelType::Other;
        if (const auto known = fuel_from_label(label)) {
            fuel = *known;
        } else if (unknown_labels.insert(lower(label)).second) {
            out.warnings.push_back("line " + std::to_string(lineno) +
                                   ": unknown fuel type '" + label +
                                   "' mapped to other");
        }
        double mwh = parse_number(fields[col_gen], lineno, "generation_mwh");
        if (mwh < 0.0) {
            out.warnings.push_back("line " + std::to_string(lineno) +
                                   ": negative generation " + fields[col_gen] +
                                   " for " + label + " clamped to 0");
            mwh = 0.0;
        }
        merged[ts].add_generation_mwh(fuel, mwh);
    }

    out.samples.reserve(merged.size());
    for (auto& [ts, mix] : merged) {
        out.samples.push_back(FuelMixSample{ts, mix});
    }
    return out;
}

EnvironmentSeries::EnvironmentSeries(Location location, TimePoint start,
                                     std::vector<double> wue_on_l_per_kwh,
                                     std::vector<double> wue_off_l_per_kwh,
                                     std::vector<double> carbon_kg_per_kwh)
    : location_(std::move(location)),
      start_(start),
      wue_on_(std::move(wue_on_l_per_kwh)),
      wue_off_(std::move(wue_off_l_per_kwh)),
      carbon_(std::move(carbon_kg_per_kwh)) {
    if (wue_on_.empty() || wue_on_.size() != wue_off_.size() ||
        wue_on_.size() != carbon_.size()) {
        throw ArgumentError("environment series needs equal, nonzero lengths");
    }
    if (!hour_aligned(start_)) {
        throw ArgumentError("environment series must start on an hour");
    }
    for (std::size_t i = 0; i < wue_on_.size(); ++i) {
        const bool ok = std::isfinite(wue_on_[i]) && wue_on_[i] >= 0.0 &&
                        std::isfinite(wue_off_[i]) && wue_off_[i] >= 0.0 &&
                        std::isfinite(carbon_[i]) && carbon_[i] >= 0.0;
        if (!ok) {
            throw ArgumentError("environment series has a negative or "
                                "non-finite intensity at slot " +
                                std::to_string(i));
        }
    }
}

TimePoint EnvironmentSeries::end_time() const {
    return start_ + kSlotLength * static_cast<std::int64_t>(slot_count());
}

TimePoint EnvironmentSeries::timestamp_at(std::size_t i) const {
    return start_ + kSlotLength * static_cast<std::int64_t>(i);
}

std::optional<std::size_t> EnvironmentSeries::index_of(TimePoint t) const {
    if (!hour_aligned(t) || t < start_) return std::nullopt;
    const auto offset = static_cast<std::size_t>(
        (t - start_).count() / kSlotLength.count());
    if (offset >= slot_count()) return std::nullopt;
    return offset;
}

namespace {

std::int64_t hours_between(TimePoint a, TimePoint b) {
    return (b - a).count() / kSlotLength.count();
}

// Expands a sorted hourly trace to a contiguous hourly grid, linearly
// interpolating across internal holes. Holes longer than gap_limit_hours
// that touch [window_start, window_end] are errors; holes entirely outside
// the window are filled without complaint (they never reach the output).
template <typename Sample, typename Interp>
std::vector<Sample> fill_gaps(const std::vector<Sample>& samples,
                              TimePoint window_start, TimePoint window_end,
                              int gap_limit_hours, const char* trace_name,
                              Interp interpolate) {
    std::vector<Sample> filled;
    filled.reserve(static_cast<std::size_t>(
        hours_between(samples.front().timestamp, samples.back().timestamp) + 1));
    filled.push_back(samples.front());
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Sample& prev = samples[i - 1];
        const Sample& next = samples[i];
        if (next.timestamp <= prev.timestamp) {
            throw ValidationError(std::string(trace_name) +
                                  " trace timestamps must be strictly "
                                  "increasing");
        }
        const std::int64_t missing =
            hours_between(prev.timestamp, next.timestamp) - 1;
        if (missing > 0) {
            const bool touches_window =
                prev.timestamp + kSlotLength <= window_end &&
                next.timestamp - kSlotLength >= window_start;
            if (touches_window && missing > gap_limit_hours) {
                throw WindowError(
                    std::string(trace_name) + " gap of " +
                    std::to_string(missing) + " hours in (" +
                    format_iso8601_utc(prev.timestamp) + ", " +
                    format_iso8601_utc(next.timestamp) +
                    ") exceeds gap limit of " +
                    std::to_string(gap_limit_hours) + " hours");
            }
            for (std::int64_t k = 1; k <= missing; ++k) {
                const double alpha =
                    static_cast<double>(k) / static_cast<double>(missing + 1);
                filled.push_back(interpolate(prev, next, alpha,
                                             prev.timestamp + kSlotLength * k));
            }
        }
        filled.push_back(next);
    }
    return filled;
}

double lerp(double a, double b, double alpha) { return a + (b - a) * alpha; }

}  // namespace

BuiltEnvironment build_environment(const Location& location,
                                   const std::vector<WeatherSample>& weather,
                                   const std::vector<FuelMixSample>& fuel,
                                   const EfficiencyTables& tables,
                                   const CoolingTowerParams& params,
                                   int gap_limit_hours) {
    params.validate();
    tables.validate();
    if (gap_limit_hours < 0) {
        throw ArgumentError("gap_limit_hours must be >= 0");
    }
    if (weather.empty() || fuel.empty()) {
        throw WindowError("cannot build environment for '" + location.id +
                          "': empty weather or fuel-mix trace");
    }

    const TimePoint start =
        std::max(weather.front().timestamp, fuel.front().timestamp);
    const TimePoint end =
        std::min(weather.back().timestamp, fuel.back().timestamp);
    if (start > end) {
        throw WindowError(
            "weather and fuel-mix traces do not overlap: weather [" +
            format_iso8601_utc(weather.front().timestamp) + ", " +
            format_iso8601_utc(weather.back().timestamp) + "], fuel mix [" +
            format_iso8601_utc(fuel.front().timestamp) + ", " +
            format_iso8601_utc(fuel.back().timestamp) + "]");
    }

    const std::vector<WeatherSample> weather_filled = fill_gaps(
        weather, start, end, gap_limit_hours, "weather",
        [](const WeatherSample& a, const WeatherSample& b, double alpha,
           TimePoint ts) {
            WeatherSample s;
            s.timestamp = ts;
            s.dry_bulb_c = lerp(a.dry_bulb_c, b.dry_bulb_c, alpha);
            s.relative_humidity_pct =
                lerp(a.relative_humidity_pct, b.relative_humidity_pct, alpha);
            if (a.wet_bulb_c && b.wet_bulb_c) {
                s.wet_bulb_c = lerp(*a.wet_bulb_c, *b.wet_bulb_c, alpha);
            }
            return s;
        });
    const std::vector<FuelMixSample> fuel_filled = fill_gaps(
        fuel, start, end, gap_limit_hours, "fuel-mix",
        [](const FuelMixSample& a, const FuelMixSample& b, double alpha,
           TimePoint ts) {
            FuelMixSample s;
            s.timestamp = ts;
            for (FuelType f : all_fuel_types()) {
                s.mix.set_generation_mwh(
                    f, lerp(a.mix.generation_mwh(f), b.mix.generation_mwh(f),
                            alpha));
            }
            return s;
        });

    const std::size_t n = static_cast<std::size_t>(hours_between(start, end)) + 1;
    const std::size_t w_base =
        static_cast<std::size_t>(hours_between(weather_filled.front().timestamp, start));
    const std::size_t f_base =
        static_cast<std::size_t>(hours_between(fuel_filled.front().timestamp, start));

    std::vector<double> wue_on(n), wue_off(n), carbon(n);
    std::size_t outside_window = 0;
    TimePoint first_outside{};
    for (std::size_t i = 0; i < n; ++i) {
        const WeatherSample& w = weather_filled[w_base + i];
        const FuelMixSample& f = fuel_filled[f_base + i];
        const TimePoint ts = start + kSlotLength * static_cast<std::int64_t>(i);

        double wet_bulb_c;
        if (w.wet_bulb_c) {
            wet_bulb_c = *w.wet_bulb_c;
        } else {
            if (!wet_bulb_window_ok(w.dry_bulb_c, w.relative_humidity_pct)) {
                if (outside_window++ == 0) first_outside = ts;
            }
            try {
                wet_bulb_c =
                    wet_bulb_from(w.dry_bulb_c, w.relative_humidity_pct);
            } catch (const ArgumentError& e) {
                throw ValidationError("weather at " + format_iso8601_utc(ts) +
                                      ": " + e.what());
            }
        }
        try {
            wue_on[i] = cooling_tower_wue(
                WetBulbF(fahrenheit_from_celsius(wet_bulb_c)), params);
            wue_off[i] = offsite_wue(f.mix, tables);
            carbon[i] = carbon_intensity(f.mix, tables);
        } catch (const ArgumentError& e) {
            throw ValidationError("slot " + format_iso8601_utc(ts) + ": " +
                                  e.what());
        }
    }

    BuiltEnvironment built{
        EnvironmentSeries(location, start, std::move(wue_on),
                          std::move(wue_off), std::move(carbon)),
        {}};
    if (outside_window > 0) {
        built.warnings.push_back(
            std::to_string(outside_window) +
            " slot(s) outside the wet-bulb approximation window (first at " +
            format_iso8601_utc(first_outside) +
            "); estimates there are rough");
    }
    return built;
}

const Location* Config::find_location(std::string_view id) const {
    for (const Location& loc : locations) {
        if (loc.id == id) return &loc;
    }
    return nullptr;
}

}  // namespace wcf
