#include "wcf/report.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "wcf/errors.hpp"

namespace wcf {

namespace {

using nlohmann::json;

// Shortest decimal that round-trips the exact double, so rereading a
// report reproduces bit-identical values.
std::string format_double(double value) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                         value);
    return std::string(buf.data(), ptr);
}

std::string hex_digest(const unsigned char* digest, unsigned length) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr);
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const char* data, std::size_t size) {
        EVP_DigestUpdate(ctx_, data, size);
    }

    std::string hex() {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned length = 0;
        EVP_DigestFinal_ex(ctx_, digest, &length);
        return hex_digest(digest, length);
    }

private:
    EVP_MD_CTX* ctx_;
};

json manifest_json(const RunManifest& m) {
    json inputs = json::array();
    for (const auto& [path, digest] : m.input_digests) {
        inputs.push_back({{"path", path}, {"sha256", digest}});
    }
    return json{{"command", m.command},
                {"arguments", m.arguments},
                {"config_digest", m.config_digest},
                {"inputs", inputs},
                {"run_id", m.run_id()},
                {"tool_version", m.tool_version},
                {"wall_clock", m.wall_clock_utc}};
}

json totals_json(const FootprintTotals& totals) {
    return json{{"w_on_l", totals.w_on_l},
                {"w_off_l", totals.w_off_l},
                {"w_total_l", totals.w_total_l},
                {"carbon_kg", totals.carbon_kg}};
}

json cell_json(const SweepCell& cell) {
    return json{{"location_id", cell.location_id},
                {"start", format_iso8601_utc(cell.start)},
                {"w_on_l", cell.w_on_l},
                {"w_off_l", cell.w_off_l},
                {"w_total_l", cell.w_total_l},
                {"carbon_kg", cell.carbon_kg}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunManifest RunManifest::make(std::string command,
                              std::vector<std::string> arguments) {
    RunManifest m;
    m.command = std::move(command);
    m.arguments = std::move(arguments);
    m.wall_clock_utc = format_iso8601_utc(
        std::chrono::time_point_cast<std::chrono::seconds>(
            std::chrono::system_clock::now()));
    return m;
}

std::string RunManifest::run_id() const {
    Sha256 hash;
    const auto feed = [&hash](std::string_view text) {
        hash.update(text.data(), text.size());
        hash.update("\x1f", 1);
    };
    feed(command);
    for (const auto& arg : arguments) feed(arg);
    feed(config_digest);
    for (const auto& [path, digest] : input_digests) {
        feed(path);
        feed(digest);
    }
    feed(tool_version);
    return hash.hex().substr(0, 16);
}

std::string sha256_hex(std::string_view bytes) {
    Sha256 hash;
    hash.update(bytes.data(), bytes.size());
    return hash.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    Sha256 hash;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        hash.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return hash.hex();
}

void write_per_slot_csv(std::ostream& out, const FootprintReport& report,
                        const RunManifest& manifest) {
    out << "# wcf per-slot footprint v1\n";
    out << "# run_id: " << manifest.run_id() << "\n";
    out << "timestamp,energy_kwh,w_on_l,w_off_l,carbon_kg\n";
    for (const SlotFootprint& s : report.per_slot) {
        out << format_iso8601_utc(s.timestamp) << ','
            << format_double(s.energy_kwh) << ',' << format_double(s.w_on_l)
            << ',' << format_double(s.w_off_l) << ','
            << format_double(s.carbon_kg) << '\n';
    }
}

void write_environment_csv(std::ostream& out, const EnvironmentSeries& env) {
    out << "# wcf environment series v1\n";
    out << "# location: " << env.location().id << "\n";
    out << "timestamp,wue_on_l_per_kwh,wue_off_l_per_kwh,carbon_kg_per_kwh\n";
    for (std::size_t i = 0; i < env.slot_count(); ++i) {
        out << format_iso8601_utc(env.timestamp_at(i)) << ','
            << format_double(env.wue_on_at(i)) << ','
            << format_double(env.wue_off_at(i)) << ','
            << format_double(env.carbon_at(i)) << '\n';
    }
}

EnvironmentSeries read_environment_csv(std::istream& in, Location location) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::optional<TimePoint> start;
    TimePoint expected{};
    std::vector<double> wue_on, wue_off, carbon;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line !=
                "timestamp,wue_on_l_per_kwh,wue_off_l_per_kwh,"
                "carbon_kg_per_kwh") {
                throw ParseError("unexpected environment CSV header", lineno);
            }
            have_header = true;
            continue;
        }
        std::stringstream fields(line);
        std::string ts_text, on_text, off_text, carbon_text;
        if (!std::getline(fields, ts_text, ',') ||
            !std::getline(fields, on_text, ',') ||
            !std::getline(fields, off_text, ',') ||
            !std::getline(fields, carbon_text)) {
            throw ParseError("expected 4 fields", lineno);
        }
        const TimePoint ts = parse_iso8601_utc(ts_text);
        if (!start) {
            start = ts;
        } else if (ts != expected) {
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": environment series must be contiguous "
                                  "hourly");
        }
        expected = ts + kSlotLength;
        const auto parse = [lineno](const std::string& text) {
            double v = 0.0;
            const auto [ptr, ec] =
                std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || ptr != text.data() + text.size()) {
                throw ParseError("not a number: '" + text + "'", lineno);
            }
            return v;
        };
        wue_on.push_back(parse(on_text));
        wue_off.push_back(parse(off_text));
        carbon.push_back(parse(carbon_text));
    }
    if (!start) {
        throw ParseError("environment CSV has no data rows");
    }
    return EnvironmentSeries(std::move(location), *start, std::move(wue_on),
                             std::move(wue_off), std::move(carbon));
}

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const RunManifest& manifest) {
    out << "# wcf sweep matrix v1\n";
    out << "# run_id: " << manifest.run_id() << "\n";
    out << "location_id,start,feasible,w_on_l,w_off_l,w_total_l,carbon_kg\n";
    for (const SweepCell& cell : result.cells) {
        out << cell.location_id << ',' << format_iso8601_utc(cell.start) << ','
            << (cell.feasible ? "true" : "false") << ',';
        if (cell.feasible) {
            out << format_double(cell.w_on_l) << ','
                << format_double(cell.w_off_l) << ','
                << format_double(cell.w_total_l) << ','
                << format_double(cell.carbon_kg);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

void write_hour_profile_csv(std::ostream& out, const HourProfile& profile,
                            const RunManifest& manifest) {
    out << "# wcf hour profile v1\n";
    out << "# run_id: " << manifest.run_id() << "\n";
    out << "hour,mean_wue_on_l_per_kwh,mean_wue_total_l_per_kwh,"
           "mean_carbon_kg_per_kwh\n";
    for (int h = 0; h < 24; ++h) {
        const HourProfileEntry& entry = profile.per_hour[h];
        out << h << ',';
        if (entry.has_data) {
            out << format_double(entry.mean_wue_on) << ','
                << format_double(entry.mean_wue_total) << ','
                << format_double(entry.mean_carbon);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

std::string estimate_summary_json(const RunManifest& manifest,
                                  const EstimateParams& params,
                                  const FootprintTotals& totals,
                                  std::string_view per_slot_path) {
    const json j{
        {"manifest", manifest_json(manifest)},
        {"parameters",
         {{"location_id", params.location_id},
          {"start", format_iso8601_utc(params.start)},
          {"total_energy_kwh", params.total_energy_kwh},
          {"duration_hours", params.duration_hours},
          {"pue", params.pue},
          {"cycles_of_concentration", params.cycles_of_concentration},
          {"wue_floor_l_per_kwh", params.wue_floor_l_per_kwh}}},
        {"totals", totals_json(totals)},
        {"per_slot_path", std::string(per_slot_path)}};
    return dump(j);
}

std::string sweep_summary_json(const RunManifest& manifest,
                               const SweepParams& params,
                               const SweepResult& result,
                               const std::vector<SweepCell>& frontier,
                               std::string_view matrix_path) {
    json frontier_json = json::array();
    for (const SweepCell& cell : frontier) frontier_json.push_back(cell_json(cell));

    std::size_t feasible = 0;
    for (const SweepCell& cell : result.cells) feasible += cell.feasible;

    json parameters{{"location_ids", params.location_ids},
                    {"first", format_iso8601_utc(params.first)},
                    {"last", format_iso8601_utc(params.last)},
                    {"monthly", params.monthly},
                    {"total_energy_kwh", params.total_energy_kwh},
                    {"duration_hours", params.duration_hours},
                    {"pue", params.pue}};
    if (params.stride_hours) parameters["stride_hours"] = *params.stride_hours;

    const json j{{"manifest", manifest_json(manifest)},
                 {"parameters", parameters},
                 {"results",
                  {{"best_water", cell_json(result.best_water())},
                   {"best_carbon", cell_json(result.best_carbon())},
                   {"spread", result.spread},
                   {"feasible_cells", feasible},
                   {"total_cells", result.cells.size()},
                   {"pareto_frontier", frontier_json}}},
                 {"matrix_path", std::string(matrix_path)}};
    return dump(j);
}

std::string rank_hours_summary_json(const RunManifest& manifest,
                                    const RankHoursParams& params,
                                    const HourProfile& profile,
                                    std::string_view csv_path) {
    json hours = json::array();
    for (int h = 0; h < 24; ++h) {
        const HourProfileEntry& entry = profile.per_hour[h];
        json row{{"hour", h}, {"has_data", entry.has_data}};
        if (entry.has_data) {
            row["mean_wue_on_l_per_kwh"] = entry.mean_wue_on;
            row["mean_wue_total_l_per_kwh"] = entry.mean_wue_total;
            row["mean_carbon_kg_per_kwh"] = entry.mean_carbon;
        }
        hours.push_back(row);
    }
    const json j{{"manifest", manifest_json(manifest)},
                 {"parameters",
                  {{"location_id", params.location_id},
                   {"first", format_iso8601_utc(params.first)},
                   {"last", format_iso8601_utc(params.last)},
                   {"pue", params.pue}}},
                 {"per_hour", hours},
                 {"profile_path", std::string(csv_path)}};
    return dump(j);
}

std::string inference_summary_json(const RunManifest& manifest,
                                   const InferenceParams& params,
                                   const InferenceResult& result) {
    const json j{{"manifest", manifest_json(manifest)},
                 {"parameters",
                  {{"energy_kwh", params.energy_kwh},
                   {"pue", params.pue},
                   {"ewif_l_per_kwh", params.ewif_l_per_kwh},
                   {"wue_on_min", params.wue_on_min},
                   {"wue_on_max", params.wue_on_max},
                   {"bottle_l", params.bottle_l}}},
                 {"results",
                  {{"water_per_query_min_l", result.water_per_query_min_l},
                   {"water_per_query_max_l", result.water_per_query_max_l},
                   {"queries_per_bottle_min", result.queries_per_bottle_min},
                   {"queries_per_bottle_max", result.queries_per_bottle_max}}}};
    return dump(j);
}

}  // namespace wcf
