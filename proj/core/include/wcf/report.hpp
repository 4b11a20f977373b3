#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wcf/footprint.hpp"
#include "wcf/ingest.hpp"
#include "wcf/scheduler.hpp"

namespace wcf {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Provenance header embedded in every emitted report. run_id() hashes all
// fields except the wall clock, so reruns on identical inputs share it.
struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    std::string config_digest;  // empty when the command takes no config
    std::vector<std::pair<std::string, std::string>> input_digests;
    std::string tool_version{kToolVersion};
    std::string wall_clock_utc;

    static RunManifest make(std::string command,
                            std::vector<std::string> arguments);

    std::string run_id() const;
};

// Hex-encoded SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// ---- CSV emission (headers are versioned; values are shortest
//      round-trip decimal, so rereading reproduces bits) ----

void write_per_slot_csv(std::ostream& out, const FootprintReport& report,
                        const RunManifest& manifest);

void write_environment_csv(std::ostream& out, const EnvironmentSeries& env);
EnvironmentSeries read_environment_csv(std::istream& in, Location location);

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const RunManifest& manifest);

void write_hour_profile_csv(std::ostream& out, const HourProfile& profile,
                            const RunManifest& manifest);

// ---- JSON summaries (schemas shipped under schema/) ----

struct EstimateParams {
    std::string location_id;
    TimePoint start{};
    double total_energy_kwh = 0.0;
    double duration_hours = 0.0;
    double pue = 1.0;
    double cycles_of_concentration = 5.0;
    double wue_floor_l_per_kwh = 0.01;
};

std::string estimate_summary_json(const RunManifest& manifest,
                                  const EstimateParams& params,
                                  const FootprintTotals& totals,
                                  std::string_view per_slot_path);

struct SweepParams {
    std::vector<std::string> location_ids;
    TimePoint first{};
    TimePoint last{};
    std::optional<std::int64_t> stride_hours;  // empty for the monthly preset
    bool monthly = false;
    double total_energy_kwh = 0.0;
    double duration_hours = 0.0;
    double pue = 1.0;
};

std::string sweep_summary_json(const RunManifest& manifest,
                               const SweepParams& params,
                               const SweepResult& result,
                               const std::vector<SweepCell>& frontier,
                               std::string_view matrix_path);

struct RankHoursParams {
    std::string location_id;
    TimePoint first{};
    TimePoint last{};
    double pue = 1.0;
};

std::string rank_hours_summary_json(const RunManifest& manifest,
                                    const RankHoursParams& params,
                                    const HourProfile& profile,
                                    std::string_view csv_path);

struct InferenceParams {
    double energy_kwh = 0.0;
    double pue = 1.0;
    double ewif_l_per_kwh = 0.0;
    double wue_on_min = 0.0;
    double wue_on_max = 0.0;  // equal to wue_on_min for a single value
    double bottle_l = 0.5;
};

struct InferenceResult {
    double water_per_query_min_l = 0.0;
    double water_per_query_max_l = 0.0;
    double queries_per_bottle_min = 0.0;  // at the high-water end
    double queries_per_bottle_max = 0.0;
};

std::string inference_summary_json(const RunManifest& manifest,
                                   const InferenceParams& params,
                                   const InferenceResult& result);

}  // namespace wcf
