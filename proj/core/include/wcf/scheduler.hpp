#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcf/footprint.hpp"
#include "wcf/ingest.hpp"
#include "wcf/time.hpp"

namespace wcf {

struct SweepSpec {
    JobSpec job;
    std::vector<std::string> location_ids;
    TimePoint first{};
    TimePoint last{};
    std::int64_t stride_hours = 24;

    // When set (e.g. by the monthly preset) these replace the stride grid.
    std::optional<std::vector<TimePoint>> explicit_starts;

    // Candidate starts in ascending order.
    std::vector<TimePoint> starts() const;

    // Throws ArgumentError: requires first <= last, stride >= 1, at least
    // one location.
    void validate() const;
};

struct SweepCell {
    std::string location_id;
    TimePoint start{};
    double w_total_l = 0.0;
    double w_on_l = 0.0;
    double w_off_l = 0.0;
    double carbon_kg = 0.0;
    bool feasible = false;
};

struct SweepResult {
    // One cell per (location, start), ordered by location id then start.
    std::vector<SweepCell> cells;
    std::size_t best_water_index = 0;
    std::size_t best_carbon_index = 0;
    // max/min of feasible w_total_l.
    double spread = 1.0;

    const SweepCell& best_water() const { return cells[best_water_index]; }
    const SweepCell& best_carbon() const { return cells[best_carbon_index]; }
};

// Evaluates the job footprint for every (location, start) pair. Starts
// whose window overruns the series are marked infeasible and excluded from
// rankings. Best-cell ties break on earliest start, then lexicographic
// location id. Throws WindowError when no cell is feasible.
SweepResult sweep(const SweepSpec& spec,
                  const std::map<std::string, EnvironmentSeries>& envs);

// First-of-month 00:00 UTC instants within [first, last].
std::vector<TimePoint> monthly_starts(TimePoint first, TimePoint last);

struct HourProfileEntry {
    bool has_data = false;
    std::size_t slot_count = 0;
    double mean_wue_on = 0.0;
    // wue_on + pue * wue_off, averaged.
    double mean_wue_total = 0.0;
    double mean_carbon = 0.0;
};

struct HourProfile {
    std::string location_id;
    TimePoint first{};
    TimePoint last{};
    double pue = 1.0;
    std::array<HourProfileEntry, 24> per_hour{};
};

// Arithmetic means per UTC hour-of-day over all slots in [first, last].
// Hours with no slots in the period are flagged absent. Throws WindowError
// if the period misses the series entirely or is empty.
HourProfile rank_hours(const EnvironmentSeries& env, TimePoint first,
                       TimePoint last, double pue);

// Feasible cells not strictly dominated in (w_total_l, carbon_kg): a cell
// is dropped only when another feasible cell is strictly lower in both
// objectives, or duplicates its value pair (one representative survives,
// per the best-cell tie-break). Sorted by ascending water.
std::vector<SweepCell> pareto_frontier(const SweepResult& result);

}  // namespace wcf
