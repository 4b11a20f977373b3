#include "wcf/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "wcf/errors.hpp"

namespace wcf {

std::vector<TimePoint> SweepSpec::starts() const {
    if (explicit_starts) return *explicit_starts;
    std::vector<TimePoint> grid;
    const auto step = kSlotLength * stride_hours;
    for (TimePoint t = first; t <= last; t += step) grid.push_back(t);
    return grid;
}

void SweepSpec::validate() const {
    job.validate();
    if (location_ids.empty()) {
        throw ArgumentError("sweep needs at least one location");
    }
    std::set<std::string> seen(location_ids.begin(), location_ids.end());
    if (seen.size() != location_ids.size()) {
        throw ArgumentError("sweep location ids must be unique");
    }
    if (explicit_starts) {
        if (explicit_starts->empty()) {
            throw ArgumentError("explicit start list is empty");
        }
        for (std::size_t i = 0; i < explicit_starts->size(); ++i) {
            if (!hour_aligned((*explicit_starts)[i])) {
                throw ArgumentError("sweep starts must be hour-aligned");
            }
            if (i > 0 && (*explicit_starts)[i] <= (*explicit_starts)[i - 1]) {
                throw ArgumentError(
                    "explicit starts must be strictly increasing");
            }
        }
        return;
    }
    if (first > last) {
        throw ArgumentError("start range first must be <= last");
    }
    if (stride_hours < 1) {
        throw ArgumentError("stride must be >= 1 hour, got " +
                            std::to_string(stride_hours));
    }
    if (!hour_aligned(first)) {
        throw ArgumentError("sweep starts must be hour-aligned");
    }
}

namespace {

// Tie-break order for best cells: value, then earliest start, then
// lexicographic location id.
bool better_cell(const SweepCell& a, const SweepCell& b, double a_value,
                 double b_value) {
    if (a_value != b_value) return a_value < b_value;
    if (a.start != b.start) return a.start < b.start;
    return a.location_id < b.location_id;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec,
                  const std::map<std::string, EnvironmentSeries>& envs) {
    spec.validate();

    std::vector<std::string> ids = spec.location_ids;
    std::sort(ids.begin(), ids.end());
    for (const std::string& id : ids) {
        if (!envs.contains(id)) {
            throw ArgumentError("no environment series for location '" + id +
                                "'");
        }
    }
    const std::vector<TimePoint> starts = spec.starts();

    SweepResult result;
    result.cells.reserve(ids.size() * starts.size());
    // Cells are independent; any parallel evaluation must write into this
    // fixed (location, start) order before ranking.
    for (const std::string& id : ids) {
        const EnvironmentSeries& env = envs.at(id);
        for (const TimePoint start : starts) {
            SweepCell cell;
            cell.location_id = id;
            cell.start = start;
            try {
                const FootprintReport report = footprint(spec.job, env, start);
                cell.w_total_l = report.totals.w_total_l;
                cell.w_on_l = report.totals.w_on_l;
                cell.w_off_l = report.totals.w_off_l;
                cell.carbon_kg = report.totals.carbon_kg;
                cell.feasible = true;
            } catch (const WindowError&) {
                cell.feasible = false;
            }
            result.cells.push_back(std::move(cell));
        }
    }

    double min_total = std::numeric_limits<double>::infinity();
    double max_total = 0.0;
    bool any_feasible = false;
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const SweepCell& cell = result.cells[i];
        if (!cell.feasible) continue;
        if (!any_feasible) {
            any_feasible = true;
            result.best_water_index = i;
            result.best_carbon_index = i;
        } else {
            if (better_cell(cell, result.cells[result.best_water_index],
                            cell.w_total_l,
                            result.cells[result.best_water_index].w_total_l)) {
                result.best_water_index = i;
            }
            if (better_cell(cell, result.cells[result.best_carbon_index],
                            cell.carbon_kg,
                            result.cells[result.best_carbon_index].carbon_kg)) {
                result.best_carbon_index = i;
            }
        }
        min_total = std::min(min_total, cell.w_total_l);
        max_total = std::max(max_total, cell.w_total_l);
    }
    if (!any_feasible) {
        throw WindowError("sweep has no feasible (location, start) cell");
    }
    result.spread = min_total > 0.0
                        ? max_total / min_total
                        : std::numeric_limits<double>::infinity();
    return result;
}

std::vector<TimePoint> monthly_starts(TimePoint first, TimePoint last) {
    std::vector<TimePoint> starts;
    TimePoint t = (first == month_start(first)) ? first
                                                : next_month_start(first);
    while (t <= last) {
        starts.push_back(t);
        t = next_month_start(t);
    }
    return starts;
}

HourProfile rank_hours(const EnvironmentSeries& env, TimePoint first,
                       TimePoint last, double pue) {
    if (!std::isfinite(pue) || pue < 1.0) {
        throw ArgumentError("pue must be >= 1, got " + std::to_string(pue));
    }
    const TimePoint last_slot = env.timestamp_at(env.slot_count() - 1);
    if (first > last || last < env.start_time() || first > last_slot) {
        throw WindowError("period [" + format_iso8601_utc(first) + ", " +
                          format_iso8601_utc(last) +
                          "] does not intersect the series [" +
                          format_iso8601_utc(env.start_time()) + ", " +
                          format_iso8601_utc(last_slot) + "]");
    }
    if (first < env.start_time() || last > last_slot) {
        throw WindowError("period [" + format_iso8601_utc(first) + ", " +
                          format_iso8601_utc(last) +
                          "] extends beyond the series [" +
                          format_iso8601_utc(env.start_time()) + ", " +
                          format_iso8601_utc(last_slot) + "]");
    }

    HourProfile profile;
    profile.location_id = env.location().id;
    profile.first = first;
    profile.last = last;
    profile.pue = pue;

    std::array<double, 24> sum_on{}, sum_total{}, sum_carbon{};
    std::array<std::size_t, 24> count{};
    for (std::size_t i = 0; i < env.slot_count(); ++i) {
        const TimePoint ts = env.timestamp_at(i);
        if (ts < first || ts > last) continue;
        const int hour = hour_of_day_utc(ts);
        sum_on[hour] += env.wue_on_at(i);
        sum_total[hour] += env.wue_on_at(i) + pue * env.wue_off_at(i);
        sum_carbon[hour] += env.carbon_at(i);
        ++count[hour];
    }
    for (int h = 0; h < 24; ++h) {
        HourProfileEntry& entry = profile.per_hour[h];
        entry.slot_count = count[h];
        entry.has_data = count[h] > 0;
        if (entry.has_data) {
            const double n = static_cast<double>(count[h]);
            entry.mean_wue_on = sum_on[h] / n;
            entry.mean_wue_total = sum_total[h] / n;
            entry.mean_carbon = sum_carbon[h] / n;
        }
    }
    return profile;
}

std::vector<SweepCell> pareto_frontier(const SweepResult& result) {
    std::vector<SweepCell> cells;
    for (const SweepCell& cell : result.cells) {
        if (cell.feasible) cells.push_back(cell);
    }
    if (cells.empty()) {
        throw ArgumentError("pareto_frontier needs at least one feasible cell");
    }

    // Deduplicate exact (water, carbon) ties first; the earliest start
    // (then lexicographic id) represents the group.
    std::sort(cells.begin(), cells.end(),
              [](const SweepCell& a, const SweepCell& b) {
                  if (a.w_total_l != b.w_total_l)
                      return a.w_total_l < b.w_total_l;
                  if (a.carbon_kg != b.carbon_kg)
                      return a.carbon_kg < b.carbon_kg;
                  if (a.start != b.start) return a.start < b.start;
                  return a.location_id < b.location_id;
              });
    cells.erase(std::unique(cells.begin(), cells.end(),
                            [](const SweepCell& a, const SweepCell& b) {
                                return a.w_total_l == b.w_total_l &&
                                       a.carbon_kg == b.carbon_kg;
                            }),
                cells.end());

    // A cell loses only to one strictly better in both objectives. Scan in
    // water order, carrying the best carbon seen at strictly lower water.
    std::vector<SweepCell> frontier;
    double best_carbon_below = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < cells.size()) {
        std::size_t j = i;
        double group_min_carbon = std::numeric_limits<double>::infinity();
        while (j < cells.size() && cells[j].w_total_l == cells[i].w_total_l) {
            if (cells[j].carbon_kg <= best_carbon_below) {
                frontier.push_back(cells[j]);
            }
            group_min_carbon = std::min(group_min_carbon, cells[j].carbon_kg);
            ++j;
        }
        best_carbon_below = std::min(best_carbon_below, group_min_carbon);
        i = j;
    }
    return frontier;
}

}  // namespace wcf
