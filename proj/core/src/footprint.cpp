#include "wcf/footprint.hpp"

#include <cmath>
#include <string>

#include "wcf/errors.hpp"

namespace wcf {

namespace {

// Neumaier compensated summation; month-scale windows add ~1e3..1e4 small
// numbers and plain accumulation costs digits the report tolerances need.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            compensation_ += (sum_ - t) + value;
        } else {
            compensation_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Plain left-to-right accumulation up to this many slots keeps totals
// bit-identical to a naive reference sum; longer windows switch to
// compensated summation.
constexpr std::size_t kCompensationThreshold = 10000;

template <typename Get>
double total_over(const std::vector<SlotFootprint>& slots, Get get) {
    if (slots.size() <= kCompensationThreshold) {
        double sum = 0.0;
        for (const SlotFootprint& s : slots) sum += get(s);
        return sum;
    }
    CompensatedSum sum;
    for (const SlotFootprint& s : slots) sum.add(get(s));
    return sum.value();
}

constexpr double kSlotCountEpsilon = 1e-9;

}  // namespace

std::size_t JobSpec::slot_count() const {
    return static_cast<std::size_t>(
        std::ceil(duration_hours - kSlotCountEpsilon));
}

void JobSpec::validate() const {
    if (!std::isfinite(total_energy_kwh) || total_energy_kwh <= 0.0) {
        throw ArgumentError("total_energy_kwh must be > 0, got " +
                            std::to_string(total_energy_kwh));
    }
    if (!std::isfinite(duration_hours) || duration_hours <= 0.0) {
        throw ArgumentError("duration_hours must be > 0, got " +
                            std::to_string(duration_hours));
    }
    if (const auto* trace = std::get_if<ExplicitTrace>(&profile)) {
        if (trace->energy_kwh.size() != slot_count()) {
            throw ArgumentError(
                "explicit power trace has " +
                std::to_string(trace->energy_kwh.size()) + " slots; a " +
                std::to_string(duration_hours) + " hour job needs " +
                std::to_string(slot_count()));
        }
        CompensatedSum sum;
        for (double e : trace->energy_kwh) {
            if (!std::isfinite(e) || e < 0.0) {
                throw ArgumentError("explicit power trace entries must be "
                                    "finite and >= 0");
            }
            sum.add(e);
        }
        const double total = sum.value();
        if (std::abs(total - total_energy_kwh) >
            1e-9 * std::max(std::abs(total), std::abs(total_energy_kwh))) {
            throw ArgumentError("explicit power trace sums to " +
                                std::to_string(total) + " kWh, not " +
                                std::to_string(total_energy_kwh));
        }
    }
    if (const auto* constant = std::get_if<double>(&pue)) {
        if (!std::isfinite(*constant) || *constant < 1.0) {
            throw ArgumentError("pue must be >= 1, got " +
                                std::to_string(*constant));
        }
    } else {
        const auto& series = std::get<std::vector<double>>(pue);
        if (series.size() != slot_count()) {
            throw ArgumentError("per-slot pue series has " +
                                std::to_string(series.size()) +
                                " entries; job occupies " +
                                std::to_string(slot_count()) + " slots");
        }
        for (double p : series) {
            if (!std::isfinite(p) || p < 1.0) {
                throw ArgumentError("per-slot pue entries must be >= 1");
            }
        }
    }
}

double JobSpec::energy_for_slot(std::size_t i) const {
    if (const auto* trace = std::get_if<ExplicitTrace>(&profile)) {
        return trace->energy_kwh[i];
    }
    const double rate = total_energy_kwh / duration_hours;
    const std::size_t slots = slot_count();
    if (i + 1 < slots) return rate;
    // Final slot covers whatever fraction of an hour remains.
    const double last_fraction =
        duration_hours - static_cast<double>(slots - 1);
    return rate * last_fraction;
}

double JobSpec::pue_for_slot(std::size_t i) const {
    if (const auto* constant = std::get_if<double>(&pue)) return *constant;
    return std::get<std::vector<double>>(pue)[i];
}

FootprintReport footprint(const JobSpec& job, const EnvironmentSeries& env,
                          TimePoint start) {
    job.validate();
    const std::size_t slots = job.slot_count();

    const auto begin = env.index_of(start);
    if (!begin) {
        throw WindowError("start " + format_iso8601_utc(start) +
                          " is not an hour-aligned slot of the series [" +
                          format_iso8601_utc(env.start_time()) + ", " +
                          format_iso8601_utc(env.end_time()) + ")");
    }
    if (*begin + slots > env.slot_count()) {
        const std::size_t missing = *begin + slots - env.slot_count();
        throw WindowError("job starting " + format_iso8601_utc(start) +
                          " needs " + std::to_string(slots) +
                          " slots but the series ends " +
                          std::to_string(missing) + " slot(s) early at " +
                          format_iso8601_utc(env.end_time()));
    }

    FootprintReport report;
    report.per_slot.reserve(slots);
    for (std::size_t i = 0; i < slots; ++i) {
        const std::size_t slot = *begin + i;
        SlotFootprint s;
        s.timestamp = env.timestamp_at(slot);
        s.energy_kwh = job.energy_for_slot(i);
        const double pue = job.pue_for_slot(i);
        s.w_on_l = s.energy_kwh * env.wue_on_at(slot);
        s.w_off_l = s.energy_kwh * pue * env.wue_off_at(slot);
        s.carbon_kg = s.energy_kwh * pue * env.carbon_at(slot);
        report.per_slot.push_back(s);
    }
    report.totals.w_on_l =
        total_over(report.per_slot, [](const SlotFootprint& s) { return s.w_on_l; });
    report.totals.w_off_l =
        total_over(report.per_slot, [](const SlotFootprint& s) { return s.w_off_l; });
    report.totals.w_total_l = report.totals.w_on_l + report.totals.w_off_l;
    report.totals.carbon_kg = total_over(
        report.per_slot, [](const SlotFootprint& s) { return s.carbon_kg; });
    return report;
}

TrainingWater fixed_wue_training_water(double total_energy_kwh,
                                       double wue_on_l_per_kwh, double pue,
                                       double ewif_l_per_kwh) {
    const auto positive = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw ArgumentError(std::string(name) + " must be > 0, got " +
                                std::to_string(v));
        }
    };
    positive(total_energy_kwh, "total_energy_kwh");
    positive(wue_on_l_per_kwh, "wue_on");
    positive(pue, "pue");
    positive(ewif_l_per_kwh, "ewif");

    TrainingWater w;
    w.w_on_l = total_energy_kwh * wue_on_l_per_kwh;
    w.w_off_l = total_energy_kwh * pue * ewif_l_per_kwh;
    w.w_total_l = w.w_on_l + w.w_off_l;
    return w;
}

double per_inference_water(double energy_kwh, double pue,
                           double ewif_l_per_kwh, double wue_on_l_per_kwh) {
    const auto nonnegative = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ArgumentError(std::string(name) + " must be >= 0, got " +
                                std::to_string(v));
        }
    };
    nonnegative(energy_kwh, "energy_kwh");
    nonnegative(pue, "pue");
    nonnegative(ewif_l_per_kwh, "ewif");
    nonnegative(wue_on_l_per_kwh, "wue_on");
    return energy_kwh * (pue * ewif_l_per_kwh + wue_on_l_per_kwh);
}

double queries_per_bottle(double bottle_l, double per_query_water_l) {
    if (!std::isfinite(per_query_water_l) || per_query_water_l <= 0.0) {
        throw ArgumentError("per-query water must be > 0, got " +
                            std::to_string(per_query_water_l));
    }
    if (!std::isfinite(bottle_l) || bottle_l < 0.0) {
        throw ArgumentError("bottle volume must be >= 0");
    }
    return bottle_l / per_query_water_l;
}

}  // namespace wcf
