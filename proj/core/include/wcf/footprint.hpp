#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "wcf/ingest.hpp"
#include "wcf/time.hpp"

namespace wcf {

// IT energy spread evenly over the duration; the final fractional hour is
// prorated.
struct UniformProfile {};

// Measured per-slot IT energy (kWh). Must have exactly slot_count()
// entries and sum to total_energy_kwh within 1e-9 relative.
struct ExplicitTrace {
    std::vector<double> energy_kwh;
};

using PowerProfile = std::variant<UniformProfile, ExplicitTrace>;

// Constant PUE, or one value per occupied slot.
using PueSeries = std::variant<double, std::vector<double>>;

struct JobSpec {
    double total_energy_kwh = 0.0;  // IT energy
    double duration_hours = 0.0;    // may be fractional, e.g. 1384.8
    PowerProfile profile = UniformProfile{};
    PueSeries pue = 1.0;

    // Throws ArgumentError on any invariant violation.
    void validate() const;

    // Occupied slots: ceil(duration_hours).
    std::size_t slot_count() const;

    // IT energy assigned to slot i (kWh).
    double energy_for_slot(std::size_t i) const;
    double pue_for_slot(std::size_t i) const;
};

struct SlotFootprint {
    TimePoint timestamp;
    double energy_kwh = 0.0;
    double w_on_l = 0.0;
    double w_off_l = 0.0;
    double carbon_kg = 0.0;
};

struct FootprintTotals {
    double w_on_l = 0.0;
    double w_off_l = 0.0;
    double w_total_l = 0.0;  // always w_on_l + w_off_l
    double carbon_kg = 0.0;
};

struct FootprintReport {
    std::vector<SlotFootprint> per_slot;
    FootprintTotals totals;
};

// Time-slotted accounting over [start, start + duration):
//   w_on  = sum_t e_t * wue_on_t
//   w_off = sum_t e_t * pue_t * wue_off_t
//   co2   = sum_t e_t * pue_t * carbon_t
// start must be hour-aligned and the whole window must lie inside the
// series; otherwise WindowError reports the shortfall.
FootprintReport footprint(const JobSpec& job, const EnvironmentSeries& env,
                          TimePoint start);

struct TrainingWater {
    double w_on_l = 0.0;
    double w_off_l = 0.0;
    double w_total_l = 0.0;
};

// Closed-form whole-run estimate under fixed intensities:
//   w_on = E * wue_on,  w_off = E * pue * ewif.
// All inputs must be positive.
TrainingWater fixed_wue_training_water(double total_energy_kwh,
                                       double wue_on_l_per_kwh, double pue,
                                       double ewif_l_per_kwh);

// Water for one inference: e * (pue * ewif + wue_on). Inputs >= 0.
double per_inference_water(double energy_kwh, double pue,
                           double ewif_l_per_kwh, double wue_on_l_per_kwh);

// How many queries a bottle of the given size covers.
double queries_per_bottle(double bottle_l, double per_query_water_l);

}  // namespace wcf
